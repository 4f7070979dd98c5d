//! Shrinking a configuration onto a rational normal curve by intersecting
//! with quadrics, keeping the regularity fixed at every step.

use super::search::lies_on_rnc;
use super::RationalNormalCurve;
use crate::arith::next_combination;
use crate::scheme::{self, Configuration, Hypersurface};
use crate::secant;
use crate::{Error, Result};

/// One intersection step `X_{i+1} = X_i ∩ Q_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizeStep {
    /// Indices in Γ of the `2n + 1` points the quadric was fitted through.
    pub fitted: Vec<usize>,
    pub quadric: Hypersurface,
    /// Indices in Γ of `X_{i+1}`.
    pub kept: Vec<usize>,
    pub reg: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalizeOutcome {
    /// The last set lies on this curve.
    OnCurve { curve: RationalNormalCurve, indices: Vec<usize> },
    Failed { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizeReport {
    pub reg: usize,
    pub steps: Vec<LocalizeStep>,
    pub outcome: LocalizeOutcome,
}

impl LocalizeReport {
    pub fn succeeded(&self) -> bool {
        matches!(self.outcome, LocalizeOutcome::OnCurve { .. })
    }

    /// Number of sets in the chain `X_0, X_1, ...`.
    pub fn chain_len(&self) -> usize {
        self.steps.len() + 1
    }
}

/// Runs the quadric residuation chain.
///
/// While the current set `X` is not on a rational normal curve, the
/// `(2n + 1)`-subsets of `X` are tried in lexicographic order; for each, the
/// first quadric through it that misses a point of `X` is taken, and the
/// first one whose section keeps the regularity of Γ becomes the next step.
/// When no subset qualifies the run stops with a failure. `subset_budget`
/// bounds the number of subsets tried per step.
pub fn rnc_localize(g: &Configuration, subset_budget: u64) -> Result<LocalizeReport> {
    let n = g.ambient_dim();
    if g.degree() < 2 * n + 1 {
        return Err(Error::Precondition(format!("need at least {} points", 2 * n + 1)));
    }
    if !secant::is_lgp(g) {
        return Err(Error::NotInLinearGeneralPosition("localization input".into()));
    }
    let reg = scheme::regularity(g);
    let mut current: Vec<usize> = (0..g.degree()).collect();
    let mut steps = Vec::new();
    loop {
        let x = g.subset(&current);
        if let Some(curve) = lies_on_rnc(&x) {
            return Ok(LocalizeReport {
                reg,
                steps,
                outcome: LocalizeOutcome::OnCurve { curve, indices: current },
            });
        }
        if current.len() < 2 * n + 1 {
            return Ok(LocalizeReport {
                reg,
                steps,
                outcome: LocalizeOutcome::Failed {
                    reason: format!("only {} points left", current.len()),
                },
            });
        }
        let mut idx: Vec<usize> = (0..2 * n + 1).collect();
        let mut tried = 0u64;
        let mut next = None;
        loop {
            tried += 1;
            if tried > subset_budget {
                return Err(Error::BudgetExceeded { budget: subset_budget });
            }
            let a = x.subset(&idx);
            if let Some(q) = scheme::hypersurface_through(&a, 2, Some(&x))? {
                let kept: Vec<usize> = (0..current.len())
                    .filter(|&i| q.contains(&x.points()[i]))
                    .collect();
                let section = x.subset(&kept);
                let section_reg = scheme::regularity(&section);
                if section_reg == reg {
                    next = Some(LocalizeStep {
                        fitted: idx.iter().map(|&i| current[i]).collect(),
                        quadric: q,
                        kept: kept.iter().map(|&i| current[i]).collect(),
                        reg: section_reg,
                    });
                    break;
                }
            }
            if !next_combination(&mut idx, current.len()) {
                break;
            }
        }
        match next {
            Some(step) => {
                current = step.kept.clone();
                steps.push(step);
            }
            None => {
                return Ok(LocalizeReport {
                    reg,
                    steps,
                    outcome: LocalizeOutcome::Failed {
                        reason: "no quadric section keeps the regularity".into(),
                    },
                })
            }
        }
    }
}
