//! Searches over curves through `n + 3` points of a configuration.
//!
//! Every curve meeting Γ in at least `n + 3` points is the curve through
//! any `n + 3` of those points, so enumerating `(n + 3)`-subsets finds all
//! of them. Two facts keep the enumeration small while staying exact:
//!
//! * once a curve with more than `n + 3` points is known, subsets inside
//!   its incidence set give the same curve and are skipped;
//! * a curve with at least `L` points has `n + 3` of them among the first
//!   `d - L + n + 3` indices, so searches for large incidences only need
//!   subsets of a prefix.

use num_bigint::BigInt;

use super::modular::ModCurve;
use super::{rnc_through, RationalNormalCurve};
use crate::arith::{for_each_combination, mask_indices, mask_of, next_combination, Mask};
use crate::exactlin::{self, PrimeField, PREFILTER_PRIME};
use crate::projective::ProjPoint;
use crate::scheme::{self, Configuration};
use crate::secant::IndependenceTester;
use crate::{Error, Result};

/// Default cap on curves constructed by one search.
pub const DEFAULT_RHO_BUDGET: u64 = 500_000;

/// The maximal number of points of Γ on one rational normal curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoReport {
    pub rho: usize,
    pub curve: RationalNormalCurve,
    /// Indices of the points of Γ on `curve`, increasing.
    pub incidence: Vec<usize>,
    /// Number of curves actually constructed.
    pub curves_examined: u64,
}

/// Distinct curves found by a scan, as incidence index lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveScan {
    /// Sorted by size descending, then lexicographically.
    pub incidences: Vec<Vec<usize>>,
    pub curves_examined: u64,
}

struct Searcher<'a> {
    g: &'a Configuration,
    n: usize,
    rows: Vec<Vec<BigInt>>,
    modular: Option<(PrimeField, Vec<Vec<u64>>)>,
    budget: u64,
    examined: u64,
    /// Incidence masks of curves with more than `n + 3` points.
    rich: Vec<Mask>,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Configuration, budget: u64) -> Result<Self> {
        let n = g.ambient_dim();
        let d = g.degree();
        if d > 128 {
            return Err(Error::TooLarge(format!("curve searches support at most 128 points, got {d}")));
        }
        if d < n + 3 {
            return Err(Error::Precondition(format!("need at least {} points, got {d}", n + 3)));
        }
        let rows = g.integer_rows();
        let modular = exactlin::modp_prefilter_enabled().then(|| {
            let f = PrimeField::new(PREFILTER_PRIME);
            let red = rows
                .iter()
                .map(|r| r.iter().map(|x| f.from_bigint(x)).collect())
                .collect();
            (f, red)
        });
        Ok(Searcher {
            g,
            n,
            rows,
            modular,
            budget,
            examined: 0,
            rich: Vec::new(),
        })
    }

    fn covered(&self, mask: Mask) -> bool {
        self.rich.iter().any(|&m| mask & !m == 0)
    }

    fn points(&self, idx: &[usize]) -> Vec<ProjPoint> {
        idx.iter().map(|&i| self.g.points()[i].clone()).collect()
    }

    fn subset_is_lgp(&self, idx: &[usize]) -> bool {
        let sub: Vec<Vec<BigInt>> = idx.iter().map(|&i| self.rows[i].clone()).collect();
        let tester = IndependenceTester::new(&sub);
        for_each_combination(idx.len(), self.n + 1, |c| tester.independent(c))
    }

    fn exact_incidence(&self, curve: &RationalNormalCurve, base: Mask, candidates: impl Iterator<Item = usize>) -> Mask {
        candidates.fold(base, |m, j| {
            if curve.contains(&self.g.points()[j]) {
                m | (1u128 << j)
            } else {
                m
            }
        })
    }

    /// Incidence mask of the curve through the subset, `None` if the subset
    /// is not in linearly general position.
    fn examine(&mut self, idx: &[usize]) -> Result<Option<Mask>> {
        self.examined += 1;
        if self.examined > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let base = mask_of(idx);
        let d = self.g.degree();
        if let Some((f, red)) = &self.modular {
            let refs: Vec<&[u64]> = idx.iter().map(|&i| red[i].as_slice()).collect();
            if let Some(mc) = ModCurve::build(f, &refs) {
                let mut scratch = vec![0u64; self.n + 1];
                let hits: Vec<usize> = (0..d)
                    .filter(|&j| base >> j & 1 == 0 && mc.may_contain(f, &red[j], &mut scratch))
                    .collect();
                if hits.is_empty() {
                    return Ok(Some(base));
                }
                let curve = rnc_through(&self.points(idx))?;
                return Ok(Some(self.exact_incidence(&curve, base, hits.into_iter())));
            }
            if !self.subset_is_lgp(idx) {
                return Ok(None);
            }
        }
        match rnc_through(&self.points(idx)) {
            Ok(curve) => Ok(Some(self.exact_incidence(&curve, base, (0..d).filter(|&j| base >> j & 1 == 0)))),
            Err(Error::NotInLinearGeneralPosition(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn record(&mut self, mask: Mask) {
        if mask.count_ones() as usize > self.n + 3 {
            self.rich.push(mask);
        }
    }

    /// Distinct curves through subsets of the first `prefix` points with at
    /// least `min_incidence` points of Γ.
    fn scan(&mut self, prefix: usize, min_incidence: usize) -> Result<Vec<Mask>> {
        let k = self.n + 3;
        let mut found = Vec::new();
        if prefix < k {
            return Ok(found);
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let m = mask_of(&idx);
            if !self.covered(m) {
                if let Some(inc) = self.examine(&idx)? {
                    self.record(inc);
                    if inc.count_ones() as usize >= min_incidence {
                        found.push(inc);
                    }
                }
            }
            if !next_combination(&mut idx, prefix) {
                break;
            }
        }
        Ok(found)
    }

    fn report(&self, mask: Mask) -> Result<RhoReport> {
        let incidence = mask_indices(mask);
        let curve = rnc_through(&self.points(&incidence[..self.n + 3]))?;
        Ok(RhoReport {
            rho: incidence.len(),
            curve,
            incidence,
            curves_examined: self.examined,
        })
    }
}

fn sorted_incidences(masks: Vec<Mask>) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = masks.into_iter().map(mask_indices).collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out.dedup();
    out
}

/// `ρ(Γ)` with a witness curve.
///
/// Subsets are visited in colexicographic order (by largest index). With
/// the best incidence `K` found so far, a better curve has `n + 3` points
/// below index `d - K + n + 2`, which bounds the scan; among maximal curves
/// the first one found is reported.
pub fn rho(g: &Configuration, budget: u64) -> Result<RhoReport> {
    let mut s = Searcher::new(g, budget)?;
    let d = g.degree();
    let k = s.n + 3;
    let mut best: Option<Mask> = None;
    let mut top = k - 1;
    loop {
        let best_count = best.map_or(0, |m| m.count_ones() as usize);
        if top >= d || top + best_count >= d + s.n + 2 {
            break;
        }
        let mut sub: Vec<usize> = (0..k - 1).collect();
        loop {
            sub.push(top);
            let m = mask_of(&sub);
            if !s.covered(m) {
                if let Some(inc) = s.examine(&sub)? {
                    s.record(inc);
                    if best.map_or(true, |b| inc.count_ones() > b.count_ones()) {
                        best = Some(inc);
                    }
                }
            }
            sub.pop();
            if !next_combination(&mut sub, top) {
                break;
            }
        }
        top += 1;
    }
    let best = best.ok_or_else(|| {
        Error::NotInLinearGeneralPosition(format!("no {k} points of the configuration are in general position"))
    })?;
    s.report(best)
}

/// `ρ(Γ)` by scanning every `(n + 3)`-subset (covered subsets excepted).
pub fn rho_exhaustive(g: &Configuration, budget: u64) -> Result<RhoReport> {
    let mut s = Searcher::new(g, budget)?;
    let found = s.scan(g.degree(), 0)?;
    let best = sorted_incidences(found)
        .into_iter()
        .next()
        .ok_or_else(|| Error::NotInLinearGeneralPosition("no subset in general position".into()))?;
    s.report(mask_of(&best))
}

/// All distinct curves with at least `min_incidence` points of Γ
/// (`min_incidence` is raised to `n + 3`).
pub fn curves_with_min_incidence(g: &Configuration, min_incidence: usize, budget: u64) -> Result<CurveScan> {
    let mut s = Searcher::new(g, budget)?;
    let d = g.degree();
    let l = min_incidence.max(s.n + 3);
    if l > d {
        return Ok(CurveScan {
            incidences: Vec::new(),
            curves_examined: 0,
        });
    }
    let prefix = d - l + s.n + 3;
    let found = s.scan(prefix, l)?;
    Ok(CurveScan {
        incidences: sorted_incidences(found),
        curves_examined: s.examined,
    })
}

/// Curves `C` found by the enumeration with `reg(Γ ∩ C) = reg(Γ)`.
///
/// A section of `s` points spanning `P^n` has regularity at most
/// `s - n + 1`, so only curves with at least `reg(Γ) + n - 1` points are
/// candidates; their sections are then checked exactly.
pub fn find_reg_preserving_rnc(
    g: &Configuration,
    budget: u64,
) -> Result<Vec<(RationalNormalCurve, Vec<usize>)>> {
    let n = g.ambient_dim();
    let reg = scheme::regularity(g);
    let scan = curves_with_min_incidence(g, reg + n - 1, budget)?;
    let mut out = Vec::new();
    for inc in scan.incidences {
        if scheme::regularity(&g.subset(&inc)) == reg {
            let pts: Vec<ProjPoint> = inc[..n + 3].iter().map(|&i| g.points()[i].clone()).collect();
            out.push((rnc_through(&pts)?, inc));
        }
    }
    Ok(out)
}

/// A rational normal curve containing every point, if one exists. Points on
/// such a curve are in linearly general position, so the curve through the
/// first `n + 3` points is the only candidate.
pub fn lies_on_rnc(g: &Configuration) -> Option<RationalNormalCurve> {
    let n = g.ambient_dim();
    if g.degree() < n + 3 {
        return None;
    }
    let curve = rnc_through(&g.points()[..n + 3]).ok()?;
    g.points()[n + 3..].iter().all(|p| curve.contains(p)).then_some(curve)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conic(ts: &[i64]) -> Vec<Vec<i64>> {
        ts.iter().map(|&t| vec![1, t, t * t]).collect()
    }

    #[test]
    fn all_on_conic() {
        let g = Configuration::from_int_points(2, &conic(&[0, 1, 2, 3, 4, 5, 6])).unwrap();
        let r = rho(&g, DEFAULT_RHO_BUDGET).unwrap();
        assert_eq!(r.rho, 7);
        assert_eq!(r.curves_examined, 1);
        assert!(lies_on_rnc(&g).is_some());
    }

    #[test]
    fn conic_plus_point() {
        let mut pts = conic(&[0, 1, 2, 3, 4]);
        pts.push(vec![1, 1, 0]);
        let g = Configuration::from_int_points(2, &pts).unwrap();
        let r = rho(&g, DEFAULT_RHO_BUDGET).unwrap();
        assert_eq!(r.rho, 5);
        assert_eq!(r.incidence, vec![0, 1, 2, 3, 4]);
        let e = rho_exhaustive(&g, DEFAULT_RHO_BUDGET).unwrap();
        assert_eq!(e.rho, 5);
        // oracle: every 5-subset gives its own conic unless it is the first one
        let scan = curves_with_min_incidence(&g, 5, DEFAULT_RHO_BUDGET).unwrap();
        assert_eq!(scan.incidences.len(), 6);
        assert!(lies_on_rnc(&g).is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let pts: Vec<Vec<i64>> = (0..12).map(|i| vec![1, i, i * i * i + 7 * i]).collect();
        let g = Configuration::from_int_points(2, &pts).unwrap();
        assert!(matches!(rho_exhaustive(&g, 10), Err(Error::BudgetExceeded { budget: 10 })));
    }

    #[test]
    fn preserving_conic_for_max_regularity() {
        let mut pts = conic(&(-10..10).collect::<Vec<_>>());
        pts.push(vec![1, 1, 0]);
        let g = Configuration::from_int_points(2, &pts).unwrap();
        let found = find_reg_preserving_rnc(&g, DEFAULT_RHO_BUDGET).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].1, (0..20).collect::<Vec<_>>());
    }

    #[test]
    fn non_lgp_subsets_are_skipped() {
        let mut pts = conic(&[0, 1, 2, 3, 4, 5]);
        pts.push(vec![1, 10, 0]);
        pts.push(vec![1, 20, 0]);
        pts.push(vec![1, 30, 0]);
        let g = Configuration::from_int_points(2, &pts).unwrap();
        assert_eq!(rho(&g, DEFAULT_RHO_BUDGET).unwrap().rho, 6);
        assert_eq!(rho_exhaustive(&g, DEFAULT_RHO_BUDGET).unwrap().rho, 6);
    }
}
