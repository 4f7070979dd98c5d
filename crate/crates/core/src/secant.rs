//! Secant-plane invariants: the smallest secant dimension `t`, linearly
//! general and uniform position, and regularity-preserving linear sections.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::arith::{binomial, for_each_combination};
use crate::exactlin::{self, modp, PrimeField, PREFILTER_PRIME};
use crate::projective::{LinearSubspace, ProjPoint};
use crate::scheme::{self, Configuration};
use crate::{Error, Result};

/// Default limit on `C(d, d/2)` for the uniform-position check.
pub const UNIFORM_POSITION_CAP: u64 = 2_000_000;

/// Decides linear independence of point subsets. A prime-field rank equal to
/// the subset size proves independence; anything else is settled exactly.
pub struct IndependenceTester<'a> {
    rows: &'a [Vec<BigInt>],
    modular: Option<(PrimeField, Vec<Vec<u64>>)>,
    cols: usize,
}

impl<'a> IndependenceTester<'a> {
    pub fn new(rows: &'a [Vec<BigInt>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let modular = exactlin::modp_prefilter_enabled().then(|| {
            let f = PrimeField::new(PREFILTER_PRIME);
            let reduced = rows
                .iter()
                .map(|r| r.iter().map(|x| f.from_bigint(x)).collect())
                .collect();
            (f, reduced)
        });
        IndependenceTester { rows, modular, cols }
    }

    pub fn rank(&self, idx: &[usize]) -> usize {
        if let Some((f, reduced)) = &self.modular {
            let mut flat = Vec::with_capacity(idx.len() * self.cols);
            for &i in idx {
                flat.extend_from_slice(&reduced[i]);
            }
            let r = modp::rank_in_place(f, &mut flat, idx.len(), self.cols);
            if r == idx.len().min(self.cols) {
                return r;
            }
        }
        let sub: Vec<Vec<BigInt>> = idx.iter().map(|&i| self.rows[i].clone()).collect();
        exactlin::integer_rank(sub, self.cols)
    }

    pub fn independent(&self, idx: &[usize]) -> bool {
        self.rank(idx) == idx.len()
    }
}

/// Smallest secant dimension with an optional witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecantReport {
    pub t: usize,
    /// `t + 2` point indices spanning only a `t`-plane; absent when no
    /// dependent subset exists below the ambient bound.
    pub witness: Option<Vec<usize>>,
}

/// `t(Γ)`: the least `t` such that some `t + 2` points span only a `t`-plane.
///
/// Subset sizes are scanned upward from 3; when the scan for size `s` runs,
/// every smaller subset is already known to be independent, so the first
/// dependent `s`-subset spans exactly an `(s - 2)`-plane.
pub fn t_invariant(g: &Configuration) -> Result<SecantReport> {
    let dim = g.span_dim().unwrap_or(0);
    if dim == 0 {
        return Err(Error::Degenerate("the points span at most a point".into()));
    }
    let n = g.ambient_dim();
    let rows = g.integer_rows();
    let tester = IndependenceTester::new(&rows);
    let d = g.degree();
    for size in 3..=(dim + 2).min(d) {
        let mut found = None;
        for_each_combination(d, size, |idx| {
            if tester.independent(idx) {
                true
            } else {
                found = Some(idx.to_vec());
                false
            }
        });
        if let Some(w) = found {
            let t = size - 2;
            if t == n {
                return Ok(SecantReport { t, witness: None });
            }
            return Ok(SecantReport { t, witness: Some(w) });
        }
    }
    Ok(SecantReport { t: dim, witness: None })
}

/// Every subset of at most `n + 1` points is linearly independent.
pub fn is_lgp(g: &Configuration) -> bool {
    let rows = g.integer_rows();
    lgp_rows(&rows, g.ambient_dim())
}

fn lgp_rows(rows: &[Vec<BigInt>], n: usize) -> bool {
    let d = rows.len();
    let tester = IndependenceTester::new(rows);
    if d <= n + 1 {
        let all: Vec<usize> = (0..d).collect();
        return tester.independent(&all);
    }
    for_each_combination(d, n + 1, |idx| tester.independent(idx))
}

/// Checks `h_Y(l) = min(|Y|, h_Γ(l))` for every subset `Y` and `l < reg(Γ)`.
/// Returns `None` when `C(d, d/2)` exceeds `cap`.
///
/// Since `h_Y(l) <= min(|Y|, h_Γ(l))` always, it suffices to check that all
/// subsets of size exactly `h_Γ(l)` impose independent conditions in degree
/// `l`: smaller subsets are contained in such a set and larger ones contain
/// one.
pub fn is_uniform_position(g: &Configuration, cap: u64) -> Option<bool> {
    let d = g.degree();
    if binomial(d as u64, d as u64 / 2) > cap {
        return None;
    }
    if d == 0 {
        return Some(true);
    }
    let prof = scheme::profile(g);
    for (l, &k) in prof.values.iter().enumerate() {
        if k == d {
            continue;
        }
        let rows = scheme::evaluation_rows(g, l as u32);
        let tester = IndependenceTester::new(&rows);
        if !for_each_combination(d, k, |idx| tester.independent(idx)) {
            return Some(false);
        }
    }
    Some(true)
}

/// A linear section of Γ whose regularity equals that of Γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceWitness {
    pub subspace: LinearSubspace,
    pub section: Configuration,
    /// Indices in Γ of the section points, increasing.
    pub section_indices: Vec<usize>,
    pub section_reg: usize,
    pub lgp_in_subspace: bool,
    pub nondegenerate_in_subspace: bool,
}

/// Coordinates of the section points inside the subspace, as a
/// configuration of `P^t`.
pub fn section_in_subspace(subspace: &LinearSubspace, section: &Configuration) -> Result<Configuration> {
    let pts = section
        .points()
        .iter()
        .map(|p| {
            subspace
                .coordinates_of(p)
                .ok_or_else(|| Error::Precondition(format!("{p} is not on the subspace")))
        })
        .collect::<Result<Vec<ProjPoint>>>()?;
    Configuration::new(subspace.dim().max(1), pts)
}

/// All `t`-planes spanned by points of Γ whose section has the regularity
/// of Γ, sorted by section size (descending) and then by index list.
///
/// Planes are deduplicated by their section. A section of `s` points
/// spanning a `t`-plane has regularity at most `s - t + 1`, which prunes
/// small sections before any Hilbert function is computed.
pub fn find_reg_preserving_subspaces(g: &Configuration, t: usize) -> Result<Vec<SubspaceWitness>> {
    let n = g.ambient_dim();
    if t == 0 || t >= n {
        return Err(Error::OutOfRange(format!("subspace dimension {t} (need 1..={})", n - 1)));
    }
    let d = g.degree();
    let reg = scheme::regularity(g);
    let rows = g.integer_rows();
    let tester = IndependenceTester::new(&rows);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    let mut failure = None;
    for_each_combination(d, t + 1, |idx| {
        if !tester.independent(idx) {
            return true;
        }
        let basis: Vec<ProjPoint> = idx.iter().map(|&i| g.points()[i].clone()).collect();
        let plane = match LinearSubspace::span(&basis) {
            Ok(p) => p,
            Err(e) => {
                failure = Some(e);
                return false;
            }
        };
        let eqs = plane.equations();
        let section_idx: Vec<usize> = (0..d)
            .filter(|&i| plane.equations_contain(&eqs, &g.points()[i]))
            .collect();
        if !seen.insert(section_idx.clone()) {
            return true;
        }
        if section_idx.len() + 1 < reg + t {
            return true;
        }
        let section = g.subset(&section_idx);
        let section_reg = scheme::regularity(&section);
        if section_reg != reg {
            return true;
        }
        let local = match section_in_subspace(&plane, &section) {
            Ok(c) => c,
            Err(e) => {
                failure = Some(e);
                return false;
            }
        };
        out.push(SubspaceWitness {
            nondegenerate_in_subspace: local.is_nondegenerate(),
            lgp_in_subspace: is_lgp(&local),
            subspace: plane,
            section,
            section_indices: section_idx,
            section_reg,
        });
        true
    });
    if let Some(e) = failure {
        return Err(e);
    }
    out.sort_by(|a, b| {
        b.section_indices
            .len()
            .cmp(&a.section_indices.len())
            .then_with(|| a.section_indices.cmp(&b.section_indices))
    });
    Ok(out)
}
