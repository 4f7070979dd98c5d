//! Hilbert functions, m-normality and regularity of reduced point sets.
//!
//! `h(m)` is the rank of the evaluation matrix of degree-`m` monomials on the
//! points. The default route computes the same rank as the rank of the
//! power-Gram matrix `[(p_i . p_j)^m]`, which is `d x d` instead of
//! `d x C(n+m, m)` and is certified multimodularly (see
//! [`certified_gram_rank`](crate::exactlin::certified_gram_rank)). With the
//! prime-field shortcuts disabled, the evaluation matrix is eliminated
//! directly over the integers.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{monomial_values, monomials, Configuration};
use crate::arith::binomial;
use crate::exactlin::{self, certified_gram_rank};

/// Hilbert function values up to stabilization, with the regularity and
/// the deficiencies `d - h(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertProfile {
    pub degree: usize,
    /// `h(0), h(1), ...` up to and including the first value equal to `degree`.
    pub values: Vec<usize>,
    /// One more than the first `m` with `h(m) = degree`.
    pub reg: usize,
    pub h1: Vec<usize>,
}

/// Rows of the degree-`m` evaluation matrix, one per point.
pub fn evaluation_rows(g: &Configuration, m: u32) -> Vec<Vec<BigInt>> {
    let monos = monomials(g.ambient_dim(), m);
    g.points()
        .iter()
        .map(|p| monomial_values(p.coords(), &monos))
        .collect()
}

fn monomial_count(n: usize, m: u32) -> usize {
    binomial((n + m as usize) as u64, m as u64).min(usize::MAX as u64) as usize
}

/// `h(m)` by fraction-free elimination of the evaluation matrix.
pub fn hilbert_function_exact(g: &Configuration, m: u32) -> usize {
    let cols = monomial_count(g.ambient_dim(), m);
    exactlin::integer_rank(evaluation_rows(g, m), cols)
}

/// Value of the Hilbert function in degree `m`.
pub fn hilbert_function(g: &Configuration, m: u32) -> usize {
    let d = g.degree();
    if d == 0 {
        return 0;
    }
    if !exactlin::modp_prefilter_enabled() {
        return hilbert_function_exact(g, m);
    }
    let upper = d.min(monomial_count(g.ambient_dim(), m));
    certified_gram_rank(&g.integer_rows(), m, upper)
}

/// `d - h(m)`, the failure of `m`-normality.
pub fn h1(g: &Configuration, m: u32) -> usize {
    g.degree() - hilbert_function(g, m)
}

pub fn is_m_normal(g: &Configuration, m: u32) -> bool {
    hilbert_function(g, m) == g.degree()
}

/// The full profile. Values are computed in increasing degree until the
/// function reaches `d`; the empty configuration has regularity 0.
pub fn profile(g: &Configuration) -> HilbertProfile {
    let d = g.degree();
    let mut values = Vec::new();
    if d > 0 {
        let mut m = 0;
        loop {
            let h = hilbert_function(g, m);
            values.push(h);
            if h == d {
                break;
            }
            m += 1;
        }
    }
    let reg = values.len();
    let h1 = values.iter().map(|&h| d - h).collect();
    HilbertProfile {
        degree: d,
        values,
        reg,
        h1,
    }
}

/// Regularity `1 + min{m : h(m) = d}`, found by bisection on the monotone
/// normality predicate. Degrees with fewer monomials than points are skipped.
pub fn regularity(g: &Configuration) -> usize {
    let d = g.degree();
    if d == 0 {
        return 0;
    }
    let n = g.ambient_dim();
    let mut lo = 0u32;
    while monomial_count(n, lo) < d {
        lo += 1;
    }
    // h(d - 1) = d for any d distinct points.
    let mut hi = (d - 1) as u32;
    if lo >= hi {
        return hi as usize + 1;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if is_m_normal(g, mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo as usize + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conic(ts: impl IntoIterator<Item = i64>) -> Configuration {
        let pts: Vec<Vec<i64>> = ts.into_iter().map(|t| vec![1, t, t * t]).collect();
        Configuration::from_int_points(2, &pts).unwrap()
    }

    fn line_cluster() -> Configuration {
        let mut pts: Vec<Vec<i64>> = (0..7).map(|t| vec![1, t, 0, 0]).collect();
        pts.push(vec![0, 0, 1, 0]);
        pts.push(vec![0, 0, 0, 1]);
        pts.push(vec![1, 1, 1, 1]);
        Configuration::from_int_points(3, &pts).unwrap()
    }

    #[test]
    fn coordinate_points() {
        for n in 1..5 {
            let pts: Vec<Vec<i64>> = (0..=n)
                .map(|i| (0..=n).map(|j| i64::from(i == j)).collect())
                .collect();
            let g = Configuration::from_int_points(n, &pts).unwrap();
            assert_eq!(hilbert_function(&g, 1), n + 1);
            assert_eq!(regularity(&g), 2);
        }
    }

    #[test]
    fn five_conic_points() {
        let g = conic(0..5);
        assert_eq!(hilbert_function(&g, 0), 1);
        assert_eq!(hilbert_function(&g, 1), 3);
        assert_eq!(hilbert_function(&g, 2), 5);
        assert_eq!(regularity(&g), 3);
        assert!(!is_m_normal(&g, 1));
        let p = profile(&g);
        assert_eq!(p.values, vec![1, 3, 5]);
        assert_eq!(p.h1, vec![4, 2, 0]);
        assert_eq!(p.reg, 3);
    }

    #[test]
    fn line_cluster_regularity() {
        let g = line_cluster();
        let p = profile(&g);
        assert_eq!(p.reg, 7);
        assert_eq!(regularity(&g), 7);
        // 7 collinear points impose min(m+1, 7) conditions, the other three
        // add 3 once m >= 1.
        assert_eq!(p.values, vec![1, 4, 6, 7, 8, 9, 10]);
    }

    #[test]
    fn thirty_conic_points_deficiency() {
        let g = conic(-15..15);
        assert_eq!(g.degree(), 30);
        assert_eq!(h1(&g, 14), 1);
        assert_eq!(regularity(&g), 16);
    }

    #[test]
    fn single_point_and_empty() {
        let g = Configuration::from_int_points(3, &[vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(regularity(&g), 1);
        assert!(is_m_normal(&g, 0));
        assert_eq!(profile(&Configuration::empty(2)).reg, 0);
        assert_eq!(regularity(&Configuration::empty(2)), 0);
    }

    #[test]
    fn gram_and_evaluation_routes_agree() {
        let g = line_cluster();
        for m in 0..8 {
            assert_eq!(hilbert_function(&g, m), hilbert_function_exact(&g, m), "m = {m}");
        }
        let g = conic([-7, -2, 0, 3, 5, 11, 13]);
        for m in 0..6 {
            assert_eq!(hilbert_function(&g, m), hilbert_function_exact(&g, m), "m = {m}");
        }
    }
}
