//! Threshold arithmetic for the regularity theorems, in exact integers.
//!
//! All fractional thresholds are cleared to a common denominator before the
//! ceiling is taken, so nothing here depends on floating point.

use crate::arith::{ceil_div, floor_div};

fn i(x: usize) -> i64 {
    i64::try_from(x).expect("size fits in i64")
}

/// Upper bound `ceil((d - n - 1) / t) + 2` on the regularity of a
/// nondegenerate configuration of `d` points spanning `P^n`.
pub fn regularity_upper_bound(d: usize, n: usize, t: usize) -> i64 {
    ceil_div(i(d) - i(n) - 1, i(t)) + 2
}

/// Lower end `ceil((d - n - 1) / (t + 1)) + 3` of the window in which the
/// regularity-preserving `t`-plane is unique.
pub fn window_lower(d: usize, n: usize, t: usize) -> i64 {
    ceil_div(i(d) - i(n) - 1, i(t) + 1) + 3
}

/// Whether `reg` lies in the closed window `[window_lower, upper_bound]`.
pub fn in_window(reg: usize, d: usize, n: usize, t: usize) -> bool {
    let r = i(reg);
    window_lower(d, n, t) <= r && r <= regularity_upper_bound(d, n, t)
}

/// Regularity of `d` points in linearly general position on a rational
/// normal curve of `P^n`: `ceil((d - 1) / n) + 1`. This is also the largest
/// regularity any configuration in linearly general position can have.
pub fn on_curve_regularity(d: usize, n: usize) -> i64 {
    ceil_div(i(d) - 1, i(n)) + 1
}

/// Smallest degree `4n^2 + 6n + 1` for which the curve theorems apply.
pub fn curve_degree_threshold(n: usize) -> usize {
    4 * n * n + 6 * n + 1
}

/// `ceil((d - 1) / (n + n / (2n + 2))) + 3`, the least regularity for which
/// a unique regularity-preserving curve is guaranteed.
pub fn curve_regularity_threshold(d: usize, n: usize) -> i64 {
    let n = i(n);
    ceil_div((i(d) - 1) * (2 * n + 2), n * (2 * n + 3)) + 3
}

/// The drop `m = ceil((d - 1) / n) + 1 - reg` below the maximal regularity.
pub fn regularity_drop(d: usize, n: usize, reg: usize) -> i64 {
    on_curve_regularity(d, n) - i(reg)
}

/// `d - (m + 1) n`; the maximal curve incidence strictly exceeds this.
pub fn incidence_floor(d: usize, n: usize, reg: usize) -> i64 {
    i(d) - (regularity_drop(d, n, reg) + 1) * i(n)
}

/// Writes `d = n q + r + 2` with `0 <= r < n`. Needs `d >= 2`.
pub fn decompose(d: usize, n: usize) -> (usize, usize) {
    assert!(d >= 2 && n >= 1);
    ((d - 2) / n, (d - 2) % n)
}

/// Degree needed for `extra` off-curve points to leave the regularity of an
/// on-curve configuration unchanged: `4n^2 + 6n + 1 + 2(n + 1) extra`.
pub fn outlier_degree_threshold(n: usize, extra: usize) -> usize {
    curve_degree_threshold(n) + 2 * (n + 1) * extra
}

/// Largest number of extra points tolerated by [`outlier_degree_threshold`]
/// for `d` curve points, or `None` when even zero is out of range.
pub fn max_outliers(d: usize, n: usize) -> Option<usize> {
    let slack = i(d) - i(curve_degree_threshold(n));
    (slack >= 0).then(|| floor_div(slack, 2 * i(n) + 2) as usize)
}

/// Whether `on_curve` points of a `d`-point set on one curve are enough to
/// force equal regularity: `(2n+2)/(2n+3) (d-1) + 2n + 1 <= on_curve`.
pub fn curve_share_sufficient(d: usize, n: usize, on_curve: usize) -> bool {
    let n = i(n);
    (2 * n + 2) * (i(d) - 1) + (2 * n + 1) * (2 * n + 3) <= i(on_curve) * (2 * n + 3)
}

/// `ceil((d - 1) / (t + t / (2t + 2))) + 2`; the composed subspace-then-curve
/// statement needs the regularity strictly above this.
pub fn composed_lower(d: usize, t: usize) -> i64 {
    let t = i(t);
    ceil_div((i(d) - 1) * (2 * t + 2), t * (2 * t + 3)) + 2
}
