//! Curve construction and membership modulo a prime.
//!
//! The construction is a rational function of the input coordinates, so as
//! long as no denominator vanishes modulo `p` it commutes with reduction. A
//! point whose minors do not vanish modulo `p` is therefore certainly off
//! the exact curve; points that pass are confirmed exactly by the caller.

use crate::exactlin::PrimeField;

/// Inverse of a square matrix in Montgomery form, `None` if singular mod p.
fn invert(f: &PrimeField, m: &[u64], n: usize) -> Option<Vec<u64>> {
    let w = 2 * n;
    let mut a = vec![0u64; n * w];
    for r in 0..n {
        a[r * w..r * w + n].copy_from_slice(&m[r * n..r * n + n]);
        a[r * w + n + r] = f.one();
    }
    for c in 0..n {
        let p = (c..n).find(|&r| a[r * w + c] != 0)?;
        if p != c {
            for j in 0..w {
                a.swap(p * w + j, c * w + j);
            }
        }
        let inv = f.inv(a[c * w + c])?;
        for j in 0..w {
            a[c * w + j] = f.mul(a[c * w + j], inv);
        }
        for r in 0..n {
            if r == c || a[r * w + c] == 0 {
                continue;
            }
            let k = a[r * w + c];
            for j in 0..w {
                a[r * w + j] = f.sub(a[r * w + j], f.mul(k, a[c * w + j]));
            }
        }
    }
    Some((0..n).flat_map(|r| a[r * w + n..r * w + w].to_vec()).collect())
}

fn mat_vec(f: &PrimeField, m: &[u64], x: &[u64], out: &mut [u64]) {
    let n = x.len();
    for (r, o) in out.iter_mut().enumerate() {
        *o = m[r * n..r * n + n]
            .iter()
            .zip(x)
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
    }
}

pub(crate) struct ModCurve {
    n1: usize,
    map: Vec<u64>,
    params: Vec<u64>,
}

impl ModCurve {
    /// Curve through `n + 3` reduced points, `None` on any degeneracy mod p.
    pub fn build(f: &PrimeField, pts: &[&[u64]]) -> Option<Self> {
        let n1 = pts[0].len();
        debug_assert_eq!(pts.len(), n1 + 2);
        let mut p = vec![0u64; n1 * n1];
        for (c, col) in pts[..n1].iter().enumerate() {
            for r in 0..n1 {
                p[r * n1 + c] = col[r];
            }
        }
        let mut map = invert(f, &p, n1)?;
        let mut lambda = vec![0u64; n1];
        mat_vec(f, &map, pts[n1], &mut lambda);
        for r in 0..n1 {
            let s = f.inv(lambda[r])?;
            for c in 0..n1 {
                map[r * n1 + c] = f.mul(map[r * n1 + c], s);
            }
        }
        let mut q = vec![0u64; n1];
        mat_vec(f, &map, pts[n1 + 1], &mut q);
        for i in 0..n1 {
            for j in 0..i {
                if q[i] == q[j] {
                    return None;
                }
            }
        }
        let params = q
            .iter()
            .map(|&x| f.inv(x).map(|v| f.neg(v)))
            .collect::<Option<Vec<u64>>>()?;
        Some(ModCurve { n1, map, params })
    }

    /// False only if the point is certainly off the curve.
    pub fn may_contain(&self, f: &PrimeField, x: &[u64], scratch: &mut [u64]) -> bool {
        let y = &mut scratch[..self.n1];
        mat_vec(f, &self.map, x, y);
        let a = &self.params;
        let u = |i: usize| f.sub(y[i], y[0]);
        let v = |i: usize| f.sub(f.mul(a[i], y[i]), f.mul(a[0], y[0]));
        let Some(k) = (1..self.n1).find(|&i| u(i) != 0) else {
            return true;
        };
        let (uk, vk) = (u(k), v(k));
        (1..self.n1).all(|j| f.mul(u(j), vk) == f.mul(v(j), uk))
    }
}
