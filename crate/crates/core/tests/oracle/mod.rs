//! Reference computations kept apart from the library kernel: monomial
//! evaluation, Bareiss rank over the integers, rank modulo 2^61 - 1 and
//! brute-force secant search.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rncreg::Configuration;

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn reduce(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits")
}

/// Rank over `F_p`; never exceeds the rational rank.
pub fn rank_mod_p(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(reduce).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let inv = powmod(a[r][c], P - 2);
        for i in r + 1..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            let f = mulmod(a[i][c], inv);
            for j in c..cols {
                let s = mulmod(f, a[r][j]);
                a[i][j] = (a[i][j] + P - s) % P;
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Exact rank by fraction-free elimination. Every entry stays a minor of
/// the input, so each division is exact.
pub fn bareiss_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            for j in c + 1..cols {
                a[i][j] = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Exact rank; the modular pass settles it when it already reaches the
/// trivial upper bound `cap`.
pub fn rank(rows: &[Vec<BigInt>], cap: usize) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let full = rows.len().min(cols).min(cap);
    let lo = rank_mod_p(rows);
    if lo == full {
        lo
    } else {
        bareiss_rank(rows)
    }
}

fn exponents(vars: usize, m: u32) -> Vec<Vec<u32>> {
    if vars == 1 {
        return vec![vec![m]];
    }
    let mut out = Vec::new();
    for e in 0..=m {
        for mut rest in exponents(vars - 1, m - e) {
            rest.push(e);
            out.push(rest);
        }
    }
    out
}

/// Values of all degree-`m` monomials at each point.
pub fn evaluation(g: &Configuration, m: u32) -> Vec<Vec<BigInt>> {
    let exps = exponents(g.ambient_dim() + 1, m);
    g.points()
        .iter()
        .map(|p| {
            exps.iter()
                .map(|e| {
                    p.coords()
                        .iter()
                        .zip(e)
                        .map(|(c, &k)| num_traits::pow(c.clone(), k as usize))
                        .product()
                })
                .collect()
        })
        .collect()
}

/// `h(m)` given a certified upper bound `cap` on it.
pub fn hilbert_capped(g: &Configuration, m: u32, cap: usize) -> usize {
    if g.degree() == 0 {
        return 0;
    }
    rank(&evaluation(g, m), cap)
}

pub fn hilbert(g: &Configuration, m: u32) -> usize {
    hilbert_capped(g, m, usize::MAX)
}

/// `1 + min{m : h(m) = d}`, with `cap(m)` a certified upper bound on `h(m)`.
pub fn regularity_capped(g: &Configuration, cap: impl Fn(u32) -> usize) -> usize {
    let d = g.degree();
    if d == 0 {
        return 0;
    }
    let mut m = 0;
    loop {
        if cap(m) >= d && hilbert_capped(g, m, cap(m)) == d {
            return m as usize + 1;
        }
        m += 1;
    }
}

pub fn regularity(g: &Configuration) -> usize {
    regularity_capped(g, |_| usize::MAX)
}

/// Cap for `c` points on one rational normal curve of `P^n` plus `k` more:
/// degree-`m` forms restrict to binary forms of degree `nm` on the curve.
pub fn curve_cap(n: usize, k: usize) -> impl Fn(u32) -> usize {
    move |m| n * m as usize + 1 + k
}

/// Calls `f` on each `k`-subset of `0..n` in lexicographic order
/// until it returns `false`.
pub fn subsets(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn coord_rows(g: &Configuration, idx: &[usize]) -> Vec<Vec<BigInt>> {
    idx.iter().map(|&i| g.points()[i].coords().to_vec()).collect()
}

pub fn independent(g: &Configuration, idx: &[usize]) -> bool {
    rank(&coord_rows(g, idx), idx.len()) == idx.len()
}

/// Least `t` with `t + 2` points spanning only a `t`-plane.
pub fn t_invariant(g: &Configuration) -> usize {
    let n = g.ambient_dim();
    for s in 3..=n + 1 {
        let mut dependent = false;
        subsets(g.degree(), s, |idx| {
            dependent = !independent(g, idx);
            !dependent
        });
        if dependent {
            return s - 2;
        }
    }
    n
}

pub fn span_dim(g: &Configuration, idx: &[usize]) -> usize {
    rank(&coord_rows(g, idx), usize::MAX) - 1
}

/// Every `t`-plane spanned by points of `g`, as the sorted index set of the
/// points it contains.
pub fn secant_sections(g: &Configuration, t: usize) -> Vec<Vec<usize>> {
    let d = g.degree();
    let mut out: Vec<Vec<usize>> = Vec::new();
    subsets(d, t + 1, |idx| {
        if independent(g, idx) {
            let section: Vec<usize> = (0..d)
                .filter(|&i| {
                    let mut with = idx.to_vec();
                    with.push(i);
                    idx.contains(&i) || rank(&coord_rows(g, &with), usize::MAX) == t + 1
                })
                .collect();
            if !out.contains(&section) {
                out.push(section);
            }
        }
        true
    });
    out
}
