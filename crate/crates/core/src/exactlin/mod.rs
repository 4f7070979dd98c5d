//! Exact rational matrix kernel: rank, reduced echelon form and nullspace.
//!
//! All elimination runs fraction-free on integer rows (each rational row is
//! scaled by the lcm of its denominators, which preserves rank and row
//! space). Rational entries only reappear when the reduced form is
//! normalized at the end.

mod gram;
pub mod modp;

use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use gram::certified_gram_rank;
pub use modp::{PrimeField, PREFILTER_PRIME};

use crate::{Error, Result};

/// Exact field element: a normalized big rational (`gcd = 1`, positive
/// denominator, zero is `0/1`).
pub type Scalar = BigRational;

static MODP_PREFILTER: AtomicBool = AtomicBool::new(true);

/// Enables or disables the prime-field shortcuts process-wide. Results are
/// identical either way; only running time changes.
pub fn set_modp_prefilter(on: bool) {
    MODP_PREFILTER.store(on, Ordering::Relaxed);
}

pub fn modp_prefilter_enabled() -> bool {
    MODP_PREFILTER.load(Ordering::Relaxed)
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn diagonal(values: &[Scalar]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from integer rows; panics on ragged input.
    pub fn from_int_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let converted = rows
            .iter()
            .map(|row| row.iter().map(|x| Scalar::from_integer(x.clone().into())).collect())
            .collect();
        Self::from_rows(converted).expect("rectangular integer rows")
    }

    pub fn from_columns(cols: &[Vec<Scalar>]) -> Result<Self> {
        let m = Self::from_rows(cols.to_vec())?;
        Ok(m.transpose())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += a * other.get(k, j);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Rows scaled to primitive integer vectors (row space unchanged).
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| integerize(self.row(r))).collect()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Scalar::one());
        }
        let red = rref(&aug);
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.matrix.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> Option<Scalar> {
        if self.rows != self.cols {
            return None;
        }
        // det(M) = det(integer rows) / prod(row scale factors)
        let mut scale = Scalar::one();
        let mut rows = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let row = self.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= Scalar::from_integer(l.clone());
            rows.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
        }
        Some(Scalar::from_integer(integer_determinant(rows)) / scale)
    }
}

/// Clears denominators and removes content, keeping the sign.
pub fn integerize(row: &[Scalar]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Fraction-free (Bareiss) forward elimination. Returns the pivot columns;
/// their count is the rank.
pub fn bareiss_pivots(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].bits())
        else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let piv = &pivot_row[c];
        for row in tail.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = piv * &row[j] - &f * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = piv.clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn integer_rank(mut rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    bareiss_pivots(&mut rows, cols).len()
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn integer_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            let f = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let v = &pivot_row[k] * &row[j] - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Exact rank over the rationals by fraction-free elimination.
pub fn rank_exact(m: &ExactMatrix) -> usize {
    integer_rank(m.integer_rows(), m.cols)
}

/// Rank with a prime-field pass first. A modular rank never exceeds the
/// rational rank, so when it already equals `min(rows, cols)` the exact
/// elimination is skipped; otherwise the exact path decides.
pub fn rank_prefiltered(m: &ExactMatrix, field: &PrimeField) -> usize {
    let rows = m.integer_rows();
    let full = m.rows.min(m.cols);
    if modp::rank_mod_prime(field, &rows, m.cols) == full {
        return full;
    }
    integer_rank(rows, m.cols)
}

/// Rank over the rationals; uses the modular prefilter when enabled.
pub fn rank(m: &ExactMatrix) -> usize {
    if modp_prefilter_enabled() {
        rank_prefiltered(m, &PrimeField::new(PREFILTER_PRIME))
    } else {
        rank_exact(m)
    }
}

/// Rank of an integer matrix given by rows, with the same prefilter policy
/// as [`rank`].
pub fn rank_of_integer_rows(rows: &[Vec<BigInt>], cols: usize) -> usize {
    let full = rows.len().min(cols);
    if modp_prefilter_enabled() {
        let f = PrimeField::new(PREFILTER_PRIME);
        if modp::rank_mod_prime(&f, rows, cols) == full {
            return full;
        }
    }
    integer_rank(rows.to_vec(), cols)
}

/// Reduced row-echelon form with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduced row-echelon form by fraction-free Gauss-Jordan elimination.
///
/// After each pivot step every pivot entry equals the latest pivot, and all
/// divisions by the previous pivot are exact, so the working matrix stays
/// integral. Normalization divides each pivot row once at the end.
pub fn rref(m: &ExactMatrix) -> Rref {
    let rows = m.rows;
    let cols = m.cols;
    let mut a = m.integer_rows();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot_row = a[r].clone();
        let piv = &pivot_row[c];
        for (k, row) in a.iter_mut().enumerate() {
            if k == r {
                continue;
            }
            let f = std::mem::take(&mut row[c]);
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let v = piv * &row[j] - &f * &pivot_row[j];
                row[j] = if prev.is_one() {
                    v
                } else {
                    debug_assert!(v.is_multiple_of(&prev));
                    v / &prev
                };
            }
        }
        prev = piv.clone();
        pivots.push(c);
        r += 1;
    }
    let mut out = ExactMatrix::zeros(rows, cols);
    for (i, row) in a.iter().enumerate().take(pivots.len()) {
        let d = &row[pivots[i]];
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                out.set(i, j, Scalar::new(x.clone(), d.clone()));
            }
        }
    }
    Rref {
        matrix: out,
        pivots,
    }
}

/// Basis of the right kernel `{v : M v = 0}`, one vector per free column.
pub fn nullspace(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    let red = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Scalar::zero(); m.cols];
            v[free] = Scalar::one();
            for (i, &p) in red.pivots.iter().enumerate() {
                v[p] = -red.matrix.get(i, free).clone();
            }
            v
        })
        .collect()
}

/// Unique solution of a square system, `None` when singular.
pub fn solve(a: &ExactMatrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    if a.rows != a.cols || b.len() != a.rows {
        return None;
    }
    let n = a.rows;
    let mut aug = ExactMatrix::zeros(n, n + 1);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, n, b[r].clone());
    }
    let red = rref(&aug);
    if red.pivots.len() != n || red.pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some((0..n).map(|r| red.matrix.get(r, n).clone()).collect())
}

/// Dot product of integer vectors.
pub fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}
