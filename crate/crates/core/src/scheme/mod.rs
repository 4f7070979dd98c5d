//! Reduced point configurations, hypersurfaces and their basic invariants.

mod hilbert;
mod residual;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactlin::{self, Scalar};
use crate::projective::{self, ProjPoint};
use crate::{Error, Result};

pub use hilbert::{
    evaluation_rows, h1, hilbert_function, hilbert_function_exact, is_m_normal, profile,
    regularity, HilbertProfile,
};
pub use residual::{horace_check, hypersurface_through, residual_regularity_check, split_by_hypersurface};

/// A finite set of distinct points of `P^n` in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    ambient_dim: usize,
    points: Vec<ProjPoint>,
    label: String,
}

impl Configuration {
    /// Validates dimensions and distinctness. The empty configuration is
    /// allowed (it arises as an intersection or residual).
    pub fn new(ambient_dim: usize, points: Vec<ProjPoint>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::OutOfRange("ambient dimension 0".into()));
        }
        let mut seen = HashSet::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if p.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "point {i} lies in P^{}, expected P^{ambient_dim}",
                    p.ambient_dim()
                )));
            }
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(i));
            }
        }
        Ok(Configuration {
            ambient_dim,
            points,
            label: String::new(),
        })
    }

    pub fn from_int_points(ambient_dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|c| ProjPoint::from_ints(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient_dim, pts)
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Configuration {
            ambient_dim,
            points: Vec::new(),
            label: String::new(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    /// Number of points (the length of the reduced scheme).
    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Projective dimension of the span; `None` for the empty set.
    pub fn span_dim(&self) -> Option<usize> {
        (!self.is_empty()).then(|| projective::coordinate_rank(&self.points) - 1)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.span_dim() == Some(self.ambient_dim)
    }

    /// Points at the given indices, in that order.
    pub fn subset(&self, indices: &[usize]) -> Configuration {
        Configuration {
            ambient_dim: self.ambient_dim,
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
            label: String::new(),
        }
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.contains(p)
    }

    /// Disjoint union; fails on a shared point.
    pub fn union(&self, other: &Configuration) -> Result<Configuration> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch("union of configurations in different spaces".into()));
        }
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().cloned());
        Configuration::new(self.ambient_dim, pts)
    }

    /// Integer coordinate rows, one per point.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        self.points.iter().map(|p| p.coords().to_vec()).collect()
    }
}

/// Exponent vectors of all degree-`k` monomials in `x_0..x_n`, ordered
/// graded-lexicographically with `x_0 > x_1 > ... > x_n` (so `x_0^k` first).
pub fn monomials(n: usize, k: u32) -> Vec<Vec<u32>> {
    fn fill(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            fill(pos + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    fill(0, k, &mut vec![0; n + 1], &mut out);
    out
}

/// Values of the given monomials at an integer point.
pub fn monomial_values(coords: &[BigInt], monos: &[Vec<u32>]) -> Vec<BigInt> {
    let max_exp = monos.iter().flatten().copied().max().unwrap_or(0);
    let powers: Vec<Vec<BigInt>> = coords
        .iter()
        .map(|c| {
            let mut v = Vec::with_capacity(max_exp as usize + 1);
            v.push(BigInt::one());
            for e in 1..=max_exp as usize {
                v.push(&v[e - 1] * c);
            }
            v
        })
        .collect();
    monos
        .iter()
        .map(|m| {
            m.iter()
                .enumerate()
                .fold(BigInt::one(), |acc, (i, &e)| acc * &powers[i][e as usize])
        })
        .collect()
}

/// A hypersurface of degree `k >= 1` given by coefficients over
/// [`monomials`]`(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    ambient_dim: usize,
    degree: u32,
    coeffs: Vec<Scalar>,
    int_coeffs: Vec<BigInt>,
}

impl Hypersurface {
    pub fn new(ambient_dim: usize, degree: u32, coeffs: Vec<Scalar>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::OutOfRange("hypersurface degree 0".into()));
        }
        let expected = crate::arith::binomial((ambient_dim + degree as usize) as u64, degree as u64);
        if coeffs.len() as u64 != expected {
            return Err(Error::DimensionMismatch(format!(
                "degree {degree} forms on P^{ambient_dim} have {expected} coefficients, got {}",
                coeffs.len()
            )));
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::Degenerate("all coefficients are zero".into()));
        }
        let int_coeffs = exactlin::integerize(&coeffs);
        Ok(Hypersurface {
            ambient_dim,
            degree,
            coeffs,
            int_coeffs,
        })
    }

    /// The hyperplane `sum a_i x_i = 0`.
    pub fn hyperplane(coeffs: &[i64]) -> Result<Self> {
        let n = coeffs
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::EmptyInput("hyperplane with no coefficients".into()))?;
        let c = coeffs.iter().map(|&a| Scalar::from_integer(a.into())).collect();
        Self::new(n, 1, c)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Value of the defining form (with denominators cleared) at `p`.
    pub fn evaluate(&self, p: &ProjPoint) -> BigInt {
        let monos = monomials(self.ambient_dim, self.degree);
        exactlin::int_dot(&self.int_coeffs, &monomial_values(p.coords(), &monos))
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.evaluate(p).is_zero()
    }
}
