//! Projective points, linear subspaces and projective transformations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactlin::{self, nullspace, ExactMatrix, Scalar};
use crate::{Error, Result};

/// A point of projective n-space in canonical form: a primitive integer
/// vector whose first nonzero coordinate is positive. Two points are equal
/// iff their canonical vectors are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    pub fn from_bigints(mut coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionMismatch(
                "a projective point needs at least two coordinates".into(),
            ));
        }
        let g = coords.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let first_negative = coords.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        let g = if first_negative { -g } else { g };
        if !g.is_one() {
            for x in &mut coords {
                *x = &*x / &g;
            }
        }
        Ok(ProjPoint { coords })
    }

    pub fn new(coords: &[Scalar]) -> Result<Self> {
        Self::from_bigints(exactlin::integerize(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::from_bigints(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Coordinate point `e_i` of projective n-space.
    pub fn coordinate(i: usize, n: usize) -> Self {
        let mut v = vec![BigInt::zero(); n + 1];
        v[i] = BigInt::one();
        ProjPoint { coords: v }
    }

    /// The unit point `(1:...:1)`.
    pub fn unit(n: usize) -> Self {
        ProjPoint {
            coords: vec![BigInt::one(); n + 1],
        }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn scalars(&self) -> Vec<Scalar> {
        self.coords.iter().cloned().map(Scalar::from_integer).collect()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_same_ambient<'a>(points: impl IntoIterator<Item = &'a ProjPoint>) -> Result<Option<usize>> {
    let mut n = None;
    for p in points {
        match n {
            None => n = Some(p.ambient_dim()),
            Some(m) if m != p.ambient_dim() => {
                return Err(Error::DimensionMismatch(format!(
                    "points of P^{m} and P^{} mixed",
                    p.ambient_dim()
                )))
            }
            _ => {}
        }
    }
    Ok(n)
}

/// Rank of the coordinate matrix of the points (their linear span has
/// projective dimension `rank - 1`).
pub fn coordinate_rank<'a>(points: impl IntoIterator<Item = &'a ProjPoint>) -> usize {
    let rows: Vec<Vec<BigInt>> = points.into_iter().map(|p| p.coords.clone()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    exactlin::rank_of_integer_rows(&rows, cols)
}

/// Whether the points are linearly independent as vectors.
pub fn independent(points: &[&ProjPoint]) -> bool {
    coordinate_rank(points.iter().copied()) == points.len()
}

/// Projective dimension of the span of a nonempty point list.
pub fn span_dim(points: &[ProjPoint]) -> Result<usize> {
    if points.is_empty() {
        return Err(Error::EmptyInput("span of no points".into()));
    }
    check_same_ambient(points)?;
    Ok(coordinate_rank(points) - 1)
}

/// A projective linear subspace stored by independent spanning points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    ambient_dim: usize,
    basis: Vec<ProjPoint>,
}

impl LinearSubspace {
    /// Span of the given points; keeps the first independent subset in
    /// input order as the basis.
    pub fn span(points: &[ProjPoint]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput("span of no points".into()));
        }
        let n = check_same_ambient(points)?.expect("nonempty");
        let cols: Vec<Vec<Scalar>> = points.iter().map(ProjPoint::scalars).collect();
        let m = ExactMatrix::from_columns(&cols)?;
        let red = exactlin::rref(&m);
        let basis = red.pivots.iter().map(|&c| points[c].clone()).collect();
        Ok(LinearSubspace {
            ambient_dim: n,
            basis,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self) -> &[ProjPoint] {
        &self.basis
    }

    /// Integer linear forms cutting out the subspace.
    pub fn equations(&self) -> Vec<Vec<BigInt>> {
        let rows: Vec<Vec<Scalar>> = self.basis.iter().map(ProjPoint::scalars).collect();
        let m = ExactMatrix::from_rows(rows).expect("uniform basis");
        nullspace(&m).iter().map(|v| exactlin::integerize(v)).collect()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.equations_contain(&self.equations(), p)
    }

    /// Membership against precomputed [`equations`](Self::equations).
    pub fn equations_contain(&self, equations: &[Vec<BigInt>], p: &ProjPoint) -> bool {
        equations.iter().all(|eq| exactlin::int_dot(eq, &p.coords).is_zero())
    }

    /// Coordinates of a point of the subspace with respect to the basis,
    /// as a point of projective `dim`-space; `None` if `p` is not in it.
    pub fn coordinates_of(&self, p: &ProjPoint) -> Option<ProjPoint> {
        let k = self.basis.len();
        let n1 = self.ambient_dim + 1;
        let mut aug = ExactMatrix::zeros(n1, k + 1);
        for (j, b) in self.basis.iter().enumerate() {
            for i in 0..n1 {
                aug.set(i, j, Scalar::from_integer(b.coords[i].clone()));
            }
        }
        for i in 0..n1 {
            aug.set(i, k, Scalar::from_integer(p.coords[i].clone()));
        }
        let red = exactlin::rref(&aug);
        if red.pivots.contains(&k) {
            return None;
        }
        let x: Vec<Scalar> = (0..k).map(|r| red.matrix.get(r, k).clone()).collect();
        ProjPoint::new(&x).ok()
    }
}

/// An invertible linear change of homogeneous coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjTransform {
    matrix: ExactMatrix,
}

impl ProjTransform {
    pub fn new(matrix: ExactMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() || matrix.rows() < 2 {
            return Err(Error::DimensionMismatch("transform must be square of size >= 2".into()));
        }
        if exactlin::rank(&matrix) != matrix.rows() {
            return Err(Error::Degenerate("transform matrix is singular".into()));
        }
        Ok(ProjTransform { matrix })
    }

    pub fn identity(n: usize) -> Self {
        ProjTransform {
            matrix: ExactMatrix::identity(n + 1),
        }
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn ambient_dim(&self) -> usize {
        self.matrix.rows() - 1
    }

    /// Image of the homogeneous vector (not normalized).
    pub fn apply_vector(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.mul_vec(v)
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        if p.ambient_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "transform of P^{} applied to a point of P^{}",
                self.ambient_dim(),
                p.ambient_dim()
            )));
        }
        ProjPoint::new(&self.apply_vector(&p.scalars())?)
    }

    pub fn inverse(&self) -> ProjTransform {
        ProjTransform {
            matrix: self.matrix.inverse().expect("transform is invertible"),
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &ProjTransform) -> Result<ProjTransform> {
        Ok(ProjTransform {
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }
}

/// The transform sending `points[i]` to `e_i` for `i <= n` and
/// `points[n+1]` to the unit point.
pub fn standard_frame_map(points: &[ProjPoint]) -> Result<ProjTransform> {
    let n = check_same_ambient(points)?
        .ok_or_else(|| Error::EmptyInput("frame of no points".into()))?;
    if points.len() != n + 2 {
        return Err(Error::DegenerateFrame(format!(
            "a frame of P^{n} needs {} points, got {}",
            n + 2,
            points.len()
        )));
    }
    let cols: Vec<Vec<Scalar>> = points[..=n].iter().map(ProjPoint::scalars).collect();
    let p = ExactMatrix::from_columns(&cols)?;
    let p_inv = p
        .inverse()
        .ok_or_else(|| Error::DegenerateFrame("first n+1 points do not span".into()))?;
    let lambda = p_inv.mul_vec(&points[n + 1].scalars())?;
    if let Some(i) = lambda.iter().position(Zero::is_zero) {
        return Err(Error::DegenerateFrame(format!(
            "the last point lies on the span of the others without point {i}"
        )));
    }
    let scale: Vec<Scalar> = lambda.iter().map(|l| l.recip()).collect();
    let t = ExactMatrix::diagonal(&scale).mul(&p_inv)?;
    Ok(ProjTransform { matrix: t })
}
