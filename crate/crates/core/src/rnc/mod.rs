//! Rational normal curves of degree `n` in `P^n`.
//!
//! A curve is stored by a frame (the `n + 2` points sent to the coordinate
//! points and the unit point) and distinct parameters `a_0..a_n`. In frame
//! coordinates the curve is
//!
//! ```text
//! x_i(s:t) = prod_{j != i} (t - a_j s)
//! ```
//!
//! which passes through `e_i` at `(1:a_i)` and through the unit point at
//! `(0:1)`.

mod localize;
mod modular;
mod search;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactlin::{self, ExactMatrix, Scalar};
use crate::projective::{standard_frame_map, ProjPoint, ProjTransform};
use crate::scheme::{self, Configuration, Hypersurface};
use crate::{Error, Result};

pub use localize::{rnc_localize, LocalizeOutcome, LocalizeReport, LocalizeStep};
pub use search::{
    curves_with_min_incidence, find_reg_preserving_rnc, lies_on_rnc, rho, rho_exhaustive, CurveScan,
    RhoReport, DEFAULT_RHO_BUDGET,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalNormalCurve {
    ambient_dim: usize,
    frame: Vec<ProjPoint>,
    frame_map: ProjTransform,
    inverse_map: ProjTransform,
    params: Vec<Scalar>,
}

impl RationalNormalCurve {
    /// Rebuilds a curve from its frame points and parameters.
    pub fn from_frame(frame: Vec<ProjPoint>, params: Vec<Scalar>) -> Result<Self> {
        let frame_map = standard_frame_map(&frame)?;
        let n = frame_map.ambient_dim();
        if params.len() != n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "a curve in P^{n} needs {} parameters, got {}",
                n + 1,
                params.len()
            )));
        }
        for i in 0..params.len() {
            for j in 0..i {
                if params[i] == params[j] {
                    return Err(Error::Degenerate(format!("parameters {j} and {i} coincide")));
                }
            }
        }
        let inverse_map = frame_map.inverse();
        Ok(RationalNormalCurve {
            ambient_dim: n,
            frame,
            frame_map,
            inverse_map,
            params,
        })
    }

    /// The curve `(1:t:...:t^n)`.
    pub fn standard(n: usize) -> Self {
        let pts: Vec<ProjPoint> = (0..n as i64 + 3)
            .map(|t| ProjPoint::from_bigints((0..=n as u32).map(|e| BigInt::from(t).pow(e)).collect()).unwrap())
            .collect();
        rnc_through(&pts).expect("moment points are in general position")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn frame(&self) -> &[ProjPoint] {
        &self.frame
    }

    pub fn frame_map(&self) -> &ProjTransform {
        &self.frame_map
    }

    pub fn params(&self) -> &[Scalar] {
        &self.params
    }

    /// Frame coordinates of the parameter value `(s:t)`.
    fn frame_coords(&self, s: &Scalar, t: &Scalar) -> Vec<Scalar> {
        (0..=self.ambient_dim)
            .map(|i| {
                self.params
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(Scalar::one(), |acc, (_, a)| acc * (t - a * s))
            })
            .collect()
    }

    /// Point of the curve at `(s:t)`; fails only for `(0:0)`.
    pub fn point_at(&self, s: &Scalar, t: &Scalar) -> Result<ProjPoint> {
        if s.is_zero() && t.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let y = self.frame_coords(s, t);
        ProjPoint::new(&self.inverse_map.apply_vector(&y)?)
    }

    /// Parameter `(s:t)` of `p` on the curve, or `None` if `p` is off it.
    pub fn parameter_of(&self, p: &ProjPoint) -> Option<(Scalar, Scalar)> {
        if p.ambient_dim() != self.ambient_dim {
            return None;
        }
        let y = self.frame_map.apply_vector(&p.scalars()).ok()?;
        let zeros = y.iter().filter(|v| v.is_zero()).count();
        if zeros > 0 {
            if zeros == self.ambient_dim {
                let k = y.iter().position(|v| !v.is_zero()).expect("nonzero point");
                return Some((Scalar::one(), self.params[k].clone()));
            }
            return None;
        }
        let Some(j) = (1..y.len()).find(|&j| y[j] != y[0]) else {
            return Some((Scalar::zero(), Scalar::one()));
        };
        let a = &self.params;
        let t = (&y[0] * &a[0] - &y[j] * &a[j]) / (&y[0] - &y[j]);
        let candidate = self.frame_coords(&Scalar::one(), &t);
        let cand = ProjPoint::new(&candidate).ok()?;
        let target = ProjPoint::new(&y).ok()?;
        (cand == target).then(|| (Scalar::one(), t))
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.parameter_of(p).is_some()
    }

    /// Membership through the vanishing of the 2x2 minors of the matrix
    /// with columns `(y_i - y_0)` and `(a_i y_i - a_0 y_0)`, `i = 1..n`,
    /// where `y` are frame coordinates. Independent of
    /// [`parameter_of`](Self::parameter_of).
    pub fn contains_implicit(&self, p: &ProjPoint) -> bool {
        if p.ambient_dim() != self.ambient_dim {
            return false;
        }
        let Ok(y) = self.frame_map.apply_vector(&p.scalars()) else {
            return false;
        };
        let a = &self.params;
        let u: Vec<Scalar> = (1..y.len()).map(|i| &y[i] - &y[0]).collect();
        let v: Vec<Scalar> = (1..y.len()).map(|i| &a[i] * &y[i] - &a[0] * &y[0]).collect();
        for i in 0..u.len() {
            for j in i + 1..u.len() {
                if &u[i] * &v[j] != &u[j] * &v[i] {
                    return false;
                }
            }
        }
        true
    }

    /// Indices of the points of `g` on the curve.
    pub fn incidence(&self, g: &Configuration) -> Vec<usize> {
        (0..g.degree()).filter(|&i| self.contains(&g.points()[i])).collect()
    }

    /// A basis of the quadrics containing the curve, from `2n + 1` of its
    /// points (a curve of degree `n` meeting a quadric in more than `2n`
    /// points lies on it).
    pub fn quadrics(&self) -> Vec<Hypersurface> {
        let n = self.ambient_dim;
        let pts: Vec<ProjPoint> = (0..=2 * n as i64)
            .map(|k| self.point_at(&Scalar::one(), &Scalar::from_integer(k.into())).unwrap())
            .collect();
        let s = Configuration::new(n, pts).expect("distinct curve points");
        let rows = scheme::evaluation_rows(&s, 2);
        exactlin::nullspace(&ExactMatrix::from_int_rows(&rows))
            .into_iter()
            .map(|v| {
                let c = exactlin::integerize(&v).into_iter().map(Scalar::from_integer).collect();
                Hypersurface::new(n, 2, c).expect("nonzero kernel vector")
            })
            .collect()
    }
}

/// The unique rational normal curve through `n + 3` points in linearly
/// general position. The last point sits at parameter `(1:0)`.
pub fn rnc_through(points: &[ProjPoint]) -> Result<RationalNormalCurve> {
    let Some(first) = points.first() else {
        return Err(Error::EmptyInput("no points".into()));
    };
    let n = first.ambient_dim();
    if points.len() != n + 3 {
        return Err(Error::DimensionMismatch(format!(
            "a curve in P^{n} is fixed by {} points, got {}",
            n + 3,
            points.len()
        )));
    }
    let frame = points[..n + 2].to_vec();
    let map = standard_frame_map(&frame).map_err(|e| match e {
        Error::DegenerateFrame(m) => Error::NotInLinearGeneralPosition(m),
        other => other,
    })?;
    let q = map.apply(&points[n + 2])?;
    let q: Vec<Scalar> = q.scalars();
    if q.iter().any(Zero::is_zero) {
        return Err(Error::NotInLinearGeneralPosition(
            "the last point lies on a hyperplane spanned by frame points".into(),
        ));
    }
    for i in 0..q.len() {
        for j in 0..i {
            if q[i] == q[j] {
                return Err(Error::NotInLinearGeneralPosition(format!(
                    "the last point lies on the span of the unit point and the frame without {j} and {i}"
                )));
            }
        }
    }
    let params = q.iter().map(|x| -x.recip()).collect();
    RationalNormalCurve::from_frame(frame, params)
}

/// Parameter witness for `p` on `c`, if any.
pub fn curve_contains(c: &RationalNormalCurve, p: &ProjPoint) -> Option<(Scalar, Scalar)> {
    c.parameter_of(p)
}
