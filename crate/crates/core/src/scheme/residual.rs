//! Intersection with a hypersurface, the residual set, interpolation and
//! the residual (Horace) normality implication.

use super::hilbert::{evaluation_rows, is_m_normal, regularity};
use super::{monomials, Configuration, Hypersurface};
use crate::arith::binomial;
use crate::exactlin::{self, nullspace, ExactMatrix, Scalar};
use crate::{Error, Result};

fn check_dims(g: &Configuration, v: &Hypersurface) -> Result<()> {
    if g.ambient_dim() != v.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "configuration in P^{} against hypersurface in P^{}",
            g.ambient_dim(),
            v.ambient_dim()
        )));
    }
    Ok(())
}

/// Splits into the points on `v` and the points off `v`, each in input order.
pub fn split_by_hypersurface(g: &Configuration, v: &Hypersurface) -> Result<(Configuration, Configuration)> {
    check_dims(g, v)?;
    let (on, off): (Vec<usize>, Vec<usize>) = (0..g.degree()).partition(|&i| v.contains(&g.points()[i]));
    Ok((g.subset(&on), g.subset(&off)))
}

/// A degree-`k` hypersurface through every point of `s` that misses at
/// least one point of `avoid`, or `None` if no form of degree `k` does.
///
/// Kernel basis vectors are tried in order. Checking the basis is enough:
/// if every basis form vanished on all avoid points, so would every form in
/// their span.
pub fn hypersurface_through(
    s: &Configuration,
    k: u32,
    avoid: Option<&Configuration>,
) -> Result<Option<Hypersurface>> {
    if k == 0 {
        return Err(Error::OutOfRange("interpolation degree 0".into()));
    }
    if let Some(a) = avoid {
        if a.ambient_dim() != s.ambient_dim() {
            return Err(Error::DimensionMismatch("avoid set in a different space".into()));
        }
    }
    let n = s.ambient_dim();
    let cols = binomial((n + k as usize) as u64, k as u64) as usize;
    let kernel = if s.is_empty() {
        (0..cols)
            .map(|c| {
                let mut v = vec![Scalar::from_integer(0.into()); cols];
                v[c] = Scalar::from_integer(1.into());
                v
            })
            .collect()
    } else {
        let rows = evaluation_rows(s, k);
        let m = ExactMatrix::from_int_rows(&rows);
        nullspace(&m)
    };
    debug_assert_eq!(monomials(n, k).len(), cols);
    for v in kernel {
        let coeffs = exactlin::integerize(&v)
            .into_iter()
            .map(Scalar::from_integer)
            .collect();
        let hs = Hypersurface::new(n, k, coeffs)?;
        match avoid {
            Some(a) if a.points().iter().all(|p| hs.contains(p)) => continue,
            _ => return Ok(Some(hs)),
        }
    }
    Ok(None)
}

/// One instance of the residual normality implication: returns `false`
/// exactly when `g ∩ v` is `m`-normal, `g : v` is `(m - k)`-normal and `g`
/// is not `m`-normal.
pub fn horace_check(g: &Configuration, v: &Hypersurface, m: u32) -> Result<bool> {
    let k = v.degree();
    if m < k {
        return Err(Error::Precondition(format!("degree {m} below hypersurface degree {k}")));
    }
    let (on, off) = split_by_hypersurface(g, v)?;
    let holds = !(is_m_normal(&on, m) && is_m_normal(&off, m - k) && !is_m_normal(g, m));
    Ok(holds)
}

/// Regularity consequence of the residual implication: if the section has
/// smaller regularity than `g`, the residual has regularity at least
/// `reg(g) - k`. Returns `true` when the instance is consistent.
pub fn residual_regularity_check(g: &Configuration, v: &Hypersurface) -> Result<bool> {
    let (on, off) = split_by_hypersurface(g, v)?;
    let reg = regularity(g) as i64;
    if (regularity(&on) as i64) < reg {
        Ok(regularity(&off) as i64 >= reg - i64::from(v.degree()))
    } else {
        Ok(true)
    }
}
