//! Exact invariants of finite point sets in projective space.
//!
//! The crate computes Hilbert functions, Castelnuovo-Mumford regularity,
//! the secant invariant `t`, and incidences with rational normal curves for
//! reduced point configurations with rational coordinates, and checks the
//! known regularity theorems for such configurations on generated instances.
//!
//! Every verdict is decided by exact arithmetic. Prime-field computations are
//! used only where they are provably one-sided (a modular rank never exceeds
//! the rational one) and the exact path confirms everything else.

pub mod arith;
pub mod bounds;
pub mod campaign;
pub mod exactlin;
pub mod io;
pub mod projective;
pub mod rnc;
pub mod scheme;
pub mod secant;

mod error;

pub use error::{Error, Result};
pub use exactlin::{ExactMatrix, Scalar};
pub use projective::{LinearSubspace, ProjPoint, ProjTransform};
pub use rnc::{RationalNormalCurve, RhoReport};
pub use scheme::{Configuration, HilbertProfile, Hypersurface};
pub use secant::{SecantReport, SubspaceWitness};
