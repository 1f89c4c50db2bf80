//! Regularization of the Kepler problem.
//!
//! Maps between the Kepler phase space and the cotangent bundles of S³
//! (negative energy), of the hyperboloid H³ (positive energy) and of ℝ³
//! (zero energy), the anomaly solvers that parametrize the regularized
//! flows, the quaternionic symmetry groups acting on each energy shell, and
//! a numerical harness that certifies the identities relating them.

pub mod anomaly;
pub mod error;
pub mod geometry;
pub mod kepler;
pub mod negative;
pub mod positive;
pub mod symmetry;
pub mod verify;
pub mod zero;

pub use error::{Error, Result};
