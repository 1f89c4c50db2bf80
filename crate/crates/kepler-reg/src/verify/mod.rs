//! Numerical certification: a reference integrator for the Kepler flow,
//! finite-difference Jacobians and symplectic residuals, flow
//! correspondence checks and the named suites run by the command line.

pub mod fd;
pub mod integrator;
pub mod propagate;
pub mod sampling;
pub mod flow;
pub mod report;
pub mod suites;
