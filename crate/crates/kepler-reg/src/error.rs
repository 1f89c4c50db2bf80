use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quaternion is zero")]
    ZeroQuaternion,
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("basis is degenerate (Gram determinant {0:e})")]
    DegenerateBasis(f64),
    #[error("hyperbolic argument {0} exceeds the overflow cap")]
    RangeExceeded(f64),
    #[error("position is at the origin")]
    OriginCollision,
    #[error("orbit is rectilinear (|L| = {0:e})")]
    RectilinearOrbit(f64),
    #[error("scale factor must be positive, got {0}")]
    NonpositiveScale(f64),
    #[error("eccentricity {0} out of range for this regime")]
    EccentricityOutOfRange(f64),
    #[error("true anomaly pi is not on an open conic")]
    ApoapsisBranch,
    #[error("e cosh(psi) <= 1: outside the hyperbolic domain")]
    HyperbolicDomain,
    #[error("point is at the north pole")]
    NorthPole,
    #[error("state is off the energy shell (residual {0:e})")]
    OffShell(f64),
    #[error("energy must be negative, got {0}")]
    NotNegativeEnergy(f64),
    #[error("energy must be positive, got {0}")]
    NotPositiveEnergy(f64),
    #[error("orbit is not parabolic")]
    NotParabolic,
    #[error("point is outside the image of the map")]
    DegenerateImage,
    #[error("point is not on the upper hyperboloid sheet")]
    SheetViolation,
    #[error("iteration did not converge")]
    NoConvergence,
    #[error("momentum is zero")]
    ZeroMomentum,
    #[error("line direction is degenerate")]
    DegenerateLine,
    #[error("denominator quaternion is singular")]
    SingularDenominator,
    #[error("orbit approached the origin at t = {0}")]
    CollisionApproach(f64),
    #[error("step size underflow at t = {0}")]
    StepFailure(f64),
    #[error("perturbed point left the domain of the map")]
    DomainEscape,
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
