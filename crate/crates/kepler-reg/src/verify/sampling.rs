//! Seeded random states, regularized points and group elements.
//!
//! States are built from `(|q|, e, ψ)` so that the eccentricity and the
//! anomaly are controlled directly: `|q|` is log-uniform, the orbit plane
//! and orientation are uniform.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::geometry::{join, HyperboloidCotangent, Quaternion, SphereCotangent, Vec3, Vec4};
use crate::kepler::{energy, scale_state, EnergyClass, PhaseState, Shell};
use crate::symmetry::{GMinusElement, GPlusElement, GZeroElement, LieAlgebraPair};

pub type SampleRng = ChaCha8Rng;

/// Radius range of sampled states.
pub const RADIUS_RANGE: (f64, f64) = (0.2, 5.0);

pub fn log_uniform(rng: &mut SampleRng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..=hi.ln())).exp()
}

pub fn unit_vec3(rng: &mut SampleRng) -> Vec3 {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi = rng.random_range(0.0..TAU);
    let s = (1.0 - z * z).max(0.0).sqrt();
    Vec3::new(s * phi.cos(), s * phi.sin(), z)
}

/// Uniform in the closed ball of radius `r`.
pub fn ball_vec3(rng: &mut SampleRng, r: f64) -> Vec3 {
    let u: f64 = rng.random_range(0.0..=1.0);
    r * u.cbrt() * unit_vec3(rng)
}

pub fn unit_vec4(rng: &mut SampleRng) -> Vec4 {
    loop {
        let v = Vec4::from_fn(|_, _| rng.random_range(-1.0..=1.0));
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}

pub fn unit_quaternion(rng: &mut SampleRng) -> Quaternion {
    let v = unit_vec4(rng);
    Quaternion::new(v[0], v[1], v[2], v[3])
}

/// The state at radius `r` and anomaly `psi` on an orbit of eccentricity
/// `e` of the given class, in a random plane.
pub fn state_from_anomaly(rng: &mut SampleRng, r: f64, e: f64, psi: f64, class: EnergyClass) -> PhaseState {
    let (latus, qp) = match class {
        EnergyClass::Elliptic => {
            let a = r / (1.0 - e * psi.cos());
            (a * (1.0 - e * e), a.sqrt() * e * psi.sin())
        }
        EnergyClass::Hyperbolic => {
            let a = r / (e * psi.cosh() - 1.0);
            (a * (e * e - 1.0), a.sqrt() * e * psi.sinh())
        }
        EnergyClass::Parabolic => {
            let latus = 2.0 * r / (1.0 + psi * psi);
            (latus, latus.sqrt() * psi)
        }
    };
    let qh = unit_vec3(rng);
    let mut t = unit_vec3(rng).cross(&qh);
    while t.norm() < 1e-3 {
        t = unit_vec3(rng).cross(&qh);
    }
    let t = t.normalize();
    let p = (qp / r) * qh + (latus.sqrt() / r) * t;
    PhaseState::new(r * qh, p)
}

pub fn elliptic_state(rng: &mut SampleRng, e_max: f64) -> PhaseState {
    let r = log_uniform(rng, RADIUS_RANGE.0, RADIUS_RANGE.1);
    let e = rng.random_range(0.0..=e_max);
    let psi = rng.random_range(-PI..PI);
    state_from_anomaly(rng, r, e, psi, EnergyClass::Elliptic)
}

pub fn hyperbolic_state(rng: &mut SampleRng, e_max: f64, psi_max: f64) -> PhaseState {
    let r = log_uniform(rng, RADIUS_RANGE.0, RADIUS_RANGE.1);
    let e = rng.random_range(1.01..=e_max.max(1.01));
    let psi = rng.random_range(-psi_max..=psi_max);
    state_from_anomaly(rng, r, e, psi, EnergyClass::Hyperbolic)
}

/// Semi-major-axis range for checks whose difference step is absolute.
pub const AXIS_RANGE: (f64, f64) = (0.5, 2.0);

/// A state with `|a|` log-uniform in [`AXIS_RANGE`] instead of `|q|`, for
/// `e ≤ e_max` and `|ψ| ≤ psi_max` (elliptic: `ψ` uniform over a period).
pub fn axis_state(rng: &mut SampleRng, class: EnergyClass, e_max: f64, psi_max: f64) -> PhaseState {
    let a = log_uniform(rng, AXIS_RANGE.0, AXIS_RANGE.1);
    let (e, psi, r) = match class {
        EnergyClass::Elliptic => {
            let e = rng.random_range(0.0..=e_max);
            let psi = rng.random_range(-PI..PI);
            (e, psi, a * (1.0 - e * psi.cos()))
        }
        _ => {
            let e = rng.random_range(1.01..=e_max.max(1.01));
            let psi = rng.random_range(-psi_max..=psi_max);
            (e, psi, a * (e * psi.cosh() - 1.0))
        }
    };
    state_from_anomaly(rng, r, e, psi, class)
}

pub fn parabolic_state(rng: &mut SampleRng, psi_max: f64) -> PhaseState {
    let r = log_uniform(rng, RADIUS_RANGE.0, RADIUS_RANGE.1);
    let psi = rng.random_range(-psi_max..=psi_max);
    state_from_anomaly(rng, r, 1.0, psi, EnergyClass::Parabolic)
}

/// Rescales a state of the right energy sign onto the shell `K = 0`.
pub fn onto_shell(state: &PhaseState, shell: Shell) -> Result<PhaseState> {
    match shell {
        Shell::Zero => Ok(*state),
        _ => {
            let rho = (energy(state)? / shell.level()).sqrt();
            Ok(scale_state(rho, 0.0, state)?.1)
        }
    }
}

/// A random state on the shell `K = 0` with eccentricity below `e_max`
/// (elliptic) or anomaly bounded by `psi_max` (otherwise).
pub fn shell_state(rng: &mut SampleRng, shell: Shell, e_max: f64, psi_max: f64) -> Result<PhaseState> {
    match shell {
        Shell::Plus => onto_shell(&elliptic_state(rng, e_max), shell),
        Shell::Minus => onto_shell(&hyperbolic_state(rng, e_max, psi_max), shell),
        Shell::Zero => Ok(parabolic_state(rng, psi_max)),
    }
}

/// A state with no energy constraint: `|q| ∈ [0.1, 10]` log-uniform and
/// `|p| ≤ 5`.
pub fn off_shell_state(rng: &mut SampleRng) -> PhaseState {
    let r = log_uniform(rng, 0.1, 10.0);
    PhaseState::new(r * unit_vec3(rng), ball_vec3(rng, 5.0))
}

/// A point of T*S³ with `x₀ ≤ 0.9` and unit `y`.
pub fn sphere_point(rng: &mut SampleRng) -> SphereCotangent {
    let x = loop {
        let x = unit_vec4(rng);
        if x[0] <= 0.9 {
            break x;
        }
    };
    let y = loop {
        let v = unit_vec4(rng);
        let w = v - v.dot(&x) * x;
        if w.norm() > 1e-3 {
            break w.normalize();
        }
    };
    SphereCotangent::new(x, y)
}

/// A point of T*H³ on the upper sheet with `⟨y, y⟩ = −1`.
pub fn hyperboloid_point(rng: &mut SampleRng, rapidity_max: f64) -> HyperboloidCotangent {
    let u = rng.random_range(0.05..=rapidity_max);
    let n = unit_vec3(rng);
    let x = join(u.cosh(), &(u.sinh() * n));
    // Boost a unit spatial vector orthogonal to the time axis along n.
    let m = unit_vec3(rng);
    let par = m.dot(&n);
    let y = join(par * u.sinh(), &(m + (u.cosh() - 1.0) * par * n));
    HyperboloidCotangent::new(x, y)
}

pub fn lie_pair(rng: &mut SampleRng, radius: f64) -> LieAlgebraPair {
    LieAlgebraPair::new(ball_vec3(rng, radius), ball_vec3(rng, radius))
}

pub fn gplus_element(rng: &mut SampleRng) -> GPlusElement {
    GPlusElement {
        alpha1: unit_quaternion(rng),
        alpha2: unit_quaternion(rng),
    }
}

/// `exp` of a random algebra element with `|a|, |b| ≤ radius`.
pub fn gminus_element(rng: &mut SampleRng, radius: f64) -> GMinusElement {
    GMinusElement::exp(&lie_pair(rng, radius), 1.0)
}

pub fn gzero_element(rng: &mut SampleRng, radius: f64) -> GZeroElement {
    GZeroElement::exp(&lie_pair(rng, radius), 1.0)
}
