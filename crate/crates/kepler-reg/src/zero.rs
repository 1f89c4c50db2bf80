//! Zero energy: the Euclidean map `ℒ(x, y) = (xyx/2, 2x⁻¹)` on pure
//! quaternions, the straight-line picture of parabolic orbits, and the
//! limit of `φ+` as the energy tends to zero.
//!
//! On `K0 = 0` the image of an orbit under `ℒ⁻¹` is the line
//! `x(t) = x(t_p) + θ(t)·y` with `θ̇ = 1/|q|` and `θ = √𝔭·ψ_p`.

use crate::anomaly;
use crate::error::{Error, Result};
use crate::geometry::{imag, pure, quat_inv, split, Vec3, Vec4};
use crate::kepler::{energies, EnergyClass, OrbitElements, PhaseState};
use crate::positive::ls_plus_forward_at_energy;

const SHELL_TOL: f64 = 1e-8;

/// A point `(x, y)` of T*ℝ³ on the regularized side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinePoint {
    pub x: Vec3,
    pub y: Vec3,
}

impl LinePoint {
    pub fn new(x: Vec3, y: Vec3) -> Self {
        Self { x, y }
    }
}

pub fn euclid_forward(pt: &LinePoint) -> Result<PhaseState> {
    let x = pure(&pt.x);
    let q = x * pure(&pt.y) * x / 2.0;
    let p = quat_inv(&x)? * 2.0;
    Ok(PhaseState::new(imag(&q), imag(&p)))
}

/// `ℒ⁻¹(q, p) = (2p⁻¹, pqp/2)`, valid off the shell.
pub fn euclid_inverse(state: &PhaseState) -> Result<LinePoint> {
    let p = pure(&state.p);
    let x = quat_inv(&p).map_err(|_| Error::ZeroMomentum)? * 2.0;
    let y = p * pure(&state.q) * p / 2.0;
    Ok(LinePoint::new(imag(&x), imag(&y)))
}

/// `(−|q|p, q/|q| − ⟨q,p⟩p)`, equal to [`euclid_inverse`] on `K0 = 0`.
pub fn euclid_inverse_on_shell(state: &PhaseState) -> Result<LinePoint> {
    let r = state.radius()?;
    let qp = state.q.dot(&state.p);
    Ok(LinePoint::new(-r * state.p, state.q / r - qp * state.p))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroEnergyLine {
    pub y0: Vec3,
    pub x0: Vec3,
    /// Least-squares line parameter of each sample, `θ(0) = 0`.
    pub thetas: Vec<f64>,
    /// `max |y(t) − y(0)|`.
    pub y_drift: f64,
    /// `max |x(t) − x(0) − θ(t)·y(0)|`.
    pub line_residual: f64,
}

/// Fits the line `x(t) = x(0) + θ(t)·y(0)` through the `ℒ⁻¹` images of a
/// zero-energy orbit.
pub fn zero_energy_line(states: &[PhaseState]) -> Result<ZeroEnergyLine> {
    let mut pts = Vec::with_capacity(states.len());
    for s in states {
        let k = energies(s)?.k_zero;
        if !(k.abs() <= SHELL_TOL) {
            return Err(Error::OffShell(k));
        }
        pts.push(euclid_inverse(s)?);
    }
    let first = pts.first().ok_or(Error::DegenerateLine)?;
    let (x0, y0) = (first.x, first.y);
    let n2 = y0.norm_squared();
    if !(n2.sqrt() >= 1e-12) {
        return Err(Error::DegenerateLine);
    }
    let mut thetas = Vec::with_capacity(pts.len());
    let (mut y_drift, mut line_residual) = (0.0f64, 0.0f64);
    for pt in &pts {
        let d = pt.x - x0;
        let th = d.dot(&y0) / n2;
        thetas.push(th);
        y_drift = y_drift.max((pt.y - y0).norm());
        line_residual = line_residual.max((d - th * y0).norm());
    }
    Ok(ZeroEnergyLine {
        y0,
        x0,
        thetas,
        y_drift,
        line_residual,
    })
}

/// Line parameter `θ = 2ψ_p/(ω_p𝔭) = √𝔭·ψ_p` at time `t`, zero at
/// periapsis.
pub fn parabolic_parameter(el: &OrbitElements, t: f64) -> Result<f64> {
    if el.class != EnergyClass::Parabolic {
        return Err(Error::NotParabolic);
    }
    let psi = anomaly::solve_parabolic(el.mean_motion * (t - el.t_p))?;
    Ok(2.0 * psi / (el.mean_motion * el.latus))
}

/// Limit of `φ+` as `H → 0⁺` in the blown-up coordinates of
/// [`DegenerationSample`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegenerationLimit {
    pub x0: f64,
    pub xbar: Vec3,
    pub y0: f64,
    pub ybar: Vec3,
}

/// `(0, −(|q|p + ⟨q,p⟩w), 0, w)` with `w = q/|q| − ⟨q,p⟩p`.
pub fn ls_degeneration_limit(state: &PhaseState) -> Result<DegenerationLimit> {
    let k = energies(state)?.k_zero;
    if !(k.abs() <= SHELL_TOL) {
        return Err(Error::OffShell(k));
    }
    let r = state.radius()?;
    let qp = state.q.dot(&state.p);
    let w = state.q / r - qp * state.p;
    Ok(DegenerationLimit {
        x0: 0.0,
        xbar: -(r * state.p + qp * w),
        y0: 0.0,
        ybar: w,
    })
}

/// `φ+` at energy `h` on the ray through a zero-energy state, together
/// with the blown-up coordinates that converge to the limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegenerationSample {
    pub h: f64,
    pub state: PhaseState,
    pub x: Vec4,
    pub y: Vec4,
    /// `((x₀ − 1)/ε, x̄/ε, ε·y₀, −ε·ȳ)` with `ε = √(2h)`.
    pub scaled: DegenerationLimit,
    /// Largest deviation of `x̄/ε` and `−ε·ȳ` from the limit.
    pub distance: f64,
}

/// Moves a zero-energy state to energy `h` by `p ↦ √(1 + h|q|)·p` at fixed
/// `q` and applies `φ+` at the energy `h` of the construction.
pub fn degeneration_sample(state: &PhaseState, h: f64) -> Result<DegenerationSample> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidArgument(format!("energy {h} must be positive")));
    }
    let limit = ls_degeneration_limit(state)?;
    let r = state.radius()?;
    let lifted = PhaseState::new(state.q, (1.0 + h * r).sqrt() * state.p);
    let (x, y) = ls_plus_forward_at_energy(&lifted, h)?;
    let eps = (2.0 * h).sqrt();
    let (x0, xb) = split(&x);
    let (y0, yb) = split(&y);
    let scaled = DegenerationLimit {
        x0: (x0 - 1.0) / eps,
        xbar: xb / eps,
        y0: eps * y0,
        ybar: -eps * yb,
    };
    let distance = (scaled.xbar - limit.xbar)
        .norm()
        .max((scaled.ybar - limit.ybar).norm());
    Ok(DegenerationSample {
        h,
        state: lifted,
        x,
        y,
        scaled,
        distance,
    })
}
