//! The Kepler Hamiltonian `H = |p|²/2 − 1/|q|` (gravitational parameter 1),
//! the normalized Hamiltonians `K±`, `K0`, the integrals `L` and `A`, and
//! orbital elements.

use serde::Serialize;

use crate::anomaly;
use crate::error::{Error, Result};
use crate::geometry::Vec3;

/// A point `(q, p)` of T*ℝ³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseState {
    pub q: Vec3,
    pub p: Vec3,
}

impl PhaseState {
    pub fn new(q: Vec3, p: Vec3) -> Self {
        Self { q, p }
    }

    pub fn from_arrays(q: [f64; 3], p: [f64; 3]) -> Self {
        Self {
            q: Vec3::from(q),
            p: Vec3::from(p),
        }
    }

    /// Position norm, or `OriginCollision` when it vanishes.
    pub fn radius(&self) -> Result<f64> {
        let r = self.q.norm();
        if r == 0.0 || !r.is_finite() {
            return Err(Error::OriginCollision);
        }
        Ok(r)
    }

    /// `(q1, q2, q3, p1, p2, p3)`.
    pub fn to_array(&self) -> [f64; 6] {
        [self.q.x, self.q.y, self.q.z, self.p.x, self.p.y, self.p.z]
    }

    pub fn from_slice(v: &[f64]) -> Self {
        Self {
            q: Vec3::new(v[0], v[1], v[2]),
            p: Vec3::new(v[3], v[4], v[5]),
        }
    }

    /// Largest component-wise difference.
    pub fn distance(&self, other: &PhaseState) -> f64 {
        (self.q - other.q).amax().max((self.p - other.p).amax())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Which normalized Hamiltonian: `K+` (level −½), `K−` (level ½), `K0` (level 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shell {
    Plus,
    Minus,
    Zero,
}

impl Shell {
    pub const ALL: [Shell; 3] = [Shell::Plus, Shell::Minus, Shell::Zero];

    /// Energy level whose shell is the zero set of this Hamiltonian.
    pub fn level(self) -> f64 {
        match self {
            Shell::Plus => -0.5,
            Shell::Minus => 0.5,
            Shell::Zero => 0.0,
        }
    }

    fn shift(self) -> f64 {
        match self {
            Shell::Plus => 1.0,
            Shell::Minus => -1.0,
            Shell::Zero => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Energies {
    pub h: f64,
    pub k_plus: f64,
    pub k_minus: f64,
    pub k_zero: f64,
}

impl Energies {
    pub fn k(&self, shell: Shell) -> f64 {
        match shell {
            Shell::Plus => self.k_plus,
            Shell::Minus => self.k_minus,
            Shell::Zero => self.k_zero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstIntegrals {
    pub h: f64,
    pub l: Vec3,
    pub a: Vec3,
    pub e: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitElements {
    pub class: EnergyClass,
    /// Semi-major axis; `|a|` for hyperbolas, `None` for parabolas.
    pub a: Option<f64>,
    pub e: f64,
    /// Semi-latus rectum `|L|²`.
    pub latus: f64,
    /// Periapsis time, with the defining state at `t = 0`.
    pub t_p: f64,
    pub mean_motion: f64,
}

/// Energy and the three normalized Hamiltonians.
pub fn energies(state: &PhaseState) -> Result<Energies> {
    let r = state.radius()?;
    let p2 = state.p.norm_squared();
    Ok(Energies {
        h: 0.5 * p2 - 1.0 / r,
        k_plus: r * (p2 + 1.0) - 2.0,
        k_minus: r * (p2 - 1.0) - 2.0,
        k_zero: r * p2 - 2.0,
    })
}

pub fn energy(state: &PhaseState) -> Result<f64> {
    Ok(energies(state)?.h)
}

pub fn first_integrals(state: &PhaseState) -> Result<FirstIntegrals> {
    let r = state.radius()?;
    let h = 0.5 * state.p.norm_squared() - 1.0 / r;
    let l = state.q.cross(&state.p);
    let a = state.p.cross(&l) - state.q / r;
    Ok(FirstIntegrals {
        h,
        l,
        a,
        e: a.norm(),
    })
}

/// Parabolic when `|H| < 1e-10·max(1, |p|²)`.
pub fn classify(h: f64, p2: f64) -> EnergyClass {
    if h.abs() < 1e-10 * p2.max(1.0) {
        EnergyClass::Parabolic
    } else if h < 0.0 {
        EnergyClass::Elliptic
    } else {
        EnergyClass::Hyperbolic
    }
}

/// Orbital elements together with the anomaly of `state` itself.
pub fn elements_and_anomaly(state: &PhaseState) -> Result<(OrbitElements, f64)> {
    let r = state.radius()?;
    let fi = first_integrals(state)?;
    let lnorm = fi.l.norm();
    if lnorm < 1e-12 {
        return Err(Error::RectilinearOrbit(lnorm));
    }
    let latus = lnorm * lnorm;
    // 0.0 + x maps -0.0 to +0.0, so apoapsis resolves to +π.
    let qp = 0.0 + state.q.dot(&state.p);
    let class = classify(fi.h, state.p.norm_squared());
    let e = fi.e;
    let (a, mean_motion, psi) = match class {
        EnergyClass::Elliptic => {
            let a = -0.5 / fi.h;
            let psi = (qp / a.sqrt()).atan2(1.0 - r / a);
            (Some(a), a.powf(-1.5), psi)
        }
        EnergyClass::Hyperbolic => {
            let a = 0.5 / fi.h;
            let psi = (qp / (a.sqrt() * e)).asinh();
            (Some(a), a.powf(-1.5), psi)
        }
        EnergyClass::Parabolic => (None, 2.0 * latus.powf(-1.5), qp / latus.sqrt()),
    };
    let mean = anomaly::mean_from_anomaly(psi, e, class)?;
    let el = OrbitElements {
        class,
        a,
        e,
        latus,
        t_p: -mean / mean_motion,
        mean_motion,
    };
    Ok((el, psi))
}

pub fn elements_from_state(state: &PhaseState) -> Result<OrbitElements> {
    elements_and_anomaly(state).map(|(el, _)| el)
}

/// `ρ·(t, q, p) = (ρ³t, ρ²q, p/ρ)`.
pub fn scale_state(rho: f64, t: f64, state: &PhaseState) -> Result<(f64, PhaseState)> {
    if !(rho > 0.0) {
        return Err(Error::NonpositiveScale(rho));
    }
    Ok((
        rho.powi(3) * t,
        PhaseState::new(rho * rho * state.q, state.p / rho),
    ))
}

/// `X_H = (p, −q/|q|³)`.
pub fn vector_field_h(state: &PhaseState) -> Result<(Vec3, Vec3)> {
    let r = state.radius()?;
    Ok((state.p, -state.q / (r * r * r)))
}

/// `X_K = (2|q|p, −(|p|² + c)q/|q|)` with `c = 1, −1, 0` for `K+, K−, K0`.
pub fn vector_field_k(state: &PhaseState, which: Shell) -> Result<(Vec3, Vec3)> {
    let r = state.radius()?;
    let c = state.p.norm_squared() + which.shift();
    Ok((2.0 * r * state.p, -c * state.q / r))
}

/// `{K, H}` from the gradients, and the closed form `⟨q,p⟩/|q|²·K`.
pub fn poisson_bracket_k_h(state: &PhaseState, which: Shell) -> Result<(f64, f64)> {
    let r = state.radius()?;
    let (q, p) = (&state.q, &state.p);
    let c = p.norm_squared() + which.shift();
    let dk_dq = c * q / r;
    let dk_dp = 2.0 * r * p;
    let dh_dq = q / (r * r * r);
    let dh_dp = *p;
    let bracket = dk_dq.dot(&dh_dp) - dk_dp.dot(&dh_dq);
    let k = r * c - 2.0;
    Ok((bracket, q.dot(p) / (r * r) * k))
}
