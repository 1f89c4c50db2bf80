//! Checks of the regularized flows along integrated orbits: the frame
//! angle against the eccentric and hyperbolic anomalies, the rotation
//! angles, uniformization by the mean anomaly and the zero-energy line.

use std::f64::consts::TAU;

use crate::anomaly::{anomalies_at, mean_from_anomaly, position_from_anomaly, velocity_from_anomaly};
use crate::error::{Error, Result};
use crate::geometry::{great_circle, hyperbolic_geodesic, mink_inner, plane_containment_residual, Vec4};
use crate::kepler::{elements_and_anomaly, energy, EnergyClass, OrbitElements, PhaseState};
use crate::negative::{ls_forward, map_s};
use crate::positive::{ls_plus_forward, map_s_plus};
use crate::zero::{euclid_inverse, parabolic_parameter, zero_energy_line};

use super::integrator::{integrate_kepler_at, IntegratedOrbit};

/// Energy regime of a flow check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Negative,
    Positive,
    Zero,
}

impl Regime {
    pub fn class(self) -> EnergyClass {
        match self {
            Regime::Negative => EnergyClass::Elliptic,
            Regime::Positive => EnergyClass::Hyperbolic,
            Regime::Zero => EnergyClass::Parabolic,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Negative => "negative",
            Regime::Positive => "positive",
            Regime::Zero => "zero",
        }
    }
}

fn wrap_angle(a: f64) -> f64 {
    a - TAU * (a / TAU).round()
}

/// State at anomaly `psi` on the orbit with `a = 1` (`|a| = 1`, `𝔭 = 2` at
/// zero energy) whose periapsis lies on the first axis, in the plane of
/// the first two axes.
pub fn reference_state(class: EnergyClass, e: f64, psi: f64) -> Result<PhaseState> {
    let (a, latus, mean_motion) = match class {
        EnergyClass::Elliptic => (Some(1.0), 1.0 - e * e, 1.0),
        EnergyClass::Hyperbolic => (Some(1.0), e * e - 1.0, 1.0),
        EnergyClass::Parabolic => (None, 2.0, 2.0 / 2.0f64.powf(1.5)),
    };
    let el = OrbitElements {
        class,
        a,
        e,
        latus,
        t_p: 0.0,
        mean_motion,
    };
    let (x, y) = position_from_anomaly(psi, &el)?;
    let (vx, vy) = velocity_from_anomaly(psi, &el)?;
    Ok(PhaseState::from_arrays([x, y, 0.0], [vx, vy, 0.0]))
}

/// `n` sample times from the state at anomaly `psi_from` to the state at
/// `psi_to`, equally spaced in time.
pub fn anomaly_span_times(class: EnergyClass, e: f64, psi_from: f64, psi_to: f64, n: usize) -> Result<Vec<f64>> {
    let state = reference_state(class, e, psi_from)?;
    let (el, _) = elements_and_anomaly(&state)?;
    let m0 = mean_from_anomaly(psi_from, e, class)?;
    let m1 = mean_from_anomaly(psi_to, e, class)?;
    Ok(super::integrator::linspace(0.0, (m1 - m0) / el.mean_motion, n))
}

fn integrate_checked(initial: &PhaseState, which: Regime, times: &[f64], tol: f64) -> Result<(OrbitElements, f64, IntegratedOrbit)> {
    let (el, psi0) = elements_and_anomaly(initial)?;
    if el.class != which.class() {
        return Err(Error::InvalidArgument(format!(
            "{:?} orbit given to the {} check",
            el.class,
            which.as_str()
        )));
    }
    let orbit = integrate_kepler_at(initial, times, tol)?;
    Ok((el, psi0, orbit))
}

/// Largest errors of the two anomaly identities along an orbit.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AnomalyIdentification {
    /// `max |θ(t) − ε(t)|`, resp. `max |θ(t) + ψ_h(t)|`.
    pub angle: f64,
    /// `max |−s₀ − (ε − M)|`, resp. `max |s₀ + M_h + ψ_h|`.
    pub rotation: f64,
}

/// The frame angle of `S` along an elliptic orbit against the eccentric
/// anomaly and the rotation angle of `R` against `ε − M`. `θ` is measured
/// from the frame at periapsis.
pub fn identify_elliptic(initial: &PhaseState, times: &[f64], tol: f64) -> Result<AnomalyIdentification> {
    let (el, psi0, orbit) = integrate_checked(initial, Regime::Negative, times, tol)?;
    let f0 = map_s(initial)?;
    let (rp, sp) = great_circle(&f0.r, &f0.s, -psi0)?;
    let mut out = AnomalyIdentification::default();
    for (t, state) in orbit.times.iter().zip(&orbit.states) {
        let an = anomalies_at(&el, *t)?;
        let f = map_s(state)?;
        let theta = f.r.dot(&sp).atan2(f.r.dot(&rp));
        out.angle = out.angle.max(wrap_angle(theta - an.psi).abs());
        out.rotation = out.rotation.max((-f.s[0] - (an.psi - an.mean)).abs());
    }
    Ok(out)
}

/// The frame parameter of `S+` along a hyperbolic orbit against minus the
/// hyperbolic anomaly.
pub fn identify_hyperbolic(initial: &PhaseState, times: &[f64], tol: f64) -> Result<AnomalyIdentification> {
    let (el, psi0, orbit) = integrate_checked(initial, Regime::Positive, times, tol)?;
    let f0 = map_s_plus(initial)?;
    let (_, sp) = hyperbolic_geodesic(&f0.r, &f0.s, psi0)?;
    let mut out = AnomalyIdentification::default();
    for (t, state) in orbit.times.iter().zip(&orbit.states) {
        let an = anomalies_at(&el, *t)?;
        let f = map_s_plus(state)?;
        let theta = (-mink_inner(&f.r, &sp)).asinh();
        out.angle = out.angle.max((theta + an.psi).abs());
        out.rotation = out.rotation.max((f.s[0] + an.mean + an.psi).abs());
    }
    Ok(out)
}

fn amax_diff(a: &Vec4, b: &Vec4) -> f64 {
    (a - b).amax()
}

/// Result of [`flow_checks`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowDeviation {
    /// Largest deviation from the closed form (relative to the size of the
    /// point at positive energy).
    pub deviation: f64,
    /// Positive energy: distance of the normalized `x(t)` from the plane of
    /// the periapsis image `span{x(t_p), y(t_p)}`. Zero otherwise.
    pub plane: f64,
}

/// Pushes an integrated orbit through the forward map of `which` and
/// compares with the closed form:
///
/// * negative: `(x, √(−2H)y) = great_circle(r_p, s_p, M(t))`,
/// * positive: `(x, √(2H)y) = hyperbolic_geodesic(r_p, s_p, M_h(t))`,
/// * zero: `x(t) = x(0) + (θ(t) − θ(0))·y(0)`, `y(t) = y(0)`,
///
/// where `(r_p, s_p)` is the image of the periapsis state.
pub fn flow_checks(initial: &PhaseState, which: Regime, times: &[f64], tol: f64) -> Result<FlowDeviation> {
    let (el, psi0, orbit) = integrate_checked(initial, which, times, tol)?;
    let mut out = FlowDeviation { deviation: 0.0, plane: 0.0 };
    match which {
        Regime::Negative => {
            let w = (-2.0 * energy(initial)?).sqrt();
            let f0 = map_s(initial)?;
            let (rp, sp) = great_circle(&f0.r, &f0.s, -psi0)?;
            for (t, state) in orbit.times.iter().zip(&orbit.states) {
                let (x, y) = ls_forward(state)?;
                let (xp, yp) = great_circle(&rp, &sp, anomalies_at(&el, *t)?.mean)?;
                out.deviation = out.deviation.max(amax_diff(&x, &xp)).max(amax_diff(&(w * y), &yp));
            }
        }
        Regime::Positive => {
            let w = (2.0 * energy(initial)?).sqrt();
            let f0 = map_s_plus(initial)?;
            let (rp, sp) = hyperbolic_geodesic(&f0.r, &f0.s, psi0)?;
            let mut unit_points = Vec::with_capacity(orbit.states.len());
            for (t, state) in orbit.times.iter().zip(&orbit.states) {
                let (x, y) = ls_plus_forward(state)?;
                let (xp, yp) = hyperbolic_geodesic(&rp, &sp, anomalies_at(&el, *t)?.mean)?;
                let scale = xp.amax().max(1.0);
                out.deviation = out
                    .deviation
                    .max(amax_diff(&x, &xp) / scale)
                    .max(amax_diff(&(w * y), &yp) / scale);
                unit_points.push(x / x.norm());
            }
            out.plane = plane_containment_residual(&unit_points, (&rp, &sp))?;
        }
        Regime::Zero => {
            let start = euclid_inverse(initial)?;
            let th0 = parabolic_parameter(&el, 0.0)?;
            for (t, state) in orbit.times.iter().zip(&orbit.states) {
                let pt = euclid_inverse(state)?;
                let pred = start.x + (parabolic_parameter(&el, *t)? - th0) * start.y;
                out.deviation = out.deviation.max((pt.x - pred).amax()).max((pt.y - start.y).amax());
            }
        }
    }
    Ok(out)
}

/// Maximum pointwise deviation of [`flow_checks`].
pub fn flow_correspondence(initial: &PhaseState, which: Regime, times: &[f64], tol: f64) -> Result<f64> {
    flow_checks(initial, which, times, tol).map(|d| d.deviation)
}

/// Checks of the straight-line picture along an integrated parabolic orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroEnergyFlow {
    /// `max |y(t) − y(0)|`.
    pub y_drift: f64,
    /// Distance of the `ℒ⁻¹` images from the fitted line.
    pub line_residual: f64,
    /// `max |θ_fit(t) − (θ(t) − θ(0))|` against the closed form.
    pub parameter: f64,
    /// Largest relative error of the central difference of `θ_fit` against
    /// `1/|q|`.
    pub rate: f64,
}

/// Samples a parabolic orbit at `n` centres in `[δ, t_final − δ]` and at
/// `±δ` around each, and checks the line, the parameter and its rate.
pub fn zero_energy_flow(initial: &PhaseState, t_final: f64, n: usize, delta: f64, tol: f64) -> Result<ZeroEnergyFlow> {
    let n = n.max(2);
    if !(t_final > 2.0 * delta * n as f64) || !(delta > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "sample spacing too small for delta {delta} over {t_final}"
        )));
    }
    let centres = super::integrator::linspace(delta, t_final - delta, n);
    let mut times = vec![0.0];
    for c in &centres {
        times.extend([c - delta, *c, c + delta]);
    }
    if times[1] == 0.0 {
        times.remove(1);
    }
    let (el, _, orbit) = integrate_checked(initial, Regime::Zero, &times, tol)?;
    let line = zero_energy_line(&orbit.states)?;
    let th0 = parabolic_parameter(&el, 0.0)?;
    let mut parameter = 0.0f64;
    for (t, th) in orbit.times.iter().zip(&line.thetas) {
        parameter = parameter.max((th - (parabolic_parameter(&el, *t)? - th0)).abs());
    }
    let mut rate = 0.0f64;
    let off = times.len() - 3 * n;
    for k in 0..n {
        let i = off + 3 * k;
        let fd = (line.thetas[i + 2] - line.thetas[i]) / (orbit.times[i + 2] - orbit.times[i]);
        let exact = 1.0 / orbit.states[i + 1].radius()?;
        rate = rate.max((fd - exact).abs() / exact);
    }
    Ok(ZeroEnergyFlow {
        y_drift: line.y_drift,
        line_residual: line.line_residual,
        parameter,
        rate,
    })
}

/// Largest drift of `H`, `L` and `A` along an orbit.
pub fn integral_drift(orbit: &IntegratedOrbit) -> Result<f64> {
    let first = crate::kepler::first_integrals(&orbit.states[0])?;
    let mut d = 0.0f64;
    for s in &orbit.states {
        let fi = crate::kepler::first_integrals(s)?;
        d = d
            .max((fi.h - first.h).abs())
            .max((fi.l - first.l).amax())
            .max((fi.a - first.a).amax());
    }
    Ok(d)
}
