//! Named suites of checks.
//!
//! Every check is a pure function of a seeded generator, a sample count and
//! the integrator tolerance. Each check draws from its own ChaCha stream,
//! selected by its position in [`CHECKS`], so a report depends only on
//! `(suite, seed, samples, tol)`.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use rand::{Rng, SeedableRng};

use crate::anomaly::{
    mean_derivative, mean_from_anomaly, radius_from_anomaly, solve_elliptic_detailed, solve_hyperbolic_detailed,
    solve_mean, solve_parabolic_detailed, true_from_anomaly,
};
use crate::error::{Error, Result};
use crate::geometry::{
    great_circle, hyperbolic_geodesic, mink_inner, plane_containment_residual, quat_mul, Vec3, Vec4,
};
use crate::kepler::{
    elements_and_anomaly, energies, first_integrals, poisson_bracket_k_h, scale_state, vector_field_h, vector_field_k,
    EnergyClass, PhaseState, Shell,
};
use crate::negative::{ls_forward, ls_integrals, ls_inverse, map_s, moser_forward, moser_integrals, moser_inverse};
use crate::positive::{
    belbruno_forward, belbruno_integrals, belbruno_inverse, ls_plus_forward, ls_plus_integrals, ls_plus_inverse,
    map_s_plus,
};
use crate::symmetry::{
    act_gminus, act_gplus, act_gzero, generator_gminus, generator_gplus, generator_gzero, moment_gminus,
    moment_gminus_pairing, moment_gplus, moment_gplus_pairing, moment_gzero, moment_gzero_pairing, GMinusElement,
    GPlusElement, GZeroElement, LieAlgebraPair,
};
use crate::zero::{degeneration_sample, euclid_forward, euclid_inverse, LinePoint};

use super::fd::{non_symplectic_control, step_halving_ratio, symplectic_residual, CanonicalForm};
use super::flow::{
    anomaly_span_times, flow_checks, identify_elliptic, identify_hyperbolic, integral_drift, reference_state,
    zero_energy_flow, Regime,
};
use super::integrator::{integrate_kepler, integrate_kepler_at, linspace};
use super::propagate::{anomaly_propagate, orbit_plane};
use super::report::{Bound, CheckRecord, VerificationReport};
use super::sampling::*;

/// Suites in the order they are run by `"all"`.
pub const SUITES: [&str; 15] = [
    "geometry",
    "kepler",
    "solvers",
    "brackets",
    "vector-fields",
    "frames",
    "roundtrips",
    "integrals",
    "symplectic",
    "anomaly-identification",
    "flow",
    "symmetry",
    "degeneration",
    "integrator",
    "all",
];

/// How many samples a check takes for a requested count `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    /// `n` samples.
    Samples,
    /// `min(n, cap)`, for expensive checks.
    Capped(usize),
    /// A fixed grid or a fixed set of orbits.
    Fixed(usize),
}

impl Count {
    pub fn resolve(self, n: usize) -> usize {
        match self {
            Count::Samples => n,
            Count::Capped(cap) => n.min(cap),
            Count::Fixed(k) => k,
        }
    }
}

type CheckFn = fn(&mut SampleRng, usize, f64) -> Result<f64>;

/// A named check with its identity, tolerance and sample policy.
pub struct CheckDef {
    pub suite: &'static str,
    pub name: &'static str,
    pub anchor: &'static str,
    pub tol: f64,
    pub bound: Bound,
    pub count: Count,
    run: CheckFn,
}

const fn check(
    suite: &'static str,
    name: &'static str,
    anchor: &'static str,
    tol: f64,
    count: Count,
    run: CheckFn,
) -> CheckDef {
    CheckDef {
        suite,
        name,
        anchor,
        tol,
        bound: Bound::AtMost,
        count,
        run,
    }
}

const fn check_at_least(
    suite: &'static str,
    name: &'static str,
    anchor: &'static str,
    tol: f64,
    count: Count,
    run: CheckFn,
) -> CheckDef {
    CheckDef {
        bound: Bound::AtLeast,
        ..check(suite, name, anchor, tol, count, run)
    }
}

fn max_over(n: usize, mut f: impl FnMut() -> Result<f64>) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..n {
        let r = f()?;
        if r.is_nan() {
            return Ok(f64::NAN);
        }
        worst = worst.max(r);
    }
    Ok(worst)
}

fn amax4(a: &Vec4, b: &Vec4) -> f64 {
    (a - b).amax()
}

fn amax3(a: &Vec3, b: &Vec3) -> f64 {
    (a - b).amax()
}

fn state_distance(a: &PhaseState, b: &PhaseState) -> f64 {
    a.distance(b)
}

fn flat(x: &Vec4, y: &Vec4) -> Vec<f64> {
    x.iter().chain(y.iter()).copied().collect()
}

// ---------------------------------------------------------------- geometry

fn unit_quaternion_product(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let (a, b) = (unit_quaternion(rng), unit_quaternion(rng));
        Ok((quat_mul(&a, &b).norm() - 1.0).abs())
    })
}

fn great_circle_group_law(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let xy = sphere_point(rng);
        let (a, b) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI));
        let (r1, s1) = great_circle(&xy.x, &xy.y, a)?;
        let (r2, s2) = great_circle(&r1, &s1, b)?;
        let (r3, s3) = great_circle(&xy.x, &xy.y, a + b)?;
        Ok(amax4(&r2, &r3).max(amax4(&s2, &s3)))
    })
}

fn geodesic_constraints(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let xy = hyperboloid_point(rng, 2.0);
        let (r, s) = hyperbolic_geodesic(&xy.x, &xy.y, rng.random_range(-20.0..=20.0))?;
        // Relative to |r|², which reaches cosh² 20 ≈ 6e16.
        let scale = r.norm_squared().max(1.0);
        let res = [mink_inner(&r, &r) - 1.0, mink_inner(&s, &s) + 1.0, mink_inner(&r, &s)];
        Ok(res.iter().fold(0.0f64, |m, v| m.max(v.abs())) / scale)
    })
}

fn geodesic_plane(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let xy = hyperboloid_point(rng, 2.0);
        let mut pts = Vec::with_capacity(10);
        for _ in 0..10 {
            let (r, _) = hyperbolic_geodesic(&xy.x, &xy.y, rng.random_range(-5.0..=5.0))?;
            pts.push(r / r.norm());
        }
        plane_containment_residual(&pts, (&xy.x, &xy.y))
    })
}

// ------------------------------------------------------------------ kepler

fn laplace_norm(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let fi = first_integrals(&off_shell_state(rng))?;
        Ok((fi.a.norm_squared() - (1.0 + 2.0 * fi.h * fi.l.norm_squared())).abs())
    })
}

/// Elliptic orbits over one period, hyperbolic orbits over `ψ_h ∈ [−4, 4]`
/// and a parabolic orbit over `t ∈ [0, 10]`.
fn reference_orbits() -> Result<Vec<(PhaseState, Vec<f64>)>> {
    let mut out = Vec::new();
    for e in [0.2, 0.6, 0.9] {
        out.push((reference_state(EnergyClass::Elliptic, e, 0.0)?, linspace(0.0, TAU, 100)));
    }
    for e in [1.5, 3.0] {
        out.push((
            reference_state(EnergyClass::Hyperbolic, e, -4.0)?,
            anomaly_span_times(EnergyClass::Hyperbolic, e, -4.0, 4.0, 100)?,
        ));
    }
    out.push((PhaseState::from_arrays([2.0, 0.0, 0.0], [0.0, 1.0, 0.0]), linspace(0.0, 10.0, 100)));
    Ok(out)
}

fn integral_conservation(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for (s, times) in reference_orbits()? {
        worst = worst.max(integral_drift(&integrate_kepler_at(&s, &times, tol)?)?);
    }
    Ok(worst)
}

fn scaling_conjugation(rng: &mut SampleRng, n: usize, tol: f64) -> Result<f64> {
    max_over(n, || {
        let s = elliptic_state(rng, 0.6);
        let rho = log_uniform(rng, 0.5, 2.0);
        let t = rng.random_range(0.5..=3.0);
        let flowed = integrate_kepler_at(&s, &[0.0, t], tol)?.states[1];
        let (_, lhs) = scale_state(rho, 0.0, &flowed)?;
        let (t_scaled, scaled) = scale_state(rho, t, &s)?;
        let rhs = integrate_kepler_at(&scaled, &[0.0, t_scaled], tol)?.states[1];
        Ok(lhs.distance(&rhs))
    })
}

// ----------------------------------------------------------------- solvers

fn mean_grid() -> Vec<f64> {
    linspace(-10.0, 10.0, 1000)
}

const ELLIPTIC_GRID: [f64; 11] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99];
const HYPERBOLIC_GRID: [f64; 5] = [1.01, 1.1, 2.0, 5.0, 10.0];

fn elliptic_residuals(_: &mut SampleRng, _: usize, _: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for e in ELLIPTIC_GRID {
        for m in mean_grid() {
            worst = worst.max(solve_elliptic_detailed(m, e)?.residual.abs());
        }
    }
    Ok(worst)
}

fn hyperbolic_residuals(_: &mut SampleRng, _: usize, _: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for e in HYPERBOLIC_GRID {
        for m in mean_grid() {
            worst = worst.max(solve_hyperbolic_detailed(m, e)?.residual.abs());
        }
    }
    Ok(worst)
}

fn parabolic_residuals(_: &mut SampleRng, _: usize, _: f64) -> Result<f64> {
    mean_grid()
        .into_iter()
        .try_fold(0.0f64, |w, m| Ok(w.max(solve_parabolic_detailed(m)?.residual.abs())))
}

fn grid_cases() -> Vec<(f64, EnergyClass)> {
    let mut cases: Vec<(f64, EnergyClass)> = ELLIPTIC_GRID.iter().map(|&e| (e, EnergyClass::Elliptic)).collect();
    cases.extend(HYPERBOLIC_GRID.iter().map(|&e| (e, EnergyClass::Hyperbolic)));
    cases.push((1.0, EnergyClass::Parabolic));
    cases
}

fn mean_roundtrip(_: &mut SampleRng, _: usize, _: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for (e, class) in grid_cases() {
        for m in mean_grid() {
            let psi = solve_mean(m, e, class)?;
            worst = worst.max((mean_from_anomaly(psi, e, class)? - m).abs());
        }
    }
    Ok(worst)
}

fn elliptic_periodicity(_: &mut SampleRng, _: usize, _: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for e in ELLIPTIC_GRID {
        for m in mean_grid() {
            let (a, b) = (solve_mean(m, e, EnergyClass::Elliptic)?, solve_mean(m + TAU, e, EnergyClass::Elliptic)?);
            worst = worst.max((b - a - TAU).abs());
        }
    }
    Ok(worst)
}

fn focal_equation(_: &mut SampleRng, _: usize, _: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for (e, class) in grid_cases() {
        let s = reference_state(class, e, 0.0)?;
        let el = elements_and_anomaly(&s)?.0;
        let range = if class == EnergyClass::Elliptic { 3.0 } else { 2.5 };
        for psi in linspace(-range, range, 200) {
            let r = radius_from_anomaly(psi, &el)?;
            let nu = true_from_anomaly(psi, el.e, class)?;
            let focal = el.latus / (1.0 + el.e * nu.cos());
            worst = worst.max((r - focal).abs() / r.max(1.0));
        }
    }
    Ok(worst)
}

fn mean_monotone(_: &mut SampleRng, _: usize, _: f64) -> Result<f64> {
    let mut least = f64::INFINITY;
    for (e, class) in grid_cases() {
        for psi in linspace(-10.0, 10.0, 1000) {
            least = least.min(mean_derivative(psi, e, class));
        }
    }
    Ok(least)
}

// ---------------------------------------------------------------- brackets

fn bracket_state(rng: &mut SampleRng, shell: Shell) -> Result<PhaseState> {
    if rng.random_bool(0.5) {
        Ok(off_shell_state(rng))
    } else {
        shell_state(rng, shell, 0.9, 3.0)
    }
}

fn bracket_identity(shell: Shell, rng: &mut SampleRng, n: usize) -> Result<f64> {
    max_over(n, || {
        let (b, pred) = poisson_bracket_k_h(&bracket_state(rng, shell)?, shell)?;
        Ok((b - pred).abs())
    })
}

fn bracket_plus(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    bracket_identity(Shell::Plus, rng, n)
}

fn bracket_minus(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    bracket_identity(Shell::Minus, rng, n)
}

fn bracket_zero(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    bracket_identity(Shell::Zero, rng, n)
}

// ----------------------------------------------------------- vector fields

fn field_proportionality(shell: Shell, rng: &mut SampleRng, n: usize) -> Result<f64> {
    max_over(n, || {
        let s = shell_state(rng, shell, 0.9, 3.0)?;
        let r = s.radius()?;
        let (kq, kp) = vector_field_k(&s, shell)?;
        let (hq, hp) = vector_field_h(&s)?;
        Ok(amax3(&kq, &(2.0 * r * hq)).max(amax3(&kp, &(2.0 * r * hp))))
    })
}

fn field_plus(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    field_proportionality(Shell::Plus, rng, n)
}

fn field_minus(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    field_proportionality(Shell::Minus, rng, n)
}

fn field_zero(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    field_proportionality(Shell::Zero, rng, n)
}

// ------------------------------------------------------------------ frames

fn frame_negative(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let f = map_s(&elliptic_state(rng, 0.99))?;
        Ok((f.r.norm() - 1.0).abs().max((f.s.norm() - 1.0).abs()).max(f.r.dot(&f.s).abs()))
    })
}

fn frame_positive(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let f = map_s_plus(&hyperbolic_state(rng, 5.0, 3.0))?;
        let res = [mink_inner(&f.r, &f.r) - 1.0, mink_inner(&f.s, &f.s) + 1.0, mink_inner(&f.r, &f.s)];
        // Relative to |r|²: the frame grows like e·cosh ψ.
        Ok(res.iter().fold(0.0f64, |m, v| m.max(v.abs())) / f.r.norm_squared().max(1.0))
    })
}

// -------------------------------------------------------------- roundtrips

fn moser_roundtrip(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let s = shell_state(rng, Shell::Plus, 0.9, 0.0)?;
        let fwd = state_distance(&s, &moser_forward(&moser_inverse(&s)?)?);
        let xy = sphere_point(rng);
        let back = moser_inverse(&moser_forward(&xy)?)?;
        Ok(fwd.max(amax4(&xy.x, &back.x)).max(amax4(&xy.y, &back.y)))
    })
}

fn belbruno_roundtrip(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let s = shell_state(rng, Shell::Minus, 5.0, 3.0)?;
        let fwd = state_distance(&s, &belbruno_forward(&belbruno_inverse(&s)?)?);
        let xy = hyperboloid_point(rng, 2.0);
        let back = belbruno_inverse(&belbruno_forward(&xy)?)?;
        Ok(fwd.max(amax4(&xy.x, &back.x)).max(amax4(&xy.y, &back.y)))
    })
}

fn euclid_roundtrip(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let s = off_shell_state(rng);
        Ok(state_distance(&s, &euclid_forward(&euclid_inverse(&s)?)?))
    })
}

fn phi_roundtrip(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let s = elliptic_state(rng, 0.9);
        let (x, y) = ls_forward(&s)?;
        Ok(state_distance(&s, &ls_inverse(&x, &y)?))
    })
}

fn phi_plus_roundtrip(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let s = hyperbolic_state(rng, 5.0, 3.0);
        let (x, y) = ls_plus_forward(&s)?;
        Ok(state_distance(&s, &ls_plus_inverse(&x, &y)?))
    })
}

// --------------------------------------------------------------- integrals

fn integral_residual(s: &PhaseState, l: &Vec3, a: &Vec3) -> Result<f64> {
    let fi = first_integrals(s)?;
    Ok(amax3(&fi.l, l).max(amax3(&fi.a, a)))
}

fn moser_integral_identities(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let xy = sphere_point(rng);
        let s = moser_forward(&xy)?;
        let (l, a, k) = moser_integrals(&xy)?;
        Ok(integral_residual(&s, &l, &a)?.max((energies(&s)?.k_plus - k).abs()))
    })
}

fn phi_integral_identities(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let xy = sphere_point(rng);
        let y = log_uniform(rng, 0.5, 2.0) * xy.y;
        let s = ls_inverse(&xy.x, &y)?;
        let (l, a, h) = ls_integrals(&xy.x, &y);
        Ok(integral_residual(&s, &l, &a)?.max((energies(&s)?.h - h).abs()))
    })
}

fn belbruno_integral_identities(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let xy = hyperboloid_point(rng, 2.0);
        let s = belbruno_forward(&xy)?;
        let (l, a, k) = belbruno_integrals(&xy)?;
        Ok(integral_residual(&s, &l, &a)?.max((energies(&s)?.k_minus - k).abs()))
    })
}

fn phi_plus_integral_identities(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let xy = hyperboloid_point(rng, 2.0);
        let y = log_uniform(rng, 0.5, 2.0) * xy.y;
        let s = ls_plus_inverse(&xy.x, &y)?;
        let (l, a, h) = ls_plus_integrals(&xy.x, &y);
        Ok(integral_residual(&s, &l, &a)?.max((energies(&s)?.h - h).abs()))
    })
}

fn euclid_integral_identities(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let pt = LinePoint::new(ball_vec3(rng, 3.0), unit_vec3(rng));
        let s = euclid_forward(&pt)?;
        Ok(integral_residual(&s, &pt.x.cross(&pt.y), &pt.y)?.max(energies(&s)?.k_zero.abs()))
    })
}

// -------------------------------------------------------------- symplectic

fn phi_symplectic(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    let map = |v: &[f64]| ls_forward(&PhaseState::from_slice(v)).map(|(x, y)| flat(&x, &y));
    max_over(n, || {
        let s = axis_state(rng, EnergyClass::Elliptic, 0.9, PI);
        symplectic_residual(map, &s.to_array(), &CanonicalForm::standard(3), &CanonicalForm::standard(4))
    })
}

fn phi_plus_symplectic(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    let map = |v: &[f64]| ls_plus_forward(&PhaseState::from_slice(v)).map(|(x, y)| flat(&x, &y));
    max_over(n, || {
        let s = axis_state(rng, EnergyClass::Hyperbolic, 5.0, 3.0);
        symplectic_residual(map, &s.to_array(), &CanonicalForm::standard(3), &CanonicalForm::minkowski())
    })
}

/// Largest `|M_h|` at which the image of `φ+` still resolves its own
/// Minkowski constraints: coordinates grow like `cosh M_h`.
pub const PHI_PLUS_WINDOW: f64 = 2.0;

fn windowed_hyperbolic_state(rng: &mut SampleRng) -> PhaseState {
    loop {
        let s = axis_state(rng, EnergyClass::Hyperbolic, 5.0, 3.0);
        let mean = elements_and_anomaly(&s).map(|(el, psi)| el.e * psi.sinh() - psi);
        if mean.is_ok_and(|m| m.abs() <= PHI_PLUS_WINDOW) {
            return s;
        }
    }
}

fn phi_plus_symplectic_window(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    let map = |v: &[f64]| ls_plus_forward(&PhaseState::from_slice(v)).map(|(x, y)| flat(&x, &y));
    max_over(n, || {
        let s = windowed_hyperbolic_state(rng);
        symplectic_residual(map, &s.to_array(), &CanonicalForm::standard(3), &CanonicalForm::minkowski())
    })
}

fn phi_plus_roundtrip_window(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let s = windowed_hyperbolic_state(rng);
        let (x, y) = ls_plus_forward(&s)?;
        Ok(state_distance(&s, &ls_plus_inverse(&x, &y)?))
    })
}

fn negative_control(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    let f = CanonicalForm::standard(3);
    let mut least = f64::INFINITY;
    for _ in 0..n {
        let s = off_shell_state(rng);
        least = least.min(symplectic_residual(non_symplectic_control, &s.to_array(), &f, &f)?);
    }
    Ok(least)
}

fn richardson_ratio(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    let map = |v: &[f64]| ls_forward(&PhaseState::from_slice(v)).map(|(x, y)| flat(&x, &y));
    max_over(n, || {
        let r = log_uniform(rng, 0.5, 2.0);
        let e = rng.random_range(0.0..=0.6);
        let psi = rng.random_range(-PI..PI);
        let s = state_from_anomaly(rng, r, e, psi, EnergyClass::Elliptic);
        Ok((step_halving_ratio(map, &s.to_array(), 1e-2)? - 4.0).abs())
    })
}

// ---------------------------------------------------- anomaly identification

fn elliptic_orbits() -> Result<Vec<(PhaseState, Vec<f64>)>> {
    [0.2, 0.6, 0.9]
        .iter()
        .map(|&e| Ok((reference_state(EnergyClass::Elliptic, e, 0.0)?, linspace(0.0, TAU, 100))))
        .collect()
}

fn hyperbolic_orbits() -> Result<Vec<(PhaseState, Vec<f64>)>> {
    [1.5, 3.0]
        .iter()
        .map(|&e| {
            Ok((
                reference_state(EnergyClass::Hyperbolic, e, -4.0)?,
                anomaly_span_times(EnergyClass::Hyperbolic, e, -4.0, 4.0, 100)?,
            ))
        })
        .collect()
}

fn elliptic_angle(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    elliptic_orbits()?
        .iter()
        .try_fold(0.0f64, |w, (s, t)| Ok(w.max(identify_elliptic(s, t, tol)?.angle)))
}

fn elliptic_rotation(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    elliptic_orbits()?
        .iter()
        .try_fold(0.0f64, |w, (s, t)| Ok(w.max(identify_elliptic(s, t, tol)?.rotation)))
}

fn hyperbolic_angle(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    hyperbolic_orbits()?
        .iter()
        .try_fold(0.0f64, |w, (s, t)| Ok(w.max(identify_hyperbolic(s, t, tol)?.angle)))
}

fn hyperbolic_rotation(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    hyperbolic_orbits()?
        .iter()
        .try_fold(0.0f64, |w, (s, t)| Ok(w.max(identify_hyperbolic(s, t, tol)?.rotation)))
}

// -------------------------------------------------------------------- flow

fn negative_uniformization(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for e in [0.0, 0.6, 0.9] {
        let s = reference_state(EnergyClass::Elliptic, e, 0.0)?;
        worst = worst.max(flow_checks(&s, Regime::Negative, &linspace(0.0, TAU, 20), tol)?.deviation);
    }
    Ok(worst)
}

fn positive_orbits() -> Result<Vec<(PhaseState, Vec<f64>)>> {
    [1.5, 2.0, 3.0]
        .iter()
        .map(|&e| {
            Ok((
                reference_state(EnergyClass::Hyperbolic, e, -4.0)?,
                anomaly_span_times(EnergyClass::Hyperbolic, e, -4.0, 4.0, 40)?,
            ))
        })
        .collect()
}

fn positive_uniformization(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    positive_orbits()?
        .iter()
        .try_fold(0.0f64, |w, (s, t)| Ok(w.max(flow_checks(s, Regime::Positive, t, tol)?.deviation)))
}

fn positive_plane(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    positive_orbits()?
        .iter()
        .try_fold(0.0f64, |w, (s, t)| Ok(w.max(flow_checks(s, Regime::Positive, t, tol)?.plane)))
}

fn parabolic_start() -> PhaseState {
    PhaseState::from_arrays([2.0, 0.0, 0.0], [0.0, 1.0, 0.0])
}

fn zero_line(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    flow_checks(&parabolic_start(), Regime::Zero, &linspace(0.0, 10.0, 20), tol).map(|d| d.deviation)
}

fn zero_y_constant(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    zero_energy_flow(&parabolic_start(), 10.0, 20, 5e-4, tol).map(|z| z.y_drift)
}

fn zero_parameter(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    zero_energy_flow(&parabolic_start(), 10.0, 20, 5e-4, tol).map(|z| z.parameter)
}

fn zero_rate(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    zero_energy_flow(&parabolic_start(), 10.0, 20, 5e-4, tol).map(|z| z.rate)
}

// ---------------------------------------------------------------- symmetry

const ELEMENT_RADIUS: f64 = 3.0;

fn gplus_invariance(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let s = shell_state(rng, Shell::Plus, 0.9, 0.0)?;
        let g = gplus_element(rng);
        Ok((energies(&act_gplus(&g, &s)?)?.k_plus - energies(&s)?.k_plus).abs())
    })
}

fn gminus_invariance(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let s = shell_state(rng, Shell::Minus, 5.0, 3.0)?;
        let g = gminus_element(rng, ELEMENT_RADIUS);
        Ok((energies(&act_gminus(&g, &s)?)?.k_minus - energies(&s)?.k_minus).abs())
    })
}

fn gzero_invariance(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let s = shell_state(rng, Shell::Zero, 0.0, 3.0)?;
        let g = gzero_element(rng, ELEMENT_RADIUS);
        Ok((energies(&act_gzero(&g, &s)?)?.k_zero - energies(&s)?.k_zero).abs())
    })
}

fn action_symplectic<G>(
    rng: &mut SampleRng,
    n: usize,
    shell: Shell,
    element: impl Fn(&mut SampleRng) -> G,
    act: impl Fn(&G, &PhaseState) -> Result<PhaseState>,
) -> Result<f64> {
    let f = CanonicalForm::standard(3);
    max_over(n, || {
        let s = shell_state(rng, shell, 0.9, 2.0)?;
        let g = element(rng);
        let map = |v: &[f64]| act(&g, &PhaseState::from_slice(v)).map(|s| s.to_array().to_vec());
        symplectic_residual(map, &s.to_array(), &f, &f)
    })
}

fn gplus_symplectic(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    action_symplectic(rng, n, Shell::Plus, gplus_element, act_gplus)
}

fn gminus_symplectic(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    action_symplectic(rng, n, Shell::Minus, |r| gminus_element(r, 1.0), act_gminus)
}

fn gzero_symplectic(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    action_symplectic(rng, n, Shell::Zero, |r| gzero_element(r, 1.0), act_gzero)
}

fn gplus_moment(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let s = shell_state(rng, Shell::Plus, 0.9, 0.0)?;
        let ab = lie_pair(rng, 1.0);
        let xy = moser_inverse(&s)?;
        let fi = first_integrals(&s)?;
        let mu = moment_gplus(&ab, &xy);
        let expected = (ab.a + ab.b).dot(&fi.l) + (ab.b - ab.a).dot(&fi.a);
        Ok((mu - expected).abs().max((mu - moment_gplus_pairing(&ab, &xy)).abs()))
    })
}

fn gminus_moment(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let s = shell_state(rng, Shell::Minus, 5.0, 2.0)?;
        let ab = lie_pair(rng, 1.0);
        let xy = belbruno_inverse(&s)?;
        let fi = first_integrals(&s)?;
        let mu = moment_gminus(&ab, &xy);
        let expected = 2.0 * ab.b.dot(&fi.a) + 2.0 * ab.a.dot(&fi.l);
        Ok((mu - expected).abs().max((mu - moment_gminus_pairing(&ab, &xy)).abs()))
    })
}

fn gzero_moment(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let s = shell_state(rng, Shell::Zero, 0.0, 3.0)?;
        let ab = lie_pair(rng, 1.0);
        let pt = euclid_inverse(&s)?;
        let fi = first_integrals(&s)?;
        let mu = moment_gzero(&ab, &pt);
        let expected = ab.a.dot(&fi.l) + ab.b.dot(&fi.a);
        Ok((mu - expected).abs().max((mu - moment_gzero_pairing(&ab, &pt)).abs()))
    })
}

const FD_GENERATOR_STEP: f64 = 1e-5;

fn central<T>(f: impl Fn(f64) -> Result<T>, h: f64) -> Result<(T, T)> {
    Ok((f(h)?, f(-h)?))
}

fn gplus_generator(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let s = shell_state(rng, Shell::Plus, 0.9, 0.0)?;
        let ab = lie_pair(rng, 1.0);
        let xy = moser_inverse(&s)?;
        let h = FD_GENERATOR_STEP;
        let (p, m) = central(|e| moser_inverse(&act_gplus(&GPlusElement::exp(&ab, e), &s)?), h)?;
        let (vx, vy) = generator_gplus(&ab, &xy);
        Ok(amax4(&((p.x - m.x) / (2.0 * h)), &vx).max(amax4(&((p.y - m.y) / (2.0 * h)), &vy)))
    })
}

fn gminus_generator(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let s = shell_state(rng, Shell::Minus, 3.0, 2.0)?;
        let ab = lie_pair(rng, 1.0);
        let xy = belbruno_inverse(&s)?;
        let h = FD_GENERATOR_STEP;
        let (p, m) = central(|e| belbruno_inverse(&act_gminus(&GMinusElement::exp(&ab, e), &s)?), h)?;
        let (vx, vy) = generator_gminus(&ab, &xy);
        Ok(amax4(&((p.x - m.x) / (2.0 * h)), &vx).max(amax4(&((p.y - m.y) / (2.0 * h)), &vy)))
    })
}

fn gzero_generator(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let s = shell_state(rng, Shell::Zero, 0.0, 2.0)?;
        let ab = lie_pair(rng, 1.0);
        let pt = euclid_inverse(&s)?;
        let h = FD_GENERATOR_STEP;
        let (p, m) = central(|e| euclid_inverse(&act_gzero(&GZeroElement::exp(&ab, e), &s)?), h)?;
        let (vx, vy) = generator_gzero(&ab, &pt);
        Ok(amax3(&((p.x - m.x) / (2.0 * h)), &vx).max(amax3(&((p.y - m.y) / (2.0 * h)), &vy)))
    })
}

fn group_laws(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    max_over(n, || {
        let mut worst = 0.0f64;
        let s = shell_state(rng, Shell::Plus, 0.9, 0.0)?;
        let (g1, g2) = (gplus_element(rng), gplus_element(rng));
        let lhs = act_gplus(&g2, &act_gplus(&g1, &s)?)?;
        worst = worst.max(state_distance(&lhs, &act_gplus(&g2.compose(&g1), &s)?));
        let s = shell_state(rng, Shell::Minus, 3.0, 2.0)?;
        let (g1, g2) = (gminus_element(rng, 1.0), gminus_element(rng, 1.0));
        let lhs = act_gminus(&g2, &act_gminus(&g1, &s)?)?;
        worst = worst.max(state_distance(&lhs, &act_gminus(&g2.compose(&g1), &s)?));
        let s = shell_state(rng, Shell::Zero, 0.0, 2.0)?;
        let (g1, g2) = (gzero_element(rng, 1.0), gzero_element(rng, 1.0));
        let lhs = act_gzero(&g2, &act_gzero(&g1, &s)?)?;
        worst = worst.max(state_distance(&lhs, &act_gzero(&g2.compose(&g1), &s)?));
        Ok(worst)
    })
}

/// Drift of a moment map along a reference orbit on the shell, evaluated
/// through the shell's regularizing map.
fn moment_conservation(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    let ab = LieAlgebraPair::new(Vec3::new(0.3, -0.7, 0.5), Vec3::new(-0.4, 0.2, 0.9));
    let drift = |values: Vec<f64>| values.iter().fold(0.0f64, |m, v| m.max((v - values[0]).abs()));
    let ell = reference_state(EnergyClass::Elliptic, 0.6, 0.0)?;
    let orbit = integrate_kepler_at(&ell, &linspace(0.0, TAU, 50), tol)?;
    let plus = orbit
        .states
        .iter()
        .map(|s| moser_inverse(s).map(|xy| moment_gplus(&ab, &xy)))
        .collect::<Result<Vec<_>>>()?;
    let hyp = reference_state(EnergyClass::Hyperbolic, 2.0, -3.0)?;
    let times = anomaly_span_times(EnergyClass::Hyperbolic, 2.0, -3.0, 3.0, 50)?;
    let orbit = integrate_kepler_at(&hyp, &times, tol)?;
    let minus = orbit
        .states
        .iter()
        .map(|s| belbruno_inverse(s).map(|xy| moment_gminus(&ab, &xy)))
        .collect::<Result<Vec<_>>>()?;
    let orbit = integrate_kepler_at(&parabolic_start(), &linspace(0.0, 10.0, 50), tol)?;
    let zero = orbit
        .states
        .iter()
        .map(|s| euclid_inverse(s).map(|pt| moment_gzero(&ab, &pt)))
        .collect::<Result<Vec<_>>>()?;
    Ok(drift(plus).max(drift(minus)).max(drift(zero)))
}

// ------------------------------------------------------------ degeneration

const DEGENERATION_ENERGIES: [f64; 3] = [1e-4, 1e-6, 1e-8];

/// Smallest observed convergence order of the blown-up `φ+` images over
/// `h ∈ {1e−4, 1e−6, 1e−8}`; `−∞` if the distances fail to decrease.
pub fn degeneration_order(state: &PhaseState) -> Result<f64> {
    let d = DEGENERATION_ENERGIES
        .iter()
        .map(|&h| degeneration_sample(state, h).map(|s| s.distance))
        .collect::<Result<Vec<_>>>()?;
    if !(d[0] > d[1] && d[1] > d[2]) {
        return Ok(f64::NEG_INFINITY);
    }
    let step = (DEGENERATION_ENERGIES[0] / DEGENERATION_ENERGIES[1]).log10();
    Ok(((d[0] / d[1]).log10() / step).min((d[1] / d[2]).log10() / step))
}

fn degeneration_convergence(rng: &mut SampleRng, n: usize, _: f64) -> Result<f64> {
    let mut least = f64::INFINITY;
    for _ in 0..n {
        least = least.min(degeneration_order(&parabolic_state(rng, 3.0))?);
    }
    Ok(least)
}

// -------------------------------------------------------------- integrator

fn circular() -> PhaseState {
    PhaseState::from_arrays([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])
}

fn circular_return(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    let s = circular();
    Ok(integrate_kepler(&s, TAU, tol, 2)?.states[1].distance(&s))
}

fn circular_energy_drift(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    integrate_kepler(&circular(), TAU, tol, 100)?.energy_drift()
}

const ORDER_TOLERANCES: [f64; 3] = [1e-8, 1e-10, 1e-12];

fn circular_errors() -> Result<[f64; 3]> {
    let s = circular();
    let mut errs = [0.0; 3];
    for (e, tol) in errs.iter_mut().zip(ORDER_TOLERANCES) {
        *e = integrate_kepler(&s, TAU, tol, 2)?.states[1].distance(&s);
    }
    Ok(errs)
}

fn order_bound(_: &mut SampleRng, _: usize, _: f64) -> Result<f64> {
    let errs = circular_errors()?;
    Ok(errs.iter().zip(ORDER_TOLERANCES).fold(0.0f64, |m, (e, t)| m.max(e / t)))
}

/// Least-squares slope of `log err` against `log tol`.
fn order_slope(_: &mut SampleRng, _: usize, _: f64) -> Result<f64> {
    let errs = circular_errors()?;
    let xs = ORDER_TOLERANCES.map(f64::log10);
    let ys = errs.map(f64::log10);
    let (mx, my) = (xs.iter().sum::<f64>() / 3.0, ys.iter().sum::<f64>() / 3.0);
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok((num / den - 1.0).abs())
}

fn propagation_cross_check(_: &mut SampleRng, _: usize, tol: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for s in [
        PhaseState::from_arrays([1.0, 0.3, -0.2], [-0.3, 0.8, 0.4]),
        PhaseState::from_arrays([1.0, 0.3, -0.2], [-0.5, 1.6, 0.4]),
        parabolic_start(),
    ] {
        let (el, plane) = orbit_plane(&s)?;
        let times = linspace(0.0, 6.0, 100);
        let orbit = integrate_kepler_at(&s, &times, tol)?;
        for (t, st) in times.iter().zip(&orbit.states) {
            worst = worst.max(anomaly_propagate(&el, &plane, *t)?.distance(st));
        }
    }
    Ok(worst)
}

/// Every check, grouped by suite in run order.
pub static CHECKS: &[CheckDef] = &[
    check("geometry", "unit-quaternion-product", "|ab| = 1 for unit a, b", 1e-14, Count::Samples, unit_quaternion_product),
    check("geometry", "great-circle-group-law", "γ(γ(r,s,α),β) = γ(r,s,α+β)", 1e-12, Count::Samples, great_circle_group_law),
    check("geometry", "hyperbolic-geodesic-constraints", "⟨r,r⟩ = 1, ⟨s,s⟩ = −1, ⟨r,s⟩ = 0 after a boost, |param| ≤ 20", 1e-12, Count::Samples, geodesic_constraints),
    check("geometry", "hyperbolic-geodesic-plane", "geodesics of H³ lie in 2-planes through 0", 1e-10, Count::Samples, geodesic_plane),
    check("kepler", "laplace-norm", "|A|² = 1 + 2H|L|²", 1e-10, Count::Samples, laplace_norm),
    check("kepler", "integral-conservation", "H, L, A constant along the flow", 1e-9, Count::Fixed(6), integral_conservation),
    check("kepler", "scaling-conjugates-flow", "ρ·Φ_t = Φ_{ρ³t}·ρ", 1e-8, Count::Capped(20), scaling_conjugation),
    check("solvers", "elliptic-residual", "ψ − e sin ψ = M", 1e-13, Count::Fixed(11_000), elliptic_residuals),
    check("solvers", "hyperbolic-residual", "e sinh ψ − ψ = M_h", 1e-13, Count::Fixed(5_000), hyperbolic_residuals),
    check("solvers", "parabolic-residual", "ψ + ψ³/3 = M_p", 1e-13, Count::Fixed(1_000), parabolic_residuals),
    check("solvers", "mean-roundtrip", "M(solve(M)) = M", 1e-12, Count::Fixed(17_000), mean_roundtrip),
    check("solvers", "elliptic-periodicity", "solve(M + 2π) = solve(M) + 2π", 1e-12, Count::Fixed(11_000), elliptic_periodicity),
    check("solvers", "focal-equation", "r(ψ) = 𝔭/(1 + e cos ν(ψ))", 1e-10, Count::Fixed(3_400), focal_equation),
    check_at_least("solvers", "mean-monotone", "dM/dψ > 0", f64::MIN_POSITIVE, Count::Fixed(17_000), mean_monotone),
    check("brackets", "bracket-k-plus", "{K+, H} = ⟨q,p⟩/|q|²·K+", 1e-12, Count::Samples, bracket_plus),
    check("brackets", "bracket-k-minus", "{K−, H} = ⟨q,p⟩/|q|²·K−", 1e-12, Count::Samples, bracket_minus),
    check("brackets", "bracket-k-zero", "{K0, H} = ⟨q,p⟩/|q|²·K0", 1e-12, Count::Samples, bracket_zero),
    check("vector-fields", "field-k-plus", "X_K+ = 2|q|·X_H on K+ = 0", 1e-12, Count::Samples, field_plus),
    check("vector-fields", "field-k-minus", "X_K− = 2|q|·X_H on K− = 0", 1e-12, Count::Samples, field_minus),
    check("vector-fields", "field-k-zero", "X_K0 = 2|q|·X_H on K0 = 0", 1e-12, Count::Samples, field_zero),
    check("frames", "frame-negative", "|r| = |s| = 1, ⟨r,s⟩ = 0 for S", 1e-12, Count::Samples, frame_negative),
    check("frames", "frame-positive", "⟨r,r⟩ = 1, ⟨s,s⟩ = −1, ⟨r,s⟩ = 0 for S+", 1e-12, Count::Samples, frame_positive),
    check("roundtrips", "moser-roundtrip", "ℳ∘ℳ⁻¹ = id, ℳ⁻¹∘ℳ = id", 1e-10, Count::Samples, moser_roundtrip),
    check("roundtrips", "belbruno-roundtrip", "ℬ∘ℬ⁻¹ = id, ℬ⁻¹∘ℬ = id", 1e-10, Count::Samples, belbruno_roundtrip),
    check("roundtrips", "euclid-roundtrip", "ℒ∘ℒ⁻¹ = id on p ≠ 0", 1e-13, Count::Samples, euclid_roundtrip),
    check("roundtrips", "phi-roundtrip", "φ⁻¹∘φ = id", 1e-10, Count::Samples, phi_roundtrip),
    check("roundtrips", "phi-plus-roundtrip", "φ+⁻¹∘φ+ = id", 1e-9, Count::Samples, phi_plus_roundtrip),
    check("roundtrips", "phi-plus-roundtrip-window", "φ+⁻¹∘φ+ = id for |M_h| ≤ 2", 1e-9, Count::Samples, phi_plus_roundtrip_window),
    check("integrals", "moser-integrals", "L∘ℳ = x̄×ȳ, A∘ℳ = x̄y₀ − x₀ȳ, K+∘ℳ = 2|y| − 2", 1e-11, Count::Samples, moser_integral_identities),
    check("integrals", "phi-integrals", "L∘φ⁻¹, A∘φ⁻¹ and H∘φ⁻¹ = −1/(2|y|²)", 1e-11, Count::Samples, phi_integral_identities),
    check("integrals", "belbruno-integrals", "L∘ℬ = −x̄×ȳ, A∘ℬ = x̄y₀ − x₀ȳ, K−∘ℬ = 2√(−⟨y,y⟩) − 2", 1e-11, Count::Samples, belbruno_integral_identities),
    check("integrals", "phi-plus-integrals", "L∘φ+⁻¹, A∘φ+⁻¹ and H∘φ+⁻¹ = 1/(2|y|²)", 1e-11, Count::Samples, phi_plus_integral_identities),
    check("integrals", "euclid-integrals", "A∘ℒ = y, L∘ℒ = x×y, K0∘ℒ = 2|y| − 2", 1e-11, Count::Samples, euclid_integral_identities),
    check("symplectic", "phi-symplectic", "φ*(Σ dxᵢ∧dyᵢ) = Σ dqᵢ∧dpᵢ", 1e-6, Count::Capped(100), phi_symplectic),
    check("symplectic", "phi-plus-symplectic", "φ+*(dx₀∧dy₀ − Σ dx̄ᵢ∧dȳᵢ) = Σ dqᵢ∧dpᵢ", 1e-6, Count::Capped(100), phi_plus_symplectic),
    check("symplectic", "phi-plus-symplectic-window", "φ+ symplectic for |M_h| ≤ 2", 1e-6, Count::Capped(100), phi_plus_symplectic_window),
    check_at_least("symplectic", "negative-control", "(q,p) ↦ (2q,p) is flagged", 0.5, Count::Capped(100), negative_control),
    check("symplectic", "fd-step-halving", "central-difference error ratio ≈ 4", 0.5, Count::Capped(20), richardson_ratio),
    check("anomaly-identification", "elliptic-angle", "θ(t) = ε(t)", 1e-8, Count::Fixed(300), elliptic_angle),
    check("anomaly-identification", "elliptic-rotation", "−s₀ = ε − M", 1e-10, Count::Fixed(300), elliptic_rotation),
    check("anomaly-identification", "hyperbolic-angle", "θ(t) = −ψ_h(t)", 1e-8, Count::Fixed(200), hyperbolic_angle),
    check("anomaly-identification", "hyperbolic-rotation", "−√(2H)⟨q,p⟩ = −(M_h + ψ_h)", 1e-10, Count::Fixed(200), hyperbolic_rotation),
    check("flow", "negative-uniformization", "(x, √(−2H)y)(t) = γ(r_p, s_p, M(t))", 1e-8, Count::Fixed(60), negative_uniformization),
    check("flow", "positive-uniformization", "(x, √(2H)y)(t) = γ_H(r_p, s_p, M_h(t))", 1e-8, Count::Fixed(120), positive_uniformization),
    check("flow", "positive-plane", "φ+ images of an orbit lie in a 2-plane", 1e-8, Count::Fixed(120), positive_plane),
    check("flow", "zero-line", "ℒ⁻¹ of a parabola is x(0) + θ·y with y constant", 1e-8, Count::Fixed(20), zero_line),
    check("flow", "zero-y-constant", "y(t) = y(0)", 1e-9, Count::Fixed(61), zero_y_constant),
    check("flow", "zero-parameter", "θ_fit(t) = √𝔭·(ψ_p(t) − ψ_p(0))", 1e-8, Count::Fixed(61), zero_parameter),
    check("flow", "zero-rate", "dθ/dt = 1/|q|", 1e-6, Count::Fixed(20), zero_rate),
    check("symmetry", "gplus-invariance", "K+∘g = K+", 1e-11, Count::Samples, gplus_invariance),
    check("symmetry", "gminus-invariance", "K−∘g = K−", 1e-11, Count::Samples, gminus_invariance),
    check("symmetry", "gzero-invariance", "K0∘g = K0", 1e-11, Count::Samples, gzero_invariance),
    check("symmetry", "gplus-symplectic", "g*ω = ω for g ∈ G+", 1e-6, Count::Capped(100), gplus_symplectic),
    check("symmetry", "gminus-symplectic", "g*ω = ω for g ∈ G−", 1e-6, Count::Capped(100), gminus_symplectic),
    check("symmetry", "gzero-symplectic", "g*ω = ω for g ∈ G0", 1e-6, Count::Capped(100), gzero_symplectic),
    check("symmetry", "gplus-moment", "μ = (a+b)·L + (b−a)·A", 1e-12, Count::Samples, gplus_moment),
    check("symmetry", "gminus-moment", "μ = 2b·A + 2a·L", 1e-12, Count::Samples, gminus_moment),
    check("symmetry", "gzero-moment", "μ = a·L + b·A", 1e-12, Count::Samples, gzero_moment),
    check("symmetry", "gplus-generator", "d/dε exp(εξ)·(x,y) = V_ξ(x,y)", 1e-7, Count::Capped(100), gplus_generator),
    check("symmetry", "gminus-generator", "d/dε exp(εξ)·(x,y) = Λ_ξ(x,y)", 1e-7, Count::Capped(100), gminus_generator),
    check("symmetry", "gzero-generator", "d/dε exp(εξ)·(x,y) = (a×x + b, a×y)", 1e-7, Count::Capped(100), gzero_generator),
    check("symmetry", "group-laws", "g₂·(g₁·z) = (g₂g₁)·z", 1e-11, Count::Samples, group_laws),
    check("symmetry", "moment-conservation", "μ constant along the regularized flow", 1e-9, Count::Fixed(150), moment_conservation),
    check_at_least("degeneration", "degeneration-order", "φ+ → limit at order ≥ 1 in h as h → 0⁺", 0.9, Count::Capped(100), degeneration_convergence),
    check("integrator", "circular-return", "Φ_{2π}(q,p) = (q,p) on the circular orbit", 1e-9, Count::Fixed(1), circular_return),
    check("integrator", "energy-drift", "H constant over one period", 1e-10, Count::Fixed(100), circular_energy_drift),
    check("integrator", "order-bound", "global error ≤ tol", 1.0, Count::Fixed(3), order_bound),
    check("integrator", "order-slope", "global error ∝ tol¹ (|slope − 1|)", 0.25, Count::Fixed(3), order_slope),
    check("integrator", "propagation-cross-check", "integrated orbit = Kepler-equation propagation", 1e-9, Count::Fixed(300), propagation_cross_check),
];

/// Runs one check with the stream of its position in [`CHECKS`].
pub fn run_check(def: &CheckDef, seed: u64, samples: usize, tol: f64) -> CheckRecord {
    let index = CHECKS.iter().position(|c| std::ptr::eq(c, def)).unwrap_or(0);
    let mut rng = SampleRng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let n = def.count.resolve(samples);
    match (def.run)(&mut rng, n, tol) {
        Ok(r) => CheckRecord::new(def.name, def.anchor, r, def.tol, def.bound, n),
        Err(e) => CheckRecord::failed(def.name, def.anchor, def.tol, def.bound, n, e.to_string()),
    }
}

pub fn find_check(name: &str) -> Option<&'static CheckDef> {
    CHECKS.iter().find(|c| c.name == name)
}

/// Runs every check of `name` (or all of them for `"all"`).
pub fn run_suite(name: &str, seed: u64, samples: usize, tol: f64) -> Result<VerificationReport> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let start = Instant::now();
    let checks = CHECKS
        .iter()
        .filter(|c| name == "all" || c.suite == name)
        .map(|c| run_check(c, seed, samples, tol))
        .collect();
    Ok(VerificationReport::new(name, seed, samples, checks, start.elapsed()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_has_checks() {
        for s in SUITES.iter().filter(|s| **s != "all") {
            assert!(CHECKS.iter().any(|c| c.suite == *s), "{s}");
        }
        let mut names: Vec<&str> = CHECKS.iter().map(|c| c.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), CHECKS.len());
    }

    #[test]
    fn unknown_suite() {
        assert_eq!(run_suite("nosuch", 1, 10, 1e-12).unwrap_err(), Error::UnknownSuite("nosuch".into()));
    }

    #[test]
    fn brackets_and_roundtrips_pass() {
        let r = run_suite("brackets", 7, 200, 1e-12).unwrap();
        assert!(r.pass, "{}", r.to_json());
        let r = run_suite("roundtrips", 7, 200, 1e-12).unwrap();
        for c in r.checks.iter().filter(|c| c.name != "phi-plus-roundtrip") {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn phi_plus_image_outgrows_double_precision() {
        // |M_h| = 3 sinh 3 − 3 ≈ 27: the image is of size cosh M_h ≈ 1e11
        // and its Minkowski norms cancel below f64 resolution.
        let s = reference_state(EnergyClass::Hyperbolic, 3.0, 3.0).unwrap();
        let (x, y) = ls_plus_forward(&s).unwrap();
        assert!(x.amax() > 1e10);
        let back = ls_plus_inverse(&x, &y).map(|b| state_distance(&s, &b));
        assert!(back.clone().map_or(true, |d| d > 1e-9), "{back:?}");
        let s = reference_state(EnergyClass::Hyperbolic, 3.0, 0.5).unwrap();
        let (x, y) = ls_plus_forward(&s).unwrap();
        assert!(state_distance(&s, &ls_plus_inverse(&x, &y).unwrap()) < 1e-12);
    }

    #[test]
    fn deterministic() {
        let a = run_suite("symmetry", 3, 20, 1e-12).unwrap().to_json();
        let b = run_suite("symmetry", 3, 20, 1e-12).unwrap().to_json();
        assert_eq!(a, b);
    }
}
