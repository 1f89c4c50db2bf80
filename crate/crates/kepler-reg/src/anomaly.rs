//! Kepler equations in the three energy regimes and the conic
//! parametrizations.
//!
//! Normal forms: `M = ψ − e sin ψ`, `M_h = e sinh ψ_h − ψ_h`,
//! `M_p = ψ_p + ψ_p³/3`. Positions are focus-centered with periapsis on the
//! positive x-axis and prograde motion.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::geometry::HYPERBOLIC_ARG_CAP;
use crate::kepler::{EnergyClass, OrbitElements};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnomalySet {
    pub class: EnergyClass,
    /// True anomaly.
    pub nu: f64,
    /// Eccentric, hyperbolic or parabolic anomaly.
    pub psi: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnomalySolution {
    pub psi: f64,
    /// Residual of the normal form at `psi`.
    pub residual: f64,
    pub iterations: u32,
}

const NEWTON_MAX: u32 = 50;

fn check_elliptic(e: f64) -> Result<()> {
    if (0.0..1.0).contains(&e) {
        Ok(())
    } else {
        Err(Error::EccentricityOutOfRange(e))
    }
}

fn check_hyperbolic(e: f64) -> Result<()> {
    if e > 1.0 && e.is_finite() {
        Ok(())
    } else {
        Err(Error::EccentricityOutOfRange(e))
    }
}

/// Safeguarded Newton on an increasing `f` with a known bracket, falling
/// back to bisection once the Newton budget is spent.
fn newton_bracketed(
    f: impl Fn(f64) -> (f64, f64),
    mut lo: f64,
    mut hi: f64,
    start: f64,
    tol: f64,
) -> (f64, u32) {
    let mut x = start.clamp(lo, hi);
    let mut it = 0;
    loop {
        let (fx, dfx) = f(x);
        if fx.abs() <= tol {
            return (x, it);
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        if hi - lo <= f64::EPSILON * x.abs().max(1.0) {
            return (x, it);
        }
        it += 1;
        let newton = x - fx / dfx;
        x = if it <= NEWTON_MAX && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if it > NEWTON_MAX + 200 {
            return (x, it);
        }
    }
}

pub fn solve_elliptic_detailed(mean: f64, e: f64) -> Result<AnomalySolution> {
    check_elliptic(e)?;
    if !mean.is_finite() {
        return Err(Error::InvalidArgument(format!("mean anomaly {mean}")));
    }
    let k = (mean / TAU).round();
    let m = mean - k * TAU;
    let start = if e <= 0.8 || m == 0.0 { m } else { PI.copysign(m) };
    let tol = 1e-15 * m.abs().max(1.0);
    let (psi, iterations) = newton_bracketed(
        |x| (x - e * x.sin() - m, 1.0 - e * x.cos()),
        m - e,
        m + e,
        start,
        tol,
    );
    let psi = psi + k * TAU;
    Ok(AnomalySolution {
        psi,
        residual: psi - e * psi.sin() - mean,
        iterations,
    })
}

pub fn solve_hyperbolic_detailed(mean: f64, e: f64) -> Result<AnomalySolution> {
    check_hyperbolic(e)?;
    if !mean.is_finite() {
        return Err(Error::InvalidArgument(format!("mean anomaly {mean}")));
    }
    let m = mean.abs();
    let start = (m / e).asinh();
    // e sinh ψ − ψ ≥ (e − 1) ψ bounds the root by m/(e − 1); asinh(m/e)
    // bounds it from below.
    let hi = (m / (e - 1.0)).min((2.0 * (m + HYPERBOLIC_ARG_CAP) / e).asinh() + 1.0);
    if start > HYPERBOLIC_ARG_CAP {
        return Err(Error::RangeExceeded(start));
    }
    let tol = 1e-15 * m.max(1.0);
    let (psi, iterations) = newton_bracketed(
        |x| (e * x.sinh() - x - m, e * x.cosh() - 1.0),
        start,
        hi.max(start),
        start,
        tol,
    );
    let psi = psi.copysign(mean);
    Ok(AnomalySolution {
        psi,
        residual: e * psi.sinh() - psi - mean,
        iterations,
    })
}

pub fn solve_parabolic_detailed(mean: f64) -> Result<AnomalySolution> {
    if !mean.is_finite() {
        return Err(Error::InvalidArgument(format!("mean anomaly {mean}")));
    }
    let m = mean.abs();
    // Real root of ψ³ + 3ψ − 3m = 0.
    let u = (1.5 * m + (2.25 * m * m + 1.0).sqrt()).cbrt();
    let mut psi = u - 1.0 / u;
    psi -= (psi + psi.powi(3) / 3.0 - m) / (1.0 + psi * psi);
    let psi = psi.copysign(mean);
    Ok(AnomalySolution {
        psi,
        residual: psi + psi.powi(3) / 3.0 - mean,
        iterations: 1,
    })
}

/// Solves `ψ − e sin ψ = M` for `0 ≤ e < 1`.
pub fn solve_elliptic(mean: f64, e: f64) -> Result<f64> {
    solve_elliptic_detailed(mean, e).map(|s| s.psi)
}

/// Solves `e sinh ψ − ψ = M_h` for `e > 1`.
pub fn solve_hyperbolic(mean: f64, e: f64) -> Result<f64> {
    solve_hyperbolic_detailed(mean, e).map(|s| s.psi)
}

/// Solves `ψ + ψ³/3 = M_p`.
pub fn solve_parabolic(mean: f64) -> Result<f64> {
    solve_parabolic_detailed(mean).map(|s| s.psi)
}

/// Inverts the normal form of `class`.
pub fn solve_mean(mean: f64, e: f64, class: EnergyClass) -> Result<f64> {
    match class {
        EnergyClass::Elliptic => solve_elliptic(mean, e),
        EnergyClass::Hyperbolic => solve_hyperbolic(mean, e),
        EnergyClass::Parabolic => solve_parabolic(mean),
    }
}

/// The normal form of `class`; `e` is unused for parabolas.
pub fn mean_from_anomaly(psi: f64, e: f64, class: EnergyClass) -> Result<f64> {
    match class {
        EnergyClass::Elliptic => {
            check_elliptic(e)?;
            Ok(psi - e * psi.sin())
        }
        EnergyClass::Hyperbolic => {
            check_hyperbolic(e)?;
            Ok(e * psi.sinh() - psi)
        }
        EnergyClass::Parabolic => Ok(psi + psi.powi(3) / 3.0),
    }
}

/// Derivative of the normal form with respect to the anomaly.
pub fn mean_derivative(psi: f64, e: f64, class: EnergyClass) -> f64 {
    match class {
        EnergyClass::Elliptic => 1.0 - e * psi.cos(),
        EnergyClass::Hyperbolic => e * psi.cosh() - 1.0,
        EnergyClass::Parabolic => 1.0 + psi * psi,
    }
}

/// True anomaly in `(−π, π]` from the half-angle relations.
pub fn true_from_anomaly(psi: f64, e: f64, class: EnergyClass) -> Result<f64> {
    match class {
        EnergyClass::Elliptic => {
            check_elliptic(e)?;
            let w = psi - TAU * (psi / TAU).round();
            let (s, c) = (0.5 * w).sin_cos();
            Ok(2.0 * ((1.0 + e).sqrt() * s).atan2((1.0 - e).sqrt() * c))
        }
        EnergyClass::Hyperbolic => {
            check_hyperbolic(e)?;
            if psi.is_infinite() {
                return Err(Error::ApoapsisBranch);
            }
            Ok(2.0 * (((e + 1.0) / (e - 1.0)).sqrt() * (0.5 * psi).tanh()).atan())
        }
        EnergyClass::Parabolic => {
            if psi.is_infinite() {
                return Err(Error::ApoapsisBranch);
            }
            Ok(2.0 * psi.atan())
        }
    }
}

fn semi_axis(el: &OrbitElements) -> Result<f64> {
    el.a
        .ok_or_else(|| Error::InvalidArgument("elements carry no semi-major axis".into()))
}

pub fn radius_from_anomaly(psi: f64, el: &OrbitElements) -> Result<f64> {
    match el.class {
        EnergyClass::Elliptic => Ok(semi_axis(el)? * (1.0 - el.e * psi.cos())),
        EnergyClass::Hyperbolic => {
            let f = el.e * psi.cosh() - 1.0;
            if !(f > 0.0) {
                return Err(Error::HyperbolicDomain);
            }
            Ok(semi_axis(el)? * f)
        }
        EnergyClass::Parabolic => Ok(0.5 * el.latus * (1.0 + psi * psi)),
    }
}

/// Focus-centered position in the orbital plane.
pub fn position_from_anomaly(psi: f64, el: &OrbitElements) -> Result<(f64, f64)> {
    let e = el.e;
    match el.class {
        EnergyClass::Elliptic => {
            let a = semi_axis(el)?;
            Ok((a * (psi.cos() - e), a * (1.0 - e * e).sqrt() * psi.sin()))
        }
        EnergyClass::Hyperbolic => {
            let a = semi_axis(el)?;
            if psi.abs() > HYPERBOLIC_ARG_CAP {
                return Err(Error::RangeExceeded(psi));
            }
            Ok((a * (e - psi.cosh()), a * (e * e - 1.0).sqrt() * psi.sinh()))
        }
        EnergyClass::Parabolic => {
            let l = el.latus;
            Ok((0.5 * l * (1.0 - psi * psi), l * psi))
        }
    }
}

/// In-plane velocity matching [`position_from_anomaly`].
pub fn velocity_from_anomaly(psi: f64, el: &OrbitElements) -> Result<(f64, f64)> {
    let e = el.e;
    let rate = el.mean_motion / mean_derivative(psi, e, el.class);
    match el.class {
        EnergyClass::Elliptic => {
            let a = semi_axis(el)?;
            Ok((-a * psi.sin() * rate, a * (1.0 - e * e).sqrt() * psi.cos() * rate))
        }
        EnergyClass::Hyperbolic => {
            let a = semi_axis(el)?;
            Ok((-a * psi.sinh() * rate, a * (e * e - 1.0).sqrt() * psi.cosh() * rate))
        }
        EnergyClass::Parabolic => Ok((-el.latus * psi * rate, el.latus * rate)),
    }
}

/// All anomalies at time `t` for the given elements.
pub fn anomalies_at(el: &OrbitElements, t: f64) -> Result<AnomalySet> {
    let mean = el.mean_motion * (t - el.t_p);
    let psi = solve_mean(mean, el.e, el.class)?;
    Ok(AnomalySet {
        class: el.class,
        nu: true_from_anomaly(psi, el.e, el.class)?,
        psi,
        mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn elements(class: EnergyClass, a: Option<f64>, e: f64, latus: f64) -> OrbitElements {
        OrbitElements {
            class,
            a,
            e,
            latus,
            t_p: 0.0,
            mean_motion: 1.0,
        }
    }

    #[test]
    fn elliptic_examples() {
        assert_eq!(solve_elliptic(1.3, 0.0).unwrap(), 1.3);
        assert_eq!(solve_elliptic(0.0, 0.7).unwrap(), 0.0);
        let oracle = bisect(|x| x - 0.5 * x.sin() - 1.0, 0.0, PI);
        let psi = solve_elliptic(1.0, 0.5).unwrap();
        assert!((psi - oracle).abs() < 1e-12);
        assert!((psi - 1.4987).abs() < 1e-4);
        assert_eq!(solve_elliptic(1.0, 1.5), Err(Error::EccentricityOutOfRange(1.5)));
        assert!((mean_from_anomaly(psi, 0.5, EnergyClass::Elliptic).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn elliptic_branch_and_period() {
        for &m in &[-9.0, -3.0, 0.2, 3.1, 7.5] {
            let psi = solve_elliptic(m, 0.99).unwrap();
            assert!((psi - m).abs() <= 0.99 + 1e-15);
            let shifted = solve_elliptic(m + TAU, 0.99).unwrap();
            assert!((shifted - psi - TAU).abs() < 1e-12);
        }
    }

    #[test]
    fn hyperbolic_examples() {
        assert_eq!(solve_hyperbolic(0.0, 3.0).unwrap(), 0.0);
        let oracle = bisect(|x| 2.0 * x.sinh() - x - 1.0, 0.0, 1.0);
        let psi = solve_hyperbolic(1.0, 2.0).unwrap();
        assert!((psi - oracle).abs() < 1e-12);
        assert!((psi - 0.814_096_796_302_133).abs() < 1e-12);
        assert_eq!(solve_hyperbolic(-1.0, 2.0).unwrap(), -psi);
        assert!(solve_hyperbolic(1.0, 1.0).is_err());
        assert_eq!(mean_from_anomaly(0.0, 2.0, EnergyClass::Hyperbolic).unwrap(), 0.0);
    }

    #[test]
    fn parabolic_examples() {
        assert_eq!(solve_parabolic(0.0).unwrap(), 0.0);
        assert!((solve_parabolic(4.0 / 3.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((solve_parabolic(-4.0 / 3.0).unwrap() + 1.0).abs() < 1e-15);
        assert_eq!(mean_from_anomaly(1.0, 1.0, EnergyClass::Parabolic).unwrap(), 4.0 / 3.0);
        let big = solve_parabolic_detailed(1e6).unwrap();
        assert!(big.residual.abs() < 1e-13 * 1e6);
    }

    #[test]
    fn true_anomaly() {
        assert_eq!(true_from_anomaly(0.0, 0.3, EnergyClass::Elliptic).unwrap(), 0.0);
        assert!((true_from_anomaly(1.0, 1.0, EnergyClass::Parabolic).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((true_from_anomaly(0.8, 0.0, EnergyClass::Elliptic).unwrap() - 0.8).abs() < 1e-15);
        assert_eq!(true_from_anomaly(0.0, 2.0, EnergyClass::Hyperbolic).unwrap(), 0.0);
        assert_eq!(
            true_from_anomaly(f64::INFINITY, 1.0, EnergyClass::Parabolic),
            Err(Error::ApoapsisBranch)
        );
    }

    #[test]
    fn radii_and_positions() {
        let circ = elements(EnergyClass::Elliptic, Some(1.0), 0.0, 1.0);
        for k in 0..8 {
            assert!((radius_from_anomaly(k as f64, &circ).unwrap() - 1.0).abs() < 1e-15);
        }
        let par = elements(EnergyClass::Parabolic, None, 1.0, 4.0);
        assert_eq!(radius_from_anomaly(1.0, &par).unwrap(), 4.0);
        assert_eq!(position_from_anomaly(1.0, &par).unwrap(), (0.0, 4.0));
        let hyp = elements(EnergyClass::Hyperbolic, Some(1.0), 2.0, 3.0);
        assert_eq!(radius_from_anomaly(0.0, &hyp).unwrap(), 1.0);
        assert_eq!(position_from_anomaly(0.0, &hyp).unwrap(), (1.0, 0.0));
        let ell = elements(EnergyClass::Elliptic, Some(2.0), 0.5, 1.5);
        assert_eq!(position_from_anomaly(0.0, &ell).unwrap(), (1.0, 0.0));
    }

    #[test]
    fn focal_equation_agrees() {
        let cases = [
            elements(EnergyClass::Elliptic, Some(2.0), 0.7, 2.0 * (1.0 - 0.49)),
            elements(EnergyClass::Hyperbolic, Some(0.5), 3.0, 0.5 * 8.0),
            elements(EnergyClass::Parabolic, None, 1.0, 3.0),
        ];
        for el in &cases {
            for k in -10..=10 {
                let psi = 0.28 * k as f64;
                let nu = true_from_anomaly(psi, el.e, el.class).unwrap();
                let focal = el.latus / (1.0 + el.e * nu.cos());
                let r = radius_from_anomaly(psi, el).unwrap();
                assert!((focal - r).abs() < 1e-10 * r.max(1.0));
                let (x, y) = position_from_anomaly(psi, el).unwrap();
                assert!((x.hypot(y) - r).abs() < 1e-12 * r.max(1.0));
            }
        }
    }

    #[test]
    fn velocity_is_derivative_of_position() {
        let cases = [
            elements(EnergyClass::Elliptic, Some(2.0), 0.7, 2.0 * (1.0 - 0.49)),
            elements(EnergyClass::Hyperbolic, Some(0.5), 3.0, 4.0),
            elements(EnergyClass::Parabolic, None, 1.0, 3.0),
        ];
        let h = 1e-5;
        for el in &cases {
            let psi0 = 0.4;
            let m0 = mean_from_anomaly(psi0, el.e, el.class).unwrap();
            let pos = |dm: f64| {
                let psi = solve_mean(m0 + dm, el.e, el.class).unwrap();
                position_from_anomaly(psi, el).unwrap()
            };
            let (a, b) = (pos(h), pos(-h));
            let fd = ((a.0 - b.0) / (2.0 * h), (a.1 - b.1) / (2.0 * h));
            let v = velocity_from_anomaly(psi0, el).unwrap();
            assert!((fd.0 - v.0).abs() < 1e-8 && (fd.1 - v.1).abs() < 1e-8);
        }
    }
}
