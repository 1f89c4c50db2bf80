//! Checks against independent computations: bisection for the Kepler
//! equations, finite-difference brackets, and the integrated flow.

use std::f64::consts::TAU;

use kepler_reg::anomaly::{solve_elliptic, solve_hyperbolic, solve_parabolic};
use kepler_reg::kepler::{energies, poisson_bracket_k_h, PhaseState, Shell};
use kepler_reg::negative::ls_forward;
use kepler_reg::positive::ls_plus_forward;
use kepler_reg::verify::integrator::{integrate_kepler_at, linspace};
use kepler_reg::verify::propagate::{anomaly_propagate, orbit_plane};
use kepler_reg::zero::euclid_inverse;

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

#[test]
fn solvers_match_bisection() {
    for e in [0.0, 0.3, 0.7, 0.95, 0.999] {
        for m in linspace(-9.0, 9.0, 37) {
            let b = bisect(|x| x - e * x.sin() - m, m - 1.0, m + 1.0);
            assert!((solve_elliptic(m, e).unwrap() - b).abs() < 1e-12, "e {e} M {m}");
        }
    }
    for e in [1.01, 1.5, 4.0, 20.0] {
        for m in linspace(-30.0, 30.0, 41) {
            let b = bisect(|x| e * x.sinh() - x - m, -10.0, 10.0);
            assert!((solve_hyperbolic(m, e).unwrap() - b).abs() < 1e-12 * b.abs().max(1.0), "e {e} M {m}");
        }
    }
    for m in linspace(-100.0, 100.0, 41) {
        let b = bisect(|x| x + x.powi(3) / 3.0 - m, -10.0, 10.0);
        assert!((solve_parabolic(m).unwrap() - b).abs() < 1e-12 * b.abs().max(1.0), "M {m}");
    }
}

fn fd_bracket(s: &PhaseState, shell: Shell) -> f64 {
    let h = 1e-6;
    let v = s.to_array();
    let grad = |f: &dyn Fn(&PhaseState) -> f64| {
        let mut g = [0.0; 6];
        for (i, gi) in g.iter_mut().enumerate() {
            let (mut p, mut m) = (v, v);
            p[i] += h;
            m[i] -= h;
            *gi = (f(&PhaseState::from_slice(&p)) - f(&PhaseState::from_slice(&m))) / (2.0 * h);
        }
        g
    };
    let gk = grad(&|s| energies(s).unwrap().k(shell));
    let gh = grad(&|s| energies(s).unwrap().h);
    (0..3).map(|i| gk[i] * gh[i + 3] - gk[i + 3] * gh[i]).sum()
}

#[test]
fn brackets_match_finite_differences() {
    let states = [
        PhaseState::from_arrays([1.0, 0.2, -0.3], [0.1, 0.9, 0.4]),
        PhaseState::from_arrays([-0.4, 1.7, 0.6], [0.8, -0.2, 0.5]),
        PhaseState::from_arrays([2.0, 0.0, 0.5], [0.0, 1.3, -0.2]),
    ];
    for s in &states {
        for shell in [Shell::Plus, Shell::Minus, Shell::Zero] {
            let (closed, _) = poisson_bracket_k_h(s, shell).unwrap();
            assert!((closed - fd_bracket(s, shell)).abs() < 1e-7, "{shell:?}");
        }
    }
}

#[test]
fn closed_form_propagation_matches_integration() {
    for s in [
        PhaseState::from_arrays([0.8, -0.1, 0.3], [0.2, 1.1, -0.1]),
        PhaseState::from_arrays([0.8, -0.1, 0.3], [0.2, 1.6, -0.1]),
        PhaseState::from_arrays([2.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
    ] {
        let times = linspace(0.0, TAU, 40);
        let orbit = integrate_kepler_at(&s, &times, 1e-12).unwrap();
        let (el, plane) = orbit_plane(&s).unwrap();
        for (t, st) in times.iter().zip(&orbit.states) {
            assert!(anomaly_propagate(&el, &plane, *t).unwrap().distance(st) < 1e-9);
        }
    }
}

#[test]
fn worked_points() {
    let (x, y) = ls_forward(&PhaseState::from_arrays([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])).unwrap();
    assert!((x - kepler_reg::geometry::Vec4::new(0.0, 0.0, 1.0, 0.0)).amax() < 1e-15);
    assert!((y - kepler_reg::geometry::Vec4::new(0.0, -1.0, 0.0, 0.0)).amax() < 1e-15);
    let (x, y) = ls_plus_forward(&PhaseState::from_arrays([1.0, 0.0, 0.0], [0.0, 3f64.sqrt(), 0.0])).unwrap();
    assert!((x - kepler_reg::geometry::Vec4::new(2.0, 0.0, -(3f64.sqrt()), 0.0)).amax() < 1e-12);
    assert!((y - kepler_reg::geometry::Vec4::new(0.0, -1.0, 0.0, 0.0)).amax() < 1e-12);
    let pt = euclid_inverse(&PhaseState::from_arrays([2.0, 0.0, 0.0], [0.0, 1.0, 0.0])).unwrap();
    assert_eq!((pt.x.y, pt.y.x), (-2.0, 1.0));
}
