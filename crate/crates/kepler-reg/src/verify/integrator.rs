//! Dormand–Prince 5(4) with PI step control, error-per-unit-time
//! tolerance and the 4th-order continuous extension.

use crate::error::{Error, Result};
use crate::kepler::{energy, PhaseState};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

const BETA: f64 = 0.04;
const ALPHA: f64 = 0.25 - 0.75 * BETA;
const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;
const MAX_STEPS: usize = 20_000_000;

type State<const N: usize> = [f64; N];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepStats {
    pub steps: usize,
    pub rejections: usize,
    pub evaluations: usize,
}

/// One accepted step with the data of its continuous extension.
struct DenseStep<const N: usize> {
    t0: f64,
    h: f64,
    r: [State<N>; 5],
}

impl<const N: usize> DenseStep<N> {
    fn eval(&self, t: f64) -> State<N> {
        let th = (t - self.t0) / self.h;
        let th1 = 1.0 - th;
        let r = &self.r;
        std::array::from_fn(|i| r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i]))))
    }
}

fn axpy<const N: usize>(y: &State<N>, h: f64, terms: &[(f64, &State<N>)]) -> State<N> {
    std::array::from_fn(|i| y[i] + h * terms.iter().map(|(c, k)| c * k[i]).sum::<f64>())
}

/// Integrates `y' = f(t, y)` from `t0` and reports the solution at each
/// entry of `outputs` (increasing, within `[t0, t_end]`). `guard` is called
/// on every accepted state and may abort the integration.
pub fn dopri5<const N: usize>(
    f: impl Fn(f64, &State<N>) -> State<N>,
    t0: f64,
    y0: State<N>,
    t_end: f64,
    tol: f64,
    outputs: &[f64],
    guard: impl Fn(f64, &State<N>) -> Result<()>,
) -> Result<(Vec<State<N>>, StepStats)> {
    if !(t_end > t0) || !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need t_end > t0 and tol > 0 (t0 {t0}, t_end {t_end}, tol {tol})"
        )));
    }
    let mut stats = StepStats::default();
    let mut out = Vec::with_capacity(outputs.len());
    let mut next_out = 0;
    while next_out < outputs.len() && outputs[next_out] <= t0 {
        if outputs[next_out] < t0 {
            return Err(Error::InvalidArgument("output time before start".into()));
        }
        out.push(y0);
        next_out += 1;
    }

    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    stats.evaluations += 1;
    let norm = |v: &State<N>| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut h = (0.01 * norm(&y).max(1e-5) / norm(&k1).max(1e-5)).min(t_end - t0);
    let mut err_old = 1e-4f64;
    let mut rejected_last = false;

    while t < t_end {
        if stats.steps + stats.rejections > MAX_STEPS || h.abs() < 1e-14 * t.abs().max(1.0) {
            return Err(Error::StepFailure(t));
        }
        let last = t + h >= t_end;
        if last {
            h = t_end - t;
        }
        let k2 = f(t + C[1] * h, &axpy(&y, h, &[(A21, &k1)]));
        let k3 = f(t + C[2] * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(t + C[3] * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(
            t + C[4] * h,
            &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            t + h,
            &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        );
        let y1 = axpy(&y, h, &[(B[0], &k1), (B[2], &k3), (B[3], &k4), (B[4], &k5), (B[5], &k6)]);
        let k7 = f(t + h, &y1);
        stats.evaluations += 6;

        let ks = [&k1, &k2, &k3, &k4, &k5, &k6, &k7];
        let mut err = 0.0f64;
        for i in 0..N {
            let e: f64 = h * (0..7).map(|j| E[j] * ks[j][i]).sum::<f64>();
            let sc = tol * h.abs();
            err = err.max((e / sc).abs());
        }
        if !err.is_finite() {
            stats.rejections += 1;
            h *= FAC_MIN;
            rejected_last = true;
            continue;
        }

        if err <= 1.0 {
            let dense = DenseStep {
                t0: t,
                h,
                r: {
                    let r1 = y;
                    let r2: State<N> = std::array::from_fn(|i| y1[i] - y[i]);
                    let r3: State<N> = std::array::from_fn(|i| h * k1[i] - r2[i]);
                    let r4: State<N> = std::array::from_fn(|i| r2[i] - h * k7[i] - r3[i]);
                    let r5: State<N> =
                        std::array::from_fn(|i| h * (0..7).map(|j| D[j] * ks[j][i]).sum::<f64>());
                    [r1, r2, r3, r4, r5]
                },
            };
            let t_new = if last { t_end } else { t + h };
            while next_out < outputs.len() && outputs[next_out] <= t_new {
                let to = outputs[next_out];
                out.push(if to == t_new { y1 } else { dense.eval(to) });
                next_out += 1;
            }
            stats.steps += 1;
            t = t_new;
            y = y1;
            k1 = k7;
            guard(t, &y)?;
            let mut fac = SAFETY * err.max(1e-10).powf(-ALPHA) * err_old.powf(BETA);
            fac = fac.clamp(FAC_MIN, FAC_MAX);
            if rejected_last {
                fac = fac.min(1.0);
            }
            err_old = err.max(1e-4);
            rejected_last = false;
            h *= fac;
        } else {
            stats.rejections += 1;
            h *= (SAFETY * err.powf(-ALPHA)).max(FAC_MIN);
            rejected_last = true;
        }
    }
    if next_out < outputs.len() {
        return Err(Error::InvalidArgument("output time after end".into()));
    }
    Ok((out, stats))
}

/// Solution of the Kepler equations at the recorded times.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegratedOrbit {
    pub times: Vec<f64>,
    pub states: Vec<PhaseState>,
    pub tolerance: f64,
    pub stats: StepStats,
}

impl IntegratedOrbit {
    /// Largest `|H(t) − H(0)|`.
    pub fn energy_drift(&self) -> Result<f64> {
        let h0 = energy(&self.states[0])?;
        self.states
            .iter()
            .map(|s| energy(s).map(|h| (h - h0).abs()))
            .try_fold(0.0f64, |m, d| d.map(|d| m.max(d)))
    }
}

/// Collision threshold for the integrator.
pub const COLLISION_RADIUS: f64 = 1e-6;

fn kepler_rhs(_t: f64, y: &[f64; 6]) -> [f64; 6] {
    let r2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
    let k = -1.0 / (r2 * r2.sqrt());
    [y[3], y[4], y[5], k * y[0], k * y[1], k * y[2]]
}

/// Integrates the Kepler equations and samples the solution at `times`
/// (increasing, starting at or after 0) by dense output.
pub fn integrate_kepler_at(initial: &PhaseState, times: &[f64], tol: f64) -> Result<IntegratedOrbit> {
    initial.radius()?;
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidArgument("sample times must increase".into()));
    }
    let t_end = *times.last().ok_or_else(|| Error::InvalidArgument("no sample times".into()))?;
    let guard = |t: f64, y: &[f64; 6]| {
        if (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]).sqrt() < COLLISION_RADIUS {
            Err(Error::CollisionApproach(t))
        } else {
            Ok(())
        }
    };
    let (ys, stats) = if t_end == 0.0 {
        (vec![initial.to_array(); times.len()], StepStats::default())
    } else {
        dopri5(kepler_rhs, 0.0, initial.to_array(), t_end, tol, times, guard)?
    };
    Ok(IntegratedOrbit {
        times: times.to_vec(),
        states: ys.iter().map(|y| PhaseState::from_slice(y)).collect(),
        tolerance: tol,
        stats,
    })
}

/// Integrates to `t_final` and returns `n_out` equally spaced samples
/// including both ends.
pub fn integrate_kepler(initial: &PhaseState, t_final: f64, tol: f64, n_out: usize) -> Result<IntegratedOrbit> {
    if !(t_final > 0.0) {
        return Err(Error::InvalidArgument(format!("t_final {t_final} must be positive")));
    }
    integrate_kepler_at(initial, &linspace(0.0, t_final, n_out.max(2)), tol)
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n)
            .map(|k| if k == n - 1 { b } else { a + (b - a) * k as f64 / (n - 1) as f64 })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn exponential_growth() {
        let outs = linspace(0.0, 2.0, 11);
        let (ys, _) = dopri5(|_, y: &[f64; 1]| [y[0]], 0.0, [1.0], 2.0, 1e-12, &outs, |_, _| Ok(())).unwrap();
        for (t, y) in outs.iter().zip(&ys) {
            assert!((y[0] - t.exp()).abs() < 1e-10 * t.exp(), "t {t}");
        }
    }

    #[test]
    fn dense_output_between_steps() {
        // Coarse tolerance so that most outputs fall strictly inside steps.
        let outs = linspace(0.0, 10.0, 201);
        let rhs = |_: f64, y: &[f64; 2]| [y[1], -y[0]];
        let (ys, stats) = dopri5(rhs, 0.0, [0.0, 1.0], 10.0, 1e-7, &outs, |_, _| Ok(())).unwrap();
        assert!(stats.steps < 150);
        for (t, y) in outs.iter().zip(&ys) {
            assert!((y[0] - t.sin()).abs() < 1e-6, "t {t}");
            assert!((y[1] - t.cos()).abs() < 1e-6, "t {t}");
        }
    }

    #[test]
    fn circular_orbit_returns() {
        let s = PhaseState::from_arrays([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let orbit = integrate_kepler(&s, TAU, 1e-12, 5).unwrap();
        assert!(orbit.states.last().unwrap().distance(&s) < 1e-9);
        assert!(orbit.energy_drift().unwrap() < 1e-10);
    }

    #[test]
    fn collision_is_detected() {
        let s = PhaseState::from_arrays([1.0, 0.0, 0.0], [0.0; 3]);
        assert!(matches!(
            integrate_kepler(&s, 2.0, 1e-10, 3),
            Err(Error::CollisionApproach(_)) | Err(Error::StepFailure(_))
        ));
    }

    #[test]
    fn parabolic_orbit_escapes() {
        let s = PhaseState::from_arrays([2.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let orbit = integrate_kepler(&s, 50.0, 1e-12, 26).unwrap();
        let r: Vec<f64> = orbit.states.iter().map(|s| s.q.norm()).collect();
        assert!(r.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn requires_positive_final_time() {
        let s = PhaseState::from_arrays([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        assert!(integrate_kepler(&s, 0.0, 1e-12, 3).is_err());
    }
}
