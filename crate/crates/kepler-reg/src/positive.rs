//! Positive energy: Belbruno's map onto T*H³, the frame map `S+`, the boost
//! `R+` and `φ+ = R+∘S+`.
//!
//! Sign conventions, fixed by matching the integrated flow:
//!
//! * `L = x̄×ȳ♭` where `ȳ♭ = −ȳ` is the spatial part of the covector
//!   obtained by lowering the index of `y` with the Minkowski metric.
//! * `A/√(2H) = x̄y₀ − x₀ȳ` on the image of `φ+`.
//! * Along an orbit the frame of `S+` moves as
//!   `r = cosh θ·r_p + sinh θ·s_p` with `θ = −ψ_h`, and `φ+` maps the orbit
//!   to `(x, √(2H)·y) = (cosh M_h·r_p + sinh M_h·s_p, sinh M_h·r_p + cosh M_h·s_p)`.
//! * The boost parameter of `R+` is `s₀ = −√(2H)⟨q,p⟩ = −(M_h + ψ_h)`.

use crate::anomaly;
use crate::error::{Error, Result};
use crate::geometry::{
    join, mink_inner, split, HyperboloidCotangent, Vec3, Vec4, CONSTRAINT_TOL, HYPERBOLIC_ARG_CAP,
};
use crate::kepler::{energies, PhaseState};

const SHEET_GUARD: f64 = 1e-12;

/// Output of `S+`: a Minkowski-orthonormal pair and `ν = 1/√(2H)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BelbrunoFrame {
    pub r: Vec4,
    pub s: Vec4,
    pub nu: f64,
}

/// Belbruno's map from T*H³ to T*ℝ³.
///
/// This is the exact inverse of [`belbruno_inverse`]:
/// `q = (1 − x₀)ȳ + y₀x̄`, `p = x̄/(1 − x₀)`.
pub fn belbruno_forward(xy: &HyperboloidCotangent) -> Result<PhaseState> {
    let (x0, xb) = split(&xy.x);
    let (y0, yb) = split(&xy.y);
    if !(x0 > 1.0 + SHEET_GUARD) {
        return Err(Error::SheetViolation);
    }
    let d = 1.0 - x0;
    let q = d * yb + y0 * xb;
    if q.norm() == 0.0 {
        return Err(Error::OriginCollision);
    }
    Ok(PhaseState::new(q, xb / d))
}

/// Inverse of [`belbruno_forward`] on the shell `K− = 0`.
pub fn belbruno_inverse(state: &PhaseState) -> Result<HyperboloidCotangent> {
    let k = energies(state)?.k_minus;
    if !(k.abs() <= CONSTRAINT_TOL) {
        return Err(Error::OffShell(k));
    }
    let (q, p) = (&state.q, &state.p);
    let p2 = p.norm_squared();
    let qp = q.dot(p);
    let x = join((p2 + 1.0) / (p2 - 1.0), &(2.0 * p / (1.0 - p2)));
    let y = join(-qp, &(0.5 * (1.0 - p2) * q + qp * p));
    Ok(HyperboloidCotangent::new(x, y))
}

/// The frame map `S+` on `H > 0`.
pub fn map_s_plus(state: &PhaseState) -> Result<BelbrunoFrame> {
    map_s_plus_at_energy(state, energies(state)?.h)
}

/// `S+` with the energy supplied by the caller. Near `H = 0` recomputing
/// `|p|²/2 − 1/|q|` loses about `ε/(H|q|)` in relative precision; callers that
/// construct a state at a known energy pass it here.
pub fn map_s_plus_at_energy(state: &PhaseState, h: f64) -> Result<BelbrunoFrame> {
    if !(h > 0.0) {
        return Err(Error::NotPositiveEnergy(h));
    }
    let (q, p) = (&state.q, &state.p);
    let r = q.norm();
    if r == 0.0 {
        return Err(Error::OriginCollision);
    }
    let w = (2.0 * h).sqrt();
    let qp = q.dot(p);
    Ok(BelbrunoFrame {
        r: join(p.norm_squared() * r - 1.0, &(-w * r * p)),
        s: join(-w * qp, &(-(q / r - qp * p))),
        nu: 1.0 / w,
    })
}

fn check_frame(frame: &BelbrunoFrame) -> Result<()> {
    let scale = frame.r.norm_squared().max(1.0);
    let res = [
        mink_inner(&frame.r, &frame.r) - 1.0,
        mink_inner(&frame.s, &frame.s) + 1.0,
        mink_inner(&frame.r, &frame.s),
    ];
    if res.iter().any(|v| !(v.abs() <= CONSTRAINT_TOL * scale))
        || !(frame.r[0] > 0.0)
        || !(frame.nu > 0.0)
    {
        return Err(Error::ConstraintViolation(format!("Belbruno frame residuals {res:?}")));
    }
    Ok(())
}

/// The boost `R+` with parameter `s₀`.
pub fn rotation_r_plus(frame: &BelbrunoFrame) -> Result<HyperboloidCotangent> {
    check_frame(frame)?;
    let t = frame.s[0];
    if !(t.abs() <= HYPERBOLIC_ARG_CAP) {
        return Err(Error::RangeExceeded(t));
    }
    let (ch, sh) = (t.cosh(), t.sinh());
    let x = ch * frame.r - sh * frame.s;
    let y = (-sh * frame.r + ch * frame.s) * frame.nu;
    Ok(HyperboloidCotangent::new(x, y))
}

/// `φ+ = R+∘S+`.
pub fn ls_plus_forward(state: &PhaseState) -> Result<(Vec4, Vec4)> {
    let xy = rotation_r_plus(&map_s_plus(state)?)?;
    Ok((xy.x, xy.y))
}

/// [`ls_plus_forward`] with the energy supplied, see [`map_s_plus_at_energy`].
pub fn ls_plus_forward_at_energy(state: &PhaseState, h: f64) -> Result<(Vec4, Vec4)> {
    let xy = rotation_r_plus(&map_s_plus_at_energy(state, h)?)?;
    Ok((xy.x, xy.y))
}

/// Inverse of [`ls_plus_forward`].
///
/// With `ỹ = y/|y|` and `(x₀, ỹ₀) = e(cosh φ, sinh φ)` the boost parameter
/// solves `Θ = e sinh(Θ + φ)`, a hyperbolic Kepler equation in `u = Θ + φ`.
pub fn ls_plus_inverse(x: &Vec4, y: &Vec4) -> Result<PhaseState> {
    // Relative residuals: far along a branch the coordinates are huge.
    let cons = [
        (mink_inner(x, x) - 1.0) / x.norm_squared().max(1.0),
        mink_inner(x, y) / (x.norm() * y.norm()).max(f64::MIN_POSITIVE),
    ];
    if cons.iter().any(|v| !(v.abs() <= CONSTRAINT_TOL)) || !(x[0] > 0.0) {
        return Err(Error::ConstraintViolation(format!("T*H3 residuals {cons:?}")));
    }
    let yy = -mink_inner(y, y);
    if !(yy > 0.0) {
        return Err(Error::ConstraintViolation("y must be spacelike".into()));
    }
    let nu = yy.sqrt();
    let yt = y / nu;
    let e2 = x[0] * x[0] - yt[0] * yt[0];
    if !(e2 > 1.0) || !(x[0] > yt[0].abs()) {
        return Err(Error::DegenerateImage);
    }
    let e = e2.sqrt();
    let phi = (yt[0] / x[0]).atanh();
    let u = anomaly::solve_hyperbolic(-phi, e).map_err(|_| Error::NoConvergence)?;
    let theta = u - phi;
    if !(theta.abs() <= HYPERBOLIC_ARG_CAP) {
        return Err(Error::RangeExceeded(theta));
    }
    let (ch, sh) = (theta.cosh(), theta.sinh());
    let r = ch * x + sh * yt;
    let s = sh * x + ch * yt;
    let w = 1.0 / nu;
    let (r0, rb) = split(&r);
    let (s0, sb) = split(&s);
    if !(r0 - 1.0 > SHEET_GUARD) {
        return Err(Error::DegenerateImage);
    }
    let rq = (r0 - 1.0) / (w * w);
    let p = -rb / (w * rq);
    let qp = -s0 / w;
    Ok(PhaseState::new(rq * (qp * p - sb), p))
}

/// `(x̄×ȳ♭, x̄y₀ − x₀ȳ, 2√(−⟨y,y⟩) − 2)`: the pullbacks of `L`,
/// `A − (H − ½)q` and `K−` under [`belbruno_forward`].
pub fn belbruno_integrals(xy: &HyperboloidCotangent) -> Result<(Vec3, Vec3, f64)> {
    if !(xy.x[0] > 1.0 + SHEET_GUARD) {
        return Err(Error::SheetViolation);
    }
    let (x0, xb) = split(&xy.x);
    let (y0, yb) = split(&xy.y);
    let yy = -mink_inner(&xy.y, &xy.y);
    Ok((-xb.cross(&yb), xb * y0 - x0 * yb, 2.0 * yy.max(0.0).sqrt() - 2.0))
}

/// Integrals read off the image of `φ+`: `(L, A, H)` with `H = 1/(2|y|²)`,
/// `|y|² = −⟨y,y⟩`.
pub fn ls_plus_integrals(x: &Vec4, y: &Vec4) -> (Vec3, Vec3, f64) {
    let (x0, xb) = split(x);
    let (y0, yb) = split(y);
    let yy = -mink_inner(y, y);
    (-xb.cross(&yb), (xb * y0 - x0 * yb) / yy.sqrt(), 0.5 / yy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kepler::first_integrals;

    fn shell_point() -> PhaseState {
        PhaseState::from_arrays([1.0, 0.0, 0.0], [0.0, 3f64.sqrt(), 0.0])
    }

    fn x_star() -> Vec4 {
        Vec4::new(2.0, 0.0, -(3f64).sqrt(), 0.0)
    }

    fn y_star() -> Vec4 {
        Vec4::new(0.0, -1.0, 0.0, 0.0)
    }

    #[test]
    fn belbruno_worked_point() {
        let xy = belbruno_inverse(&shell_point()).unwrap();
        assert!((xy.x - x_star()).amax() < 1e-15);
        assert!((xy.y - y_star()).amax() < 1e-15);
        assert!(HyperboloidCotangent::checked(xy.x, xy.y, true).is_ok());
        let back = belbruno_forward(&xy).unwrap();
        assert!(back.distance(&shell_point()) < 1e-15);
        let k = crate::kepler::energies(&back).unwrap().k_minus;
        assert!(k.abs() < 1e-12);
    }

    #[test]
    fn belbruno_radius_identity() {
        let x = Vec4::new(1.5, 0.3, (1.25f64 - 0.09 - 0.16).sqrt(), 0.4);
        let y = Vec4::new(0.2, 0.7, -0.3, 1.1);
        // Project y onto the tangent space, then scale off the unit bundle.
        let y = 1.7 * (y - mink_inner(&x, &y) * x);
        let st = belbruno_forward(&HyperboloidCotangent::new(x, y)).unwrap();
        let yy = -mink_inner(&y, &y);
        assert!((st.q.norm() - yy.sqrt() * (x[0] - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn frame_and_boost_at_worked_point() {
        let f = map_s_plus(&shell_point()).unwrap();
        assert!((f.r - x_star()).amax() < 1e-15 && (f.s - y_star()).amax() < 1e-15);
        assert!((f.nu - 1.0).abs() < 1e-15);
        let (x, y) = ls_plus_forward(&shell_point()).unwrap();
        assert!((x - x_star()).amax() < 1e-15 && (y - y_star()).amax() < 1e-15);
        let (l, a, h) = ls_plus_integrals(&x, &y);
        assert!((l - Vec3::new(0.0, 0.0, 3f64.sqrt())).amax() < 1e-15);
        assert!((a - Vec3::new(2.0, 0.0, 0.0)).amax() < 1e-15);
        assert!((h - 0.5).abs() < 1e-15);
    }

    #[test]
    fn inverse_examples() {
        let s = ls_plus_inverse(&x_star(), &y_star()).unwrap();
        assert!(s.distance(&shell_point()) < 1e-14);
        let s = ls_plus_inverse(&x_star(), &(2.0 * y_star())).unwrap();
        assert!((crate::kepler::energy(&s).unwrap() - 0.125).abs() < 1e-14);
    }

    #[test]
    fn eccentric_roundtrip_and_integrals() {
        let s = PhaseState::from_arrays([0.9, 0.3, -0.2], [-0.9, 1.6, 0.25]);
        let (x, y) = ls_plus_forward(&s).unwrap();
        let back = ls_plus_inverse(&x, &y).unwrap();
        assert!(back.distance(&s) < 1e-12);
        let fi = first_integrals(&s).unwrap();
        let (l, a, h) = ls_plus_integrals(&x, &y);
        assert!((l - fi.l).amax() < 1e-13 && (a - fi.a).amax() < 1e-13);
        assert!((h - fi.h).abs() < 1e-13);
    }

    #[test]
    fn belbruno_integrals_worked_point() {
        let xy = HyperboloidCotangent::new(x_star(), y_star());
        let (l, a, k) = belbruno_integrals(&xy).unwrap();
        let fi = first_integrals(&belbruno_forward(&xy).unwrap()).unwrap();
        assert!((a - Vec3::new(2.0, 0.0, 0.0)).amax() < 1e-15);
        assert!((l - fi.l).amax() < 1e-15 && k.abs() < 1e-15);
        let lower = HyperboloidCotangent::new(-x_star(), y_star());
        assert_eq!(belbruno_integrals(&lower), Err(Error::SheetViolation));
    }
}
