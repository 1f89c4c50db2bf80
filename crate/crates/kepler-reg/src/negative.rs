//! Negative energy: the Moser map onto T*S³, the energy-uniform frame map
//! `S`, the rotation `R` and their composite `φ = R∘S`.
//!
//! Along a Kepler orbit with periapsis frame `(r_p, s_p)` the frame of `S`
//! satisfies `r = cos ε·r_p + sin ε·s_p` with `ε` the eccentric anomaly, and
//! `φ` maps the orbit to `x = cos M·r_p + sin M·s_p`,
//! `√(−2H)·y = −sin M·r_p + cos M·s_p`.

use crate::anomaly;
use crate::error::{Error, Result};
use crate::geometry::{join, split, SphereCotangent, Vec3, Vec4, CONSTRAINT_TOL};
use crate::kepler::{energies, PhaseState};

const POLE_GUARD: f64 = 1e-12;

/// Output of `S`: a unit pair `(r, s)` and `√(−2H)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoserFrame {
    pub r: Vec4,
    pub s: Vec4,
    pub nu_inv: f64,
}

/// Moser's map from T*S³ minus the north pole to T*ℝ³.
pub fn moser_forward(xy: &SphereCotangent) -> Result<PhaseState> {
    let (x0, xb) = split(&xy.x);
    let (y0, yb) = split(&xy.y);
    let d = 1.0 - x0;
    if d.abs() <= POLE_GUARD {
        return Err(Error::NorthPole);
    }
    let q = -d * yb - y0 * xb;
    if q.norm() == 0.0 {
        return Err(Error::OriginCollision);
    }
    Ok(PhaseState::new(q, xb / d))
}

/// Inverse of [`moser_forward`] on the shell `K+ = 0`.
pub fn moser_inverse(state: &PhaseState) -> Result<SphereCotangent> {
    let k = energies(state)?.k_plus;
    if !(k.abs() <= CONSTRAINT_TOL) {
        return Err(Error::OffShell(k));
    }
    let (q, p) = (&state.q, &state.p);
    let p2 = p.norm_squared();
    let qp = q.dot(p);
    let x = join((p2 - 1.0) / (p2 + 1.0), &(2.0 * p / (p2 + 1.0)));
    let y = join(-qp, &(-0.5 * (p2 + 1.0) * q + qp * p));
    Ok(SphereCotangent::new(x, y))
}

/// The frame map `S` on `H < 0`.
pub fn map_s(state: &PhaseState) -> Result<MoserFrame> {
    let en = energies(state)?;
    if !(en.h < 0.0) {
        return Err(Error::NotNegativeEnergy(en.h));
    }
    let (q, p) = (&state.q, &state.p);
    let r = q.norm();
    let w = (-2.0 * en.h).sqrt();
    let qp = q.dot(p);
    Ok(MoserFrame {
        r: join(p.norm_squared() * r - 1.0, &(w * r * p)),
        s: join(-w * qp, &(-(q / r - qp * p))),
        nu_inv: w,
    })
}

fn check_frame(frame: &MoserFrame) -> Result<()> {
    let res = [
        frame.r.norm_squared() - 1.0,
        frame.s.norm_squared() - 1.0,
        frame.r.dot(&frame.s),
    ];
    if res.iter().any(|v| !(v.abs() <= CONSTRAINT_TOL)) || !(frame.nu_inv > 0.0) {
        return Err(Error::ConstraintViolation(format!("Moser frame residuals {res:?}")));
    }
    Ok(())
}

/// The rotation `R` by `Θ = −s₀`.
pub fn rotation_r(frame: &MoserFrame) -> Result<SphereCotangent> {
    check_frame(frame)?;
    let (sn, cs) = (-frame.s[0]).sin_cos();
    let x = cs * frame.r - sn * frame.s;
    let y = (sn * frame.r + cs * frame.s) / frame.nu_inv;
    Ok(SphereCotangent::new(x, y))
}

/// `φ = R∘S`.
pub fn ls_forward(state: &PhaseState) -> Result<(Vec4, Vec4)> {
    let xy = rotation_r(&map_s(state)?)?;
    Ok((xy.x, xy.y))
}

/// Inverse of [`ls_forward`].
///
/// Writing `ỹ = y/|y|` and `(x₀, −ỹ₀) = e(cos φ, sin φ)`, the rotation angle
/// solves `Θ = e sin(Θ + φ)`, a Kepler equation in `u = Θ + φ`.
pub fn ls_inverse(x: &Vec4, y: &Vec4) -> Result<PhaseState> {
    let xy = SphereCotangent::checked(*x, *y, false)?;
    let ny = xy.y.norm();
    if !(ny > 0.0) || !ny.is_finite() {
        return Err(Error::ConstraintViolation("y must be nonzero".into()));
    }
    let nu = 1.0 / ny;
    let yt = xy.y * nu;
    let e = xy.x[0].hypot(yt[0]);
    if !(e < 1.0) {
        return Err(Error::DegenerateImage);
    }
    let phi = (-yt[0]).atan2(xy.x[0]);
    let theta = anomaly::solve_elliptic(phi, e)? - phi;
    let (sn, cs) = theta.sin_cos();
    let r = cs * xy.x + sn * yt;
    let s = -sn * xy.x + cs * yt;
    frame_inverse(&r, &s, nu)
}

/// Inverts `S` given the frame and `√(−2H)`.
fn frame_inverse(r: &Vec4, s: &Vec4, nu: f64) -> Result<PhaseState> {
    let (r0, rb) = split(r);
    let (s0, sb) = split(s);
    let one_minus = 1.0 - r0;
    if !(one_minus > POLE_GUARD) {
        return Err(Error::DegenerateImage);
    }
    let rq = one_minus / (nu * nu);
    let p = rb / (nu * rq);
    let qp = -s0 / nu;
    Ok(PhaseState::new(rq * (qp * p - sb), p))
}

/// `(x̄×ȳ, x̄y₀ − x₀ȳ, 2|y| − 2)`: the pullbacks of `L`, `A − (H+½)q` and
/// `K+` under [`moser_forward`].
pub fn moser_integrals(xy: &SphereCotangent) -> Result<(Vec3, Vec3, f64)> {
    if (1.0 - xy.x[0]).abs() <= POLE_GUARD {
        return Err(Error::NorthPole);
    }
    let (x0, xb) = split(&xy.x);
    let (y0, yb) = split(&xy.y);
    Ok((xb.cross(&yb), xb * y0 - x0 * yb, 2.0 * xy.y.norm() - 2.0))
}

/// Integrals read off the image of `φ`: `(L, A, H)` with
/// `L = x̄×ȳ`, `A = √(−2H)(x̄y₀ − x₀ȳ)`, `H = −1/(2|y|²)`.
pub fn ls_integrals(x: &Vec4, y: &Vec4) -> (Vec3, Vec3, f64) {
    let (x0, xb) = split(x);
    let (y0, yb) = split(y);
    let y2 = y.norm_squared();
    let h = -0.5 / y2;
    (xb.cross(&yb), (xb * y0 - x0 * yb) / y2.sqrt(), h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kepler::first_integrals;

    fn v4(a: f64, b: f64, c: f64, d: f64) -> Vec4 {
        Vec4::new(a, b, c, d)
    }

    fn circular() -> PhaseState {
        PhaseState::from_arrays([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])
    }

    #[test]
    fn moser_forward_examples() {
        let s = moser_forward(&SphereCotangent::new(v4(-1.0, 0.0, 0.0, 0.0), v4(0.0, 1.0, 0.0, 0.0))).unwrap();
        assert_eq!(s, PhaseState::from_arrays([-2.0, 0.0, 0.0], [0.0; 3]));
        let s = moser_forward(&SphereCotangent::new(v4(-1.0, 0.0, 0.0, 0.0), v4(0.0, -1.0, 0.0, 0.0))).unwrap();
        assert_eq!(s, PhaseState::from_arrays([2.0, 0.0, 0.0], [0.0; 3]));
        let pole = SphereCotangent::new(v4(1.0, 0.0, 0.0, 0.0), v4(0.0, 1.0, 0.0, 0.0));
        assert_eq!(moser_forward(&pole), Err(Error::NorthPole));
    }

    #[test]
    fn moser_inverse_examples() {
        let xy = moser_inverse(&PhaseState::from_arrays([2.0, 0.0, 0.0], [0.0; 3])).unwrap();
        assert_eq!((xy.x, xy.y), (v4(-1.0, 0.0, 0.0, 0.0), v4(0.0, -1.0, 0.0, 0.0)));
        let xy = moser_inverse(&circular()).unwrap();
        assert_eq!((xy.x, xy.y), (v4(0.0, 0.0, 1.0, 0.0), v4(0.0, -1.0, 0.0, 0.0)));
        assert_eq!(moser_forward(&xy).unwrap(), circular());
        let off = PhaseState::from_arrays([1.0, 0.0, 0.0], [0.0, 2.0, 0.0]);
        assert!(matches!(moser_inverse(&off), Err(Error::OffShell(_))));
    }

    #[test]
    fn frame_and_rotation_at_circular_point() {
        let f = map_s(&circular()).unwrap();
        assert_eq!((f.r, f.s, f.nu_inv), (v4(0.0, 0.0, 1.0, 0.0), v4(0.0, -1.0, 0.0, 0.0), 1.0));
        let xy = rotation_r(&f).unwrap();
        assert_eq!((xy.x, xy.y), (v4(0.0, 0.0, 1.0, 0.0), v4(0.0, -1.0, 0.0, 0.0)));
        let (x, y) = ls_forward(&circular()).unwrap();
        let (l, a, h) = ls_integrals(&x, &y);
        assert_eq!((l, a, h), (Vec3::new(0.0, 0.0, 1.0), Vec3::zeros(), -0.5));
        assert!(matches!(
            map_s(&PhaseState::from_arrays([1.0, 0.0, 0.0], [0.0, 2.0, 0.0])),
            Err(Error::NotNegativeEnergy(_))
        ));
    }

    #[test]
    fn frame_is_scale_invariant() {
        let s = PhaseState::from_arrays([0.7, -0.2, 0.4], [0.3, 0.9, -0.1]);
        let f = map_s(&s).unwrap();
        let (_, s2) = crate::kepler::scale_state(1.7, 0.0, &s).unwrap();
        let f2 = map_s(&s2).unwrap();
        assert!((f.r - f2.r).amax() < 1e-14 && (f.s - f2.s).amax() < 1e-14);
    }

    #[test]
    fn inverse_examples() {
        let s = ls_inverse(&v4(0.0, 0.0, 1.0, 0.0), &v4(0.0, -1.0, 0.0, 0.0)).unwrap();
        assert!(s.distance(&circular()) < 1e-15);
        let s = ls_inverse(&v4(0.0, 0.0, 1.0, 0.0), &v4(0.0, -2.0, 0.0, 0.0)).unwrap();
        assert!((crate::kepler::energy(&s).unwrap() + 0.125).abs() < 1e-15);
        assert!(ls_inverse(&v4(0.0, 0.0, 2.0, 0.0), &v4(0.0, -1.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn eccentric_roundtrip_and_integrals() {
        let s = PhaseState::from_arrays([0.9, 0.3, -0.2], [-0.4, 1.1, 0.25]);
        let (x, y) = ls_forward(&s).unwrap();
        let back = ls_inverse(&x, &y).unwrap();
        assert!(back.distance(&s) < 1e-12);
        let fi = first_integrals(&s).unwrap();
        let (l, a, h) = ls_integrals(&x, &y);
        assert!((l - fi.l).amax() < 1e-13 && (a - fi.a).amax() < 1e-13);
        assert!((h - fi.h).abs() < 1e-13);
    }

    #[test]
    fn moser_integral_example() {
        let xy = SphereCotangent::new(v4(0.0, 1.0, 0.0, 0.0), v4(0.0, 0.0, 1.0, 0.0));
        let (l, _, k) = moser_integrals(&xy).unwrap();
        assert_eq!(l, Vec3::new(0.0, 0.0, 1.0));
        assert_eq!(first_integrals(&moser_forward(&xy).unwrap()).unwrap().l, l);
        assert_eq!(k, 0.0);
        let zero_y = SphereCotangent::new(v4(0.0, 1.0, 0.0, 0.0), Vec4::zeros());
        assert_eq!(moser_integrals(&zero_y).unwrap(), (Vec3::zeros(), Vec3::zeros(), -2.0));
    }
}
