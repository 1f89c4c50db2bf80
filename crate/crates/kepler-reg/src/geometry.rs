//! Quaternions, Euclidean and Minkowski 4-vectors, and the closed-form
//! geodesics of S³ and of the upper sheet of H³.
//!
//! A 4-vector is stored as `(v0, v1, v2, v3)`. The Minkowski pairing has
//! signature `(+,-,-,-)`. Pure quaternions and 3-vectors are converted with
//! [`pure`] and [`imag`]; nothing converts implicitly.

use nalgebra::{Vector3, Vector4};

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;
pub type Vec4 = Vector4<f64>;
/// A point of ℝ⁴ read with the Euclidean metric.
pub type Vec4Euclid = Vec4;
/// A point of ℝ^{1,3} read with the Minkowski metric.
pub type Vec4Mink = Vec4;
/// `w + i x1 + j x2 + k x3`.
pub type Quaternion = nalgebra::Quaternion<f64>;

/// Absolute tolerance for membership in T*S³ and T*H³.
pub const CONSTRAINT_TOL: f64 = 1e-10;
/// Largest argument accepted by cosh and sinh.
pub const HYPERBOLIC_ARG_CAP: f64 = 700.0;

/// Embeds a 3-vector as the pure quaternion `(0, v)`.
pub fn pure(v: &Vec3) -> Quaternion {
    Quaternion::new(0.0, v.x, v.y, v.z)
}

/// Imaginary part of a quaternion as a 3-vector.
pub fn imag(q: &Quaternion) -> Vec3 {
    Vec3::new(q.i, q.j, q.k)
}

/// Quaternion as `(w, x1, x2, x3)`.
pub fn quat_to_vec4(q: &Quaternion) -> Vec4 {
    Vec4::new(q.w, q.i, q.j, q.k)
}

pub fn vec4_to_quat(v: &Vec4) -> Quaternion {
    Quaternion::new(v[0], v[1], v[2], v[3])
}

/// Splits `(v0, v1, v2, v3)` into `v0` and `(v1, v2, v3)`.
pub fn split(v: &Vec4) -> (f64, Vec3) {
    (v[0], Vec3::new(v[1], v[2], v[3]))
}

pub fn join(v0: f64, bar: &Vec3) -> Vec4 {
    Vec4::new(v0, bar.x, bar.y, bar.z)
}

/// Hamilton product.
pub fn quat_mul(a: &Quaternion, b: &Quaternion) -> Quaternion {
    a * b
}

pub fn quat_inv(a: &Quaternion) -> Result<Quaternion> {
    let n2 = a.norm_squared();
    if n2 == 0.0 || !n2.is_finite() {
        return Err(Error::ZeroQuaternion);
    }
    Ok(a.conjugate() / n2)
}

/// Exponential of a pure quaternion, `cos|v| + sin|v| v/|v|`.
pub fn quat_exp_pure(v: &Vec3) -> Quaternion {
    let n = v.norm();
    if n == 0.0 {
        return Quaternion::identity();
    }
    let s = n.sin() / n;
    Quaternion::new(n.cos(), s * v.x, s * v.y, s * v.z)
}

pub fn euclid_inner(u: &Vec4, w: &Vec4) -> f64 {
    u.dot(w)
}

pub fn mink_inner(u: &Vec4, w: &Vec4) -> f64 {
    u[0] * w[0] - u[1] * w[1] - u[2] * w[2] - u[3] * w[3]
}

fn check_sphere_frame(r: &Vec4, s: &Vec4) -> Result<()> {
    let res = [r.norm_squared() - 1.0, s.norm_squared() - 1.0, r.dot(s)];
    if res.iter().any(|v| !(v.abs() <= CONSTRAINT_TOL)) {
        return Err(Error::ConstraintViolation(format!(
            "sphere frame residuals {res:?}"
        )));
    }
    Ok(())
}

fn check_hyperboloid_frame(r: &Vec4, s: &Vec4) -> Result<()> {
    // Relative to the size of the components: the frames met in practice
    // have entries up to cosh(700).
    let scale = r.norm_squared().max(s.norm_squared()).max(1.0);
    let res = [
        mink_inner(r, r) - 1.0,
        mink_inner(s, s) + 1.0,
        mink_inner(r, s),
    ];
    if res.iter().any(|v| !(v.abs() <= CONSTRAINT_TOL * scale)) || !(r[0] > 0.0) {
        return Err(Error::ConstraintViolation(format!(
            "hyperboloid frame residuals {res:?}, r0 = {}",
            r[0]
        )));
    }
    Ok(())
}

/// Rotates the orthonormal pair `(r, s)` by `angle` inside its own plane.
pub fn great_circle(r: &Vec4, s: &Vec4, angle: f64) -> Result<(Vec4, Vec4)> {
    check_sphere_frame(r, s)?;
    let (sn, cs) = angle.sin_cos();
    Ok((cs * r + sn * s, -sn * r + cs * s))
}

/// Boosts the pair `(r, s)` by `param` inside its own plane.
pub fn hyperbolic_geodesic(r: &Vec4, s: &Vec4, param: f64) -> Result<(Vec4, Vec4)> {
    check_hyperboloid_frame(r, s)?;
    if !(param.abs() <= HYPERBOLIC_ARG_CAP) {
        return Err(Error::RangeExceeded(param));
    }
    let (ch, sh) = (param.cosh(), param.sinh());
    Ok((ch * r + sh * s, sh * r + ch * s))
}

/// Largest Euclidean distance from `points` to `span{basis.0, basis.1}`.
///
/// The basis is normalized before the Gram determinant is tested, so the
/// test only sees the angle between the two vectors.
pub fn plane_containment_residual(points: &[Vec4], basis: (&Vec4, &Vec4)) -> Result<f64> {
    let (b0, b1) = basis;
    let (n0, n1) = (b0.norm(), b1.norm());
    if n0 == 0.0 || n1 == 0.0 {
        return Err(Error::DegenerateBasis(0.0));
    }
    let u = b0 / n0;
    let v = b1 / n1;
    let c = u.dot(&v);
    let gram = 1.0 - c * c;
    if gram < 1e-12 {
        return Err(Error::DegenerateBasis(gram));
    }
    let e1 = u;
    let e2 = (v - c * u).normalize();
    Ok(points
        .iter()
        .map(|p| (p - p.dot(&e1) * e1 - p.dot(&e2) * e2).norm())
        .fold(0.0, f64::max))
}

/// A point `(x, y)` of T*S³ ⊂ ℝ⁸.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereCotangent {
    pub x: Vec4Euclid,
    pub y: Vec4Euclid,
}

impl SphereCotangent {
    pub fn new(x: Vec4, y: Vec4) -> Self {
        Self { x, y }
    }

    /// `(|x|² − 1, ⟨x,y⟩, |y|² − 1)`.
    pub fn residuals(&self) -> [f64; 3] {
        [
            self.x.norm_squared() - 1.0,
            self.x.dot(&self.y),
            self.y.norm_squared() - 1.0,
        ]
    }

    /// Checks `|x| = 1`, `⟨x,y⟩ = 0` and, if `unit`, `|y| = 1`.
    pub fn checked(x: Vec4, y: Vec4, unit: bool) -> Result<Self> {
        let pt = Self { x, y };
        let r = pt.residuals();
        let n = if unit { 3 } else { 2 };
        if r[..n].iter().any(|v| !(v.abs() <= CONSTRAINT_TOL)) {
            return Err(Error::ConstraintViolation(format!(
                "T*S3 residuals {:?}",
                &r[..n]
            )));
        }
        Ok(pt)
    }
}

/// A point `(x, y)` of T*H³ ⊂ ℝ^{1,3} × ℝ^{1,3}, upper sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperboloidCotangent {
    pub x: Vec4Mink,
    pub y: Vec4Mink,
}

impl HyperboloidCotangent {
    pub fn new(x: Vec4, y: Vec4) -> Self {
        Self { x, y }
    }

    /// `(⟨x,x⟩ − 1, ⟨x,y⟩, ⟨y,y⟩ + 1)` in the Minkowski pairing.
    pub fn residuals(&self) -> [f64; 3] {
        [
            mink_inner(&self.x, &self.x) - 1.0,
            mink_inner(&self.x, &self.y),
            mink_inner(&self.y, &self.y) + 1.0,
        ]
    }

    pub fn checked(x: Vec4, y: Vec4, unit: bool) -> Result<Self> {
        let pt = Self { x, y };
        let r = pt.residuals();
        let n = if unit { 3 } else { 2 };
        if r[..n].iter().any(|v| !(v.abs() <= CONSTRAINT_TOL)) || !(x[0] > 0.0) {
            return Err(Error::ConstraintViolation(format!(
                "T*H3 residuals {:?}, x0 = {}",
                &r[..n],
                x[0]
            )));
        }
        Ok(pt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, LN_2, PI};

    fn close4(a: &Vec4, b: &Vec4, tol: f64) -> bool {
        (a - b).amax() <= tol
    }

    #[test]
    fn hamilton_relations() {
        let i = Quaternion::new(0.0, 1.0, 0.0, 0.0);
        let j = Quaternion::new(0.0, 0.0, 1.0, 0.0);
        let k = Quaternion::new(0.0, 0.0, 0.0, 1.0);
        assert_eq!(quat_mul(&i, &j), k);
        assert_eq!(quat_mul(&i, &i), -Quaternion::identity());
        let a = Quaternion::new(0.3, -1.2, 2.0, 0.5);
        assert_eq!(quat_mul(&a, &Quaternion::identity()), a);
        // j (2i) j by hand: j·2i = -2k, -2k·j = 2i.
        let two_i = Quaternion::new(0.0, 2.0, 0.0, 0.0);
        assert_eq!(quat_mul(&quat_mul(&j, &two_i), &j), two_i);
    }

    #[test]
    fn inverses() {
        let i = Quaternion::new(0.0, 1.0, 0.0, 0.0);
        assert_eq!(quat_inv(&i).unwrap(), -i);
        assert_eq!(
            quat_inv(&Quaternion::identity()).unwrap(),
            Quaternion::identity()
        );
        let j = pure(&Vec3::new(0.0, 1.0, 0.0));
        assert_eq!(imag(&quat_inv(&j).unwrap()), Vec3::new(0.0, -1.0, 0.0));
        assert_eq!(quat_inv(&Quaternion::new(0.0, 0.0, 0.0, 0.0)), Err(Error::ZeroQuaternion));
        let v = pure(&Vec3::new(1.0, -2.0, 0.5));
        let inv = quat_inv(&v).unwrap();
        assert!((inv - (-v / v.norm_squared())).norm() < 1e-16);
        assert!((quat_mul(&v, &inv) - Quaternion::identity()).norm() < 1e-15);
    }

    #[test]
    fn exp_of_pure_is_unit() {
        let q = quat_exp_pure(&Vec3::new(0.4, -1.1, 2.3));
        assert!((q.norm() - 1.0).abs() < 1e-15);
        let half_turn = quat_exp_pure(&Vec3::new(FRAC_PI_2, 0.0, 0.0));
        assert!((half_turn - Quaternion::new(0.0, 1.0, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn minkowski_pairing() {
        let e0 = Vec4::new(1.0, 0.0, 0.0, 0.0);
        let e1 = Vec4::new(0.0, 1.0, 0.0, 0.0);
        assert_eq!(mink_inner(&e0, &e0), 1.0);
        assert_eq!(mink_inner(&e1, &e1), -1.0);
        let x = Vec4::new(2.0, 0.0, -(3f64).sqrt(), 0.0);
        assert!((mink_inner(&x, &x) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn great_circle_turns() {
        let r = Vec4::new(1.0, 0.0, 0.0, 0.0);
        let s = Vec4::new(0.0, 1.0, 0.0, 0.0);
        let (a, b) = great_circle(&r, &s, 0.0).unwrap();
        assert_eq!((a, b), (r, s));
        let (a, b) = great_circle(&r, &s, FRAC_PI_2).unwrap();
        assert!(close4(&a, &s, 1e-16) && close4(&b, &(-r), 1e-16));
        let (a, b) = great_circle(&r, &s, PI).unwrap();
        assert!(close4(&a, &(-r), 1e-15) && close4(&b, &(-s), 1e-15));
        assert!(matches!(
            great_circle(&r, &r, 1.0),
            Err(Error::ConstraintViolation(_))
        ));
    }

    #[test]
    fn hyperbolic_geodesic_ln2() {
        let r = Vec4::new(1.0, 0.0, 0.0, 0.0);
        let s = Vec4::new(0.0, 1.0, 0.0, 0.0);
        let (a, b) = hyperbolic_geodesic(&r, &s, LN_2).unwrap();
        assert!(close4(&a, &Vec4::new(1.25, 0.75, 0.0, 0.0), 1e-15));
        assert!(close4(&b, &Vec4::new(0.75, 1.25, 0.0, 0.0), 1e-15));
        let (a2, b2) = hyperbolic_geodesic(&a, &b, -LN_2).unwrap();
        assert!(close4(&a2, &r, 1e-15) && close4(&b2, &s, 1e-15));
        assert_eq!(hyperbolic_geodesic(&r, &s, 701.0), Err(Error::RangeExceeded(701.0)));
    }

    #[test]
    fn plane_residual_cases() {
        let r = Vec4::new(1.0, 0.0, 0.0, 0.0);
        let s = Vec4::new(0.0, 1.0, 0.0, 0.0);
        assert_eq!(plane_containment_residual(&[r, r], (&r, &s)).unwrap(), 0.0);
        let off = Vec4::new(0.0, 0.0, 1.0, 0.0);
        assert_eq!(plane_containment_residual(&[off], (&r, &s)).unwrap(), 1.0);
        let pts: Vec<Vec4> = (-10..=10)
            .map(|k| hyperbolic_geodesic(&r, &s, k as f64 * 0.3).unwrap().0)
            .collect();
        assert!(plane_containment_residual(&pts, (&r, &s)).unwrap() < 1e-10);
        assert!(matches!(
            plane_containment_residual(&[r], (&r, &(2.0 * r))),
            Err(Error::DegenerateBasis(_))
        ));
    }

    #[test]
    fn cotangent_checks() {
        let x = Vec4::new(0.0, 0.0, 1.0, 0.0);
        let y = Vec4::new(0.0, -1.0, 0.0, 0.0);
        assert!(SphereCotangent::checked(x, y, true).is_ok());
        assert!(SphereCotangent::checked(x, 2.0 * y, true).is_err());
        assert!(SphereCotangent::checked(x, 2.0 * y, false).is_ok());
        let hx = Vec4::new(2.0, 0.0, -(3f64).sqrt(), 0.0);
        assert!(HyperboloidCotangent::checked(hx, y, true).is_ok());
        assert!(HyperboloidCotangent::checked(-hx, y, true).is_err());
    }
}
