//! The symmetry groups of the three energy shells acting by quaternionic
//! fractional-linear maps, their infinitesimal generators on the
//! regularized side and their momentum maps.
//!
//! * `G+ = ℍ_unit²` acts on `K+ = 0`; on S³ it is `x ↦ α₁ x α₂*`.
//! * `G− = {(α, β) : |α|² − |β|² = 1, Re(αβ*) = 0}` acts on `K− = 0`;
//!   `(α, β) ↦ α + iβ` with a commuting unit `i` identifies it with a
//!   subgroup of `(ℍ⊗ℂ)^×`, which gives the product and the exponential.
//! * `G0 = {(α, c) : |α| = 1, Re(α*c) = 0}` acts on `K0 = 0`, with product
//!   `(α′, c′)(α, c) = (α′α, α′c + c′α)`.
//!
//! The Lie algebra of `G0` is normalized so that `(a, b)` is tangent to
//! `(1 + εa/2, εb/2)`. Its generator on the line side is then
//! `V = (a×x + b, a×y)` and the momentum map is `a·(x×y) + b·y`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{
    imag, mink_inner, pure, quat_exp_pure, quat_inv, quat_to_vec4, split, join, vec4_to_quat,
    HyperboloidCotangent, Quaternion, SphereCotangent, Vec3, Vec4,
};
use crate::kepler::PhaseState;
use crate::zero::LinePoint;

const DENOMINATOR_GUARD: f64 = 1e-12;
const GROUP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GPlusElement {
    pub alpha1: Quaternion,
    pub alpha2: Quaternion,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GMinusElement {
    pub alpha: Quaternion,
    pub beta: Quaternion,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GZeroElement {
    pub alpha: Quaternion,
    pub c: Quaternion,
}

/// A pair of pure quaternions, stored as 3-vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LieAlgebraPair {
    pub a: Vec3,
    pub b: Vec3,
}

impl LieAlgebraPair {
    pub fn new(a: Vec3, b: Vec3) -> Self {
        Self { a, b }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(s * self.a, s * self.b)
    }
}

fn invalid(what: &str, res: f64) -> Error {
    Error::ConstraintViolation(format!("{what} (residual {res:e})"))
}

impl GPlusElement {
    pub fn new(alpha1: Quaternion, alpha2: Quaternion) -> Result<Self> {
        let res = (alpha1.norm() - 1.0).abs().max((alpha2.norm() - 1.0).abs());
        if !(res <= GROUP_TOL) {
            return Err(invalid("G+ needs unit quaternions", res));
        }
        Ok(Self { alpha1, alpha2 })
    }

    pub fn identity() -> Self {
        Self {
            alpha1: Quaternion::identity(),
            alpha2: Quaternion::identity(),
        }
    }

    /// `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            alpha1: self.alpha1 * other.alpha1,
            alpha2: self.alpha2 * other.alpha2,
        }
    }

    /// `(exp(εa), exp(εb))`.
    pub fn exp(ab: &LieAlgebraPair, eps: f64) -> Self {
        Self {
            alpha1: quat_exp_pure(&(eps * ab.a)),
            alpha2: quat_exp_pure(&(eps * ab.b)),
        }
    }
}

impl GMinusElement {
    pub fn new(alpha: Quaternion, beta: Quaternion) -> Result<Self> {
        let g = Self { alpha, beta };
        let res = g.constraint_residual();
        if !(res <= GROUP_TOL * alpha.norm_squared().max(1.0)) {
            return Err(invalid("G- constraint", res));
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        Self {
            alpha: Quaternion::identity(),
            beta: Quaternion::new(0.0, 0.0, 0.0, 0.0),
        }
    }

    /// Largest of `||α|² − |β|² − 1|` and `|Re(αβ*)|`.
    pub fn constraint_residual(&self) -> f64 {
        let n = (self.alpha.norm_squared() - self.beta.norm_squared() - 1.0).abs();
        let o = (self.alpha * self.beta.conjugate()).w.abs();
        n.max(o)
    }

    /// `(α + iβ)(α′ + iβ′)`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            alpha: self.alpha * other.alpha - self.beta * other.beta,
            beta: self.alpha * other.beta + self.beta * other.alpha,
        }
    }

    /// `exp(ε(a + ib))` in ℍ⊗ℂ.
    ///
    /// `z = a + ib` squares to the complex scalar `|b|² − |a|² − 2i a·b`,
    /// so `exp z = cosh √(z²) + sinh √(z²)/√(z²)·z`.
    pub fn exp(ab: &LieAlgebraPair, eps: f64) -> Self {
        let (a, b) = (eps * ab.a, eps * ab.b);
        let z2 = Complex64::new(b.norm_squared() - a.norm_squared(), -2.0 * a.dot(&b));
        let (c0, c1) = if z2.norm() < 1e-8 {
            (Complex64::new(1.0, 0.0) + z2 / 2.0, Complex64::new(1.0, 0.0) + z2 / 6.0)
        } else {
            let w = z2.sqrt();
            (w.cosh(), w.sinh() / w)
        };
        let (pa, pb) = (pure(&a), pure(&b));
        let re = |s: f64| Quaternion::new(s, 0.0, 0.0, 0.0);
        Self {
            alpha: re(c0.re) + pa * c1.re - pb * c1.im,
            beta: re(c0.im) + pa * c1.im + pb * c1.re,
        }
    }
}

impl GZeroElement {
    pub fn new(alpha: Quaternion, c: Quaternion) -> Result<Self> {
        let res = (alpha.norm() - 1.0)
            .abs()
            .max((c.conjugate() * alpha + alpha.conjugate() * c).w.abs());
        if !(res <= GROUP_TOL * c.norm().max(1.0)) {
            return Err(invalid("G0 constraint", res));
        }
        Ok(Self { alpha, c })
    }

    pub fn identity() -> Self {
        Self {
            alpha: Quaternion::identity(),
            c: Quaternion::new(0.0, 0.0, 0.0, 0.0),
        }
    }

    /// `(α′, c′)(α, c) = (α′α, α′c + c′α)`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            alpha: self.alpha * other.alpha,
            c: self.alpha * other.c + self.c * other.alpha,
        }
    }

    /// One-parameter subgroup through `(1 + εa/2, εb/2)`.
    ///
    /// In the matrix model `[[α, c], [0, α]]` this is the exponential of
    /// `ε[[a/2, b/2], [0, a/2]]`, so
    /// `c(ε) = exp(εa/2)·∫₀^ε exp(−sa/2)(b/2)exp(sa/2) ds`.
    pub fn exp(ab: &LieAlgebraPair, eps: f64) -> Self {
        let alpha = quat_exp_pure(&(0.5 * eps * ab.a));
        let half_b = 0.5 * ab.b;
        let th = ab.a.norm();
        let integral = if th * eps.abs() < 1e-12 {
            eps * half_b
        } else {
            let n = ab.a / th;
            let par = n.dot(&half_b) * n;
            let perp = half_b - par;
            let phi = th * eps;
            eps * par + (phi.sin() / th) * perp - ((1.0 - phi.cos()) / th) * n.cross(&half_b)
        };
        Self {
            alpha,
            c: alpha * pure(&integral),
        }
    }
}

fn pure_state(q: &Quaternion, p: &Quaternion) -> PhaseState {
    PhaseState::new(imag(q), imag(p))
}

fn invert_denominator(d: &Quaternion) -> Result<Quaternion> {
    if !(d.norm() > DENOMINATOR_GUARD) {
        return Err(Error::SingularDenominator);
    }
    quat_inv(d)
}

/// Raw quaternion output of the `G+` action, real parts included.
pub fn act_gplus_raw(g: &GPlusElement, state: &PhaseState) -> Result<(Quaternion, Quaternion)> {
    let a = (g.alpha1 + g.alpha2) / 2.0;
    let b = (g.alpha2 - g.alpha1) / 2.0;
    let (q, p) = (pure(&state.q), pure(&state.p));
    let d = b * p + a;
    let dinv = invert_denominator(&d)?;
    Ok((d * q * d.conjugate(), (a * p + b) * dinv))
}

/// `(α₁, α₂)·(q, p) = ((bp + a)q(bp + a)*, (ap + b)(bp + a)⁻¹)` with
/// `a = (α₁ + α₂)/2`, `b = (α₂ − α₁)/2`.
pub fn act_gplus(g: &GPlusElement, state: &PhaseState) -> Result<PhaseState> {
    act_gplus_raw(g, state).map(|(q, p)| pure_state(&q, &p))
}

pub fn act_gminus_raw(g: &GMinusElement, state: &PhaseState) -> Result<(Quaternion, Quaternion)> {
    let (q, p) = (pure(&state.q), pure(&state.p));
    let d = g.beta * p + g.alpha;
    let dinv = invert_denominator(&d)?;
    Ok((d * q * d.conjugate(), (g.alpha * p - g.beta) * dinv))
}

/// `(α, β)·(q, p) = ((βp + α)q(βp + α)*, (αp − β)(βp + α)⁻¹)`.
pub fn act_gminus(g: &GMinusElement, state: &PhaseState) -> Result<PhaseState> {
    act_gminus_raw(g, state).map(|(q, p)| pure_state(&q, &p))
}

pub fn act_gzero_raw(g: &GZeroElement, state: &PhaseState) -> Result<(Quaternion, Quaternion)> {
    let (q, p) = (pure(&state.q), pure(&state.p));
    let d = g.c * p + g.alpha;
    let dinv = invert_denominator(&d)?;
    Ok((d * q * d.conjugate(), g.alpha * p * dinv))
}

/// `(α, c)·(q, p) = ((cp + α)q(cp + α)*, αp(cp + α)⁻¹)`.
pub fn act_gzero(g: &GZeroElement, state: &PhaseState) -> Result<PhaseState> {
    act_gzero_raw(g, state).map(|(q, p)| pure_state(&q, &p))
}

/// `G+` on T*S³: `(x, y) ↦ (α₁xα₂*, α₁yα₂*)`.
pub fn act_gplus_sphere(g: &GPlusElement, xy: &SphereCotangent) -> SphereCotangent {
    let f = |v: &Vec4| quat_to_vec4(&(g.alpha1 * vec4_to_quat(v) * g.alpha2.conjugate()));
    SphereCotangent::new(f(&xy.x), f(&xy.y))
}

/// `G0` on the line side: `(x, y) ↦ (2cα⁻¹ + αxα⁻¹, αyα⁻¹)`.
///
/// This makes `ℒ` equivariant: `g·ℒ(x, y) = ℒ(g·(x, y))`.
pub fn act_gzero_line(g: &GZeroElement, pt: &LinePoint) -> Result<LinePoint> {
    let ainv = quat_inv(&g.alpha)?;
    let x = g.c * ainv * 2.0 + g.alpha * pure(&pt.x) * ainv;
    let y = g.alpha * pure(&pt.y) * ainv;
    Ok(LinePoint::new(imag(&x), imag(&y)))
}

/// `V(x, y) = (ax − xb, ay − yb)`.
pub fn generator_gplus(ab: &LieAlgebraPair, xy: &SphereCotangent) -> (Vec4, Vec4) {
    let (a, b) = (pure(&ab.a), pure(&ab.b));
    let f = |v: &Vec4| {
        let q = vec4_to_quat(v);
        quat_to_vec4(&(a * q - q * b))
    };
    (f(&xy.x), f(&xy.y))
}

/// Lorentz generator `Λv = (2b·v̄, 2v₀b + 2a×v̄)` applied to `x` and `y`.
pub fn generator_gminus(ab: &LieAlgebraPair, xy: &HyperboloidCotangent) -> (Vec4, Vec4) {
    let f = |v: &Vec4| {
        let (v0, vb) = split(v);
        join(2.0 * ab.b.dot(&vb), &(2.0 * v0 * ab.b + 2.0 * ab.a.cross(&vb)))
    };
    (f(&xy.x), f(&xy.y))
}

/// `V(x, y) = (a×x + b, a×y)`.
pub fn generator_gzero(ab: &LieAlgebraPair, pt: &LinePoint) -> (Vec3, Vec3) {
    (ab.a.cross(&pt.x) + ab.b, ab.a.cross(&pt.y))
}

/// `(a + b)·(x̄×ȳ) + (b − a)·(x̄y₀ − x₀ȳ)`.
pub fn moment_gplus(ab: &LieAlgebraPair, xy: &SphereCotangent) -> f64 {
    let (x0, xb) = split(&xy.x);
    let (y0, yb) = split(&xy.y);
    (ab.a + ab.b).dot(&xb.cross(&yb)) + (ab.b - ab.a).dot(&(xb * y0 - x0 * yb))
}

/// `⟨y, ax − xb⟩` in the Euclidean pairing of ℝ⁴.
pub fn moment_gplus_pairing(ab: &LieAlgebraPair, xy: &SphereCotangent) -> f64 {
    xy.y.dot(&generator_gplus(ab, xy).0)
}

/// `2b·(x̄y₀ − x₀ȳ) + 2a·(x̄×ȳ♭)`, the lowered covector giving `ȳ♭ = −ȳ`.
pub fn moment_gminus(ab: &LieAlgebraPair, xy: &HyperboloidCotangent) -> f64 {
    let (x0, xb) = split(&xy.x);
    let (y0, yb) = split(&xy.y);
    2.0 * ab.b.dot(&(xb * y0 - x0 * yb)) - 2.0 * ab.a.dot(&xb.cross(&yb))
}

/// `⟨y, Λx⟩` in the Minkowski pairing.
pub fn moment_gminus_pairing(ab: &LieAlgebraPair, xy: &HyperboloidCotangent) -> f64 {
    mink_inner(&xy.y, &generator_gminus(ab, xy).0)
}

/// `a·(x×y) + b·y`.
pub fn moment_gzero(ab: &LieAlgebraPair, pt: &LinePoint) -> f64 {
    ab.a.dot(&pt.x.cross(&pt.y)) + ab.b.dot(&pt.y)
}

/// `y·V_x`, the contraction of the generator with `θ = Σ yᵢ dxᵢ`.
pub fn moment_gzero_pairing(ab: &LieAlgebraPair, pt: &LinePoint) -> f64 {
    pt.y.dot(&generator_gzero(ab, pt).0)
}

/// `[(a₁, b₁), (a₂, b₂)] = (a₁×a₂, a₁×b₂ − a₂×b₁)`.
pub fn bracket_gzero(u: &LieAlgebraPair, v: &LieAlgebraPair) -> LieAlgebraPair {
    LieAlgebraPair::new(u.a.cross(&v.a), u.a.cross(&v.b) - v.a.cross(&u.b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kepler::energies;
    use crate::negative::{moser_forward, moser_inverse};
    use crate::positive::{belbruno_forward, belbruno_inverse};
    use crate::zero::{euclid_forward, euclid_inverse};

    fn unit(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z).normalize()
    }

    fn plus_state() -> PhaseState {
        // |p|² = 2/|q| − 1 puts the state on K+ = 0.
        let q = Vec3::new(0.6, -0.4, 0.3);
        let p = (2.0 / q.norm() - 1.0).sqrt() * Vec3::new(0.2, 0.9, -0.4).normalize();
        PhaseState::new(q, p)
    }

    fn minus_state() -> PhaseState {
        let q = Vec3::new(0.6, -0.4, 0.3);
        let p = (2.0 / q.norm() + 1.0).sqrt() * Vec3::new(0.2, 0.9, -0.4).normalize();
        PhaseState::new(q, p)
    }

    fn zero_state() -> PhaseState {
        let q = Vec3::new(0.6, -0.4, 0.3);
        let p = (2.0 / q.norm()).sqrt() * Vec3::new(0.2, 0.9, -0.4).normalize();
        PhaseState::new(q, p)
    }

    #[test]
    fn identities_act_trivially() {
        let s = plus_state();
        assert!(act_gplus(&GPlusElement::identity(), &s).unwrap().distance(&s) < 1e-16);
        assert!(act_gminus(&GMinusElement::identity(), &s).unwrap().distance(&s) < 1e-16);
        assert!(act_gzero(&GZeroElement::identity(), &s).unwrap().distance(&s) < 1e-16);
    }

    #[test]
    fn gplus_stabilizer() {
        let a = unit(0.3, 0.8, 0.0, 0.0);
        let g = GPlusElement::new(a, a).unwrap();
        let s = PhaseState::from_arrays([2.0, 0.0, 0.0], [0.0; 3]);
        assert!(act_gplus(&g, &s).unwrap().distance(&s) < 1e-15);
    }

    #[test]
    fn gplus_matches_sphere_action() {
        let g = GPlusElement::new(unit(0.3, -0.5, 0.2, 0.7), unit(-0.1, 0.4, 0.8, 0.3)).unwrap();
        let s = plus_state();
        let xy = moser_inverse(&s).unwrap();
        let lhs = act_gplus(&g, &s).unwrap();
        let rhs = moser_forward(&act_gplus_sphere(&g, &xy)).unwrap();
        assert!(lhs.distance(&rhs) < 1e-13, "{lhs:?} vs {rhs:?}");
    }

    #[test]
    fn actions_preserve_their_shells() {
        let gp = GPlusElement::new(unit(0.3, -0.5, 0.2, 0.7), unit(-0.1, 0.4, 0.8, 0.3)).unwrap();
        let k = energies(&act_gplus(&gp, &plus_state()).unwrap()).unwrap().k_plus;
        assert!(k.abs() < 1e-12);
        let gm = GMinusElement::exp(&LieAlgebraPair::new(Vec3::new(0.3, 0.1, -0.2), Vec3::new(0.5, -0.4, 0.2)), 1.0);
        assert!(gm.constraint_residual() < 1e-14);
        let k = energies(&act_gminus(&gm, &minus_state()).unwrap()).unwrap().k_minus;
        assert!(k.abs() < 1e-12);
        let gz = GZeroElement::exp(&LieAlgebraPair::new(Vec3::new(0.3, 0.1, -0.2), Vec3::new(0.5, -0.4, 0.2)), 1.0);
        assert!(GZeroElement::new(gz.alpha, gz.c).is_ok());
        let k = energies(&act_gzero(&gz, &zero_state()).unwrap()).unwrap().k_zero;
        assert!(k.abs() < 1e-12);
    }

    #[test]
    fn gminus_law_and_exp_subgroup() {
        let ab = LieAlgebraPair::new(Vec3::new(0.3, 0.1, -0.2), Vec3::new(0.5, -0.4, 0.2));
        let g1 = GMinusElement::exp(&ab, 0.4);
        let g2 = GMinusElement::exp(&ab, 0.7);
        let g12 = GMinusElement::exp(&ab, 1.1);
        let c = g2.compose(&g1);
        assert!((c.alpha - g12.alpha).norm() < 1e-14 && (c.beta - g12.beta).norm() < 1e-14);
        let s = minus_state();
        let lhs = act_gminus(&g2, &act_gminus(&g1, &s).unwrap()).unwrap();
        let rhs = act_gminus(&c, &s).unwrap();
        assert!(lhs.distance(&rhs) < 1e-12);
    }

    #[test]
    fn gzero_law_and_exp_subgroup() {
        let ab = LieAlgebraPair::new(Vec3::new(0.3, 0.1, -0.2), Vec3::new(0.5, -0.4, 0.2));
        let g1 = GZeroElement::exp(&ab, 0.4);
        let g2 = GZeroElement::exp(&ab, 0.7);
        let g12 = GZeroElement::exp(&ab, 1.1);
        let c = g2.compose(&g1);
        assert!((c.alpha - g12.alpha).norm() < 1e-14 && (c.c - g12.c).norm() < 1e-14);
        let s = zero_state();
        let lhs = act_gzero(&g2, &act_gzero(&g1, &s).unwrap()).unwrap();
        assert!(lhs.distance(&act_gzero(&c, &s).unwrap()) < 1e-12);
    }

    #[test]
    fn gzero_equivariance() {
        let g = GZeroElement::exp(&LieAlgebraPair::new(Vec3::new(0.9, -0.3, 0.4), Vec3::new(-0.2, 0.6, 1.1)), 1.3);
        let pt = euclid_inverse(&zero_state()).unwrap();
        let lhs = act_gzero(&g, &euclid_forward(&pt).unwrap()).unwrap();
        let rhs = euclid_forward(&act_gzero_line(&g, &pt).unwrap()).unwrap();
        assert!(lhs.distance(&rhs) < 1e-13);
    }

    #[test]
    fn moments_agree_with_pairings() {
        let ab = LieAlgebraPair::new(Vec3::new(0.3, 0.1, -0.2), Vec3::new(0.5, -0.4, 0.2));
        let xy = moser_inverse(&plus_state()).unwrap();
        assert!((moment_gplus(&ab, &xy) - moment_gplus_pairing(&ab, &xy)).abs() < 1e-14);
        let hy = belbruno_inverse(&minus_state()).unwrap();
        assert!((moment_gminus(&ab, &hy) - moment_gminus_pairing(&ab, &hy)).abs() < 1e-13);
        let pt = euclid_inverse(&zero_state()).unwrap();
        assert!((moment_gzero(&ab, &pt) - moment_gzero_pairing(&ab, &pt)).abs() < 1e-14);
        let z = LieAlgebraPair::new(Vec3::zeros(), Vec3::zeros());
        assert_eq!(moment_gplus(&z, &xy), 0.0);
        assert_eq!(moment_gminus(&z, &hy), 0.0);
        assert_eq!(moment_gzero(&z, &pt), 0.0);
        let k = LieAlgebraPair::new(Vec3::zeros(), Vec3::z());
        assert_eq!(moment_gzero(&k, &pt), pt.y.z);
        // a = b = i/2 picks the first component of x̄×ȳ.
        let half_i = LieAlgebraPair::new(0.5 * Vec3::x(), 0.5 * Vec3::x());
        let (_, xb) = split(&xy.x);
        let (_, yb) = split(&xy.y);
        assert!((moment_gplus(&half_i, &xy) - xb.cross(&yb).x).abs() < 1e-15);
    }

    #[test]
    fn gminus_generator_is_pushforward() {
        let ab = LieAlgebraPair::new(Vec3::new(0.3, 0.1, -0.2), Vec3::new(0.5, -0.4, 0.2));
        let xy = belbruno_inverse(&minus_state()).unwrap();
        let h = 1e-5;
        let at = |e: f64| {
            let s = act_gminus(&GMinusElement::exp(&ab, e), &belbruno_forward(&xy).unwrap()).unwrap();
            belbruno_inverse(&s).unwrap()
        };
        let (p, m) = (at(h), at(-h));
        let (vx, vy) = generator_gminus(&ab, &xy);
        assert!(((p.x - m.x) / (2.0 * h) - vx).amax() < 1e-8);
        assert!(((p.y - m.y) / (2.0 * h) - vy).amax() < 1e-8);
    }

    #[test]
    fn gplus_generator_is_pushforward() {
        let ab = LieAlgebraPair::new(Vec3::new(0.3, 0.1, -0.2), Vec3::new(0.5, -0.4, 0.2));
        let xy = moser_inverse(&plus_state()).unwrap();
        let h = 1e-5;
        let at = |e: f64| {
            let s = act_gplus(&GPlusElement::exp(&ab, e), &moser_forward(&xy).unwrap()).unwrap();
            moser_inverse(&s).unwrap()
        };
        let (p, m) = (at(h), at(-h));
        let (vx, vy) = generator_gplus(&ab, &xy);
        assert!(((p.x - m.x) / (2.0 * h) - vx).amax() < 1e-8);
        assert!(((p.y - m.y) / (2.0 * h) - vy).amax() < 1e-8);
    }

    #[test]
    fn gzero_generator_is_pushforward() {
        let ab = LieAlgebraPair::new(Vec3::new(0.3, 0.1, -0.2), Vec3::new(0.5, -0.4, 0.2));
        let pt = euclid_inverse(&zero_state()).unwrap();
        let h = 1e-5;
        let at = |e: f64| {
            let s = act_gzero(&GZeroElement::exp(&ab, e), &euclid_forward(&pt).unwrap()).unwrap();
            euclid_inverse(&s).unwrap()
        };
        let (p, m) = (at(h), at(-h));
        let (vx, vy) = generator_gzero(&ab, &pt);
        assert!(((p.x - m.x) / (2.0 * h) - vx).amax() < 1e-8);
        assert!(((p.y - m.y) / (2.0 * h) - vy).amax() < 1e-8);
    }
}
