//! Central-difference Jacobians and canonical-form residuals.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Step used for symplectic certification.
pub const FD_STEP: f64 = 1e-5;

/// Central-difference Jacobian of `map` at `at`. Any failure of the map at
/// a perturbed point is reported as [`Error::DomainEscape`].
pub fn fd_jacobian<F>(map: F, at: &[f64], step: f64) -> Result<DMatrix<f64>>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    if !(step > 0.0) {
        return Err(Error::InvalidArgument(format!("step {step} must be positive")));
    }
    let mut cols = Vec::with_capacity(at.len());
    let mut pt = at.to_vec();
    for j in 0..at.len() {
        // Divide by the spacing actually representable at this coordinate.
        let (tp, tm) = (at[j] + step, at[j] - step);
        let width = (tp - at[j]) + (at[j] - tm);
        pt[j] = tp;
        let plus = map(&pt).map_err(|_| Error::DomainEscape)?;
        pt[j] = tm;
        let minus = map(&pt).map_err(|_| Error::DomainEscape)?;
        pt[j] = at[j];
        if plus.len() != minus.len() {
            return Err(Error::DomainEscape);
        }
        cols.push(plus.iter().zip(&minus).map(|(a, b)| (a - b) / width).collect::<Vec<_>>());
    }
    let rows = cols.first().map_or(0, Vec::len);
    Ok(DMatrix::from_fn(rows, at.len(), |i, j| cols[j][i]))
}

/// Five-point central-difference Jacobian
/// `(−f(x+2h) + 8f(x+h) − 8f(x−h) + f(x−2h))/(12h)`, with truncation error
/// `O(h⁴)`. Failures are reported as in [`fd_jacobian`].
pub fn fd_jacobian_five_point<F>(map: F, at: &[f64], step: f64) -> Result<DMatrix<f64>>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    if !(step > 0.0) {
        return Err(Error::InvalidArgument(format!("step {step} must be positive")));
    }
    let mut cols = Vec::with_capacity(at.len());
    let mut pt = at.to_vec();
    for j in 0..at.len() {
        let h = (at[j] + step) - at[j];
        let mut eval = |offset: f64| {
            pt[j] = at[j] + offset;
            let v = map(&pt).map_err(|_| Error::DomainEscape);
            pt[j] = at[j];
            v
        };
        let (p2, p1, m1, m2) = (eval(2.0 * h)?, eval(h)?, eval(-h)?, eval(-2.0 * h)?);
        if [p1.len(), m1.len(), m2.len()].iter().any(|&n| n != p2.len()) {
            return Err(Error::DomainEscape);
        }
        cols.push(
            (0..p2.len())
                .map(|i| (8.0 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12.0 * h))
                .collect::<Vec<_>>(),
        );
    }
    let rows = cols.first().map_or(0, Vec::len);
    Ok(DMatrix::from_fn(rows, at.len(), |i, j| cols[j][i]))
}

/// Richardson ratio `|J(h) − J(h/2)| / |J(h/2) − J(h/4)|`, close to 4 for a
/// smooth map.
pub fn step_halving_ratio<F>(map: F, at: &[f64], step: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let j1 = fd_jacobian(&map, at, step)?;
    let j2 = fd_jacobian(&map, at, step / 2.0)?;
    let j4 = fd_jacobian(&map, at, step / 4.0)?;
    Ok((j1 - &j2).norm() / (j2 - j4).norm())
}

/// Canonical two-form `Σ sᵢ dxᵢ∧dyᵢ` on `ℝ²ⁿ` ordered as the position block
/// followed by the momentum block.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalForm {
    pub signs: Vec<f64>,
}

impl CanonicalForm {
    /// `Σ dqᵢ∧dpᵢ` on `ℝ²ⁿ`.
    pub fn standard(n: usize) -> Self {
        Self { signs: vec![1.0; n] }
    }

    /// `dx₀∧dy₀ − Σ dx̄ᵢ∧dȳᵢ` on `ℝ⁸`.
    pub fn minkowski() -> Self {
        Self {
            signs: vec![1.0, -1.0, -1.0, -1.0],
        }
    }

    pub fn dim(&self) -> usize {
        2 * self.signs.len()
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.signs.len();
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        for (i, s) in self.signs.iter().enumerate() {
            m[(i, n + i)] = *s;
            m[(n + i, i)] = -*s;
        }
        m
    }
}

/// `max |ω_image(Du, Dv) − ω_domain(u, v)|` over coordinate basis pairs,
/// with `D` the five-point Jacobian at step [`FD_STEP`].
pub fn symplectic_residual<F>(map: F, at: &[f64], domain: &CanonicalForm, image: &CanonicalForm) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    symplectic_residual_step(map, at, domain, image, FD_STEP)
}

/// [`symplectic_residual`] at a chosen difference step.
pub fn symplectic_residual_step<F>(
    map: F,
    at: &[f64],
    domain: &CanonicalForm,
    image: &CanonicalForm,
    step: f64,
) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    if at.len() != domain.dim() {
        return Err(Error::InvalidArgument(format!(
            "point of dimension {} for a form on R^{}",
            at.len(),
            domain.dim()
        )));
    }
    let d = fd_jacobian_five_point(map, at, step)?;
    if d.nrows() != image.dim() {
        return Err(Error::InvalidArgument(format!(
            "image of dimension {} for a form on R^{}",
            d.nrows(),
            image.dim()
        )));
    }
    let pulled = d.transpose() * image.matrix() * &d;
    Ok((pulled - domain.matrix()).amax())
}

/// The calibration map `(q, p) ↦ (2q, p)`, which scales the form by 2.
pub fn non_symplectic_control(v: &[f64]) -> Result<Vec<f64>> {
    let n = v.len() / 2;
    Ok(v.iter().enumerate().map(|(i, x)| if i < n { 2.0 * x } else { *x }).collect())
}
