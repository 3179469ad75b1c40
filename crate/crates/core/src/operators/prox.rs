use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{svd, DenseMatrix};

/// Relative slack allowed when evaluating indicator-valued conjugates, so
/// that points on a ball boundary up to rounding count as feasible.
pub const CONJUGATE_FEASIBILITY_TOL: f64 = 1e-9;

/// Proper, convex, lower semicontinuous function with a computable prox.
pub trait Proximable: Send + Sync + fmt::Debug {
    /// Function value; `f64::INFINITY` outside the domain.
    fn value(&self, x: &DenseMatrix) -> f64;

    /// `argmin_y step·f(y) + ½‖y − x‖²`.
    fn prox(&self, x: &DenseMatrix, step: f64) -> Result<DenseMatrix>;

    /// Fenchel conjugate `f*(z)`, when known in closed form.
    fn conjugate_value(&self, _z: &DenseMatrix) -> Option<f64> {
        None
    }
}

fn check_step(step: f64) -> Result<()> {
    if step > 0.0 && step.is_finite() {
        Ok(())
    } else {
        Err(Error::Argument(format!("prox step must be positive, got {step}")))
    }
}

fn ball_indicator(norm: f64, radius: f64) -> f64 {
    if norm <= radius * (1.0 + CONJUGATE_FEASIBILITY_TOL) + f64::MIN_POSITIVE {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Entrywise shrinkage `sign(x)·max(|x| − τ, 0)`.
pub fn soft_threshold(x: &DenseMatrix, tau: f64) -> DenseMatrix {
    assert!(tau >= 0.0, "threshold must be nonnegative, got {tau}");
    x.map(|v| {
        if v > tau {
            v - tau
        } else if v < -tau {
            v + tau
        } else {
            0.0
        }
    })
}

/// Singular value thresholding: `U diag(max(σ − τ, 0)) Vᵀ`.
pub fn svt(x: &DenseMatrix, tau: f64) -> Result<DenseMatrix> {
    check_step(tau)?;
    let s = svd(x)?;
    let shrunk: Vec<f64> = s.singular_values.iter().map(|&v| (v - tau).max(0.0)).collect();
    if shrunk.iter().all(|&v| v == 0.0) {
        return Ok(DenseMatrix::zeros(x.rows(), x.cols()));
    }
    Ok(s.recompose_with(&shrunk))
}

/// Prox of `γ f*` through the Moreau decomposition:
/// `prox_{γf*}(x) = x − γ·prox_{f/γ}(x/γ)`.
pub fn conjugate_prox(f: &dyn Proximable, x: &DenseMatrix, gamma: f64) -> Result<DenseMatrix> {
    check_step(gamma)?;
    let inner = f.prox(&x.scale(1.0 / gamma), 1.0 / gamma)?;
    Ok(DenseMatrix::lincomb(1.0, x, -gamma, &inner))
}

fn singular_values(x: &DenseMatrix) -> Vec<f64> {
    x.as_nalgebra().singular_values().iter().copied().collect()
}

/// `w·‖x‖_*`
#[derive(Debug, Clone, Copy)]
pub struct NuclearNorm {
    pub weight: f64,
}

impl NuclearNorm {
    pub fn new(weight: f64) -> Self {
        assert!(weight > 0.0, "weight must be positive");
        NuclearNorm { weight }
    }
}

impl Proximable for NuclearNorm {
    fn value(&self, x: &DenseMatrix) -> f64 {
        self.weight * singular_values(x).iter().sum::<f64>()
    }

    fn prox(&self, x: &DenseMatrix, step: f64) -> Result<DenseMatrix> {
        check_step(step)?;
        svt(x, self.weight * step)
    }

    /// Indicator of the spectral-norm ball of radius `w`.
    fn conjugate_value(&self, z: &DenseMatrix) -> Option<f64> {
        let spectral = singular_values(z).into_iter().fold(0.0, f64::max);
        Some(ball_indicator(spectral, self.weight))
    }
}

/// `w·Σ|xᵢⱼ|`
#[derive(Debug, Clone, Copy)]
pub struct L1Norm {
    pub weight: f64,
}

impl L1Norm {
    pub fn new(weight: f64) -> Self {
        assert!(weight > 0.0, "weight must be positive");
        L1Norm { weight }
    }
}

impl Proximable for L1Norm {
    fn value(&self, x: &DenseMatrix) -> f64 {
        self.weight * x.iter().map(|v| v.abs()).sum::<f64>()
    }

    fn prox(&self, x: &DenseMatrix, step: f64) -> Result<DenseMatrix> {
        check_step(step)?;
        Ok(soft_threshold(x, self.weight * step))
    }

    /// Indicator of the ℓ∞ ball of radius `w`.
    fn conjugate_value(&self, z: &DenseMatrix) -> Option<f64> {
        Some(ball_indicator(z.max_abs(), self.weight))
    }
}

/// `f ≡ 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroFunction;

impl Proximable for ZeroFunction {
    fn value(&self, _x: &DenseMatrix) -> f64 {
        0.0
    }

    fn prox(&self, x: &DenseMatrix, step: f64) -> Result<DenseMatrix> {
        check_step(step)?;
        Ok(x.clone())
    }

    fn conjugate_value(&self, z: &DenseMatrix) -> Option<f64> {
        Some(ball_indicator(z.max_abs(), 0.0))
    }
}

/// `(w/2)·‖x − a‖²`
#[derive(Debug, Clone)]
pub struct SquaredDistance {
    pub center: DenseMatrix,
    pub weight: f64,
}

impl SquaredDistance {
    pub fn new(center: DenseMatrix, weight: f64) -> Self {
        assert!(weight > 0.0, "weight must be positive");
        SquaredDistance { center, weight }
    }
}

impl Proximable for SquaredDistance {
    fn value(&self, x: &DenseMatrix) -> f64 {
        0.5 * self.weight * (x - &self.center).frobenius_norm_squared()
    }

    fn prox(&self, x: &DenseMatrix, step: f64) -> Result<DenseMatrix> {
        check_step(step)?;
        let sw = step * self.weight;
        Ok(DenseMatrix::lincomb(1.0 / (1.0 + sw), x, sw / (1.0 + sw), &self.center))
    }

    /// `⟨z, a⟩ + ‖z‖²/(2w)`
    fn conjugate_value(&self, z: &DenseMatrix) -> Option<f64> {
        Some(z.dot(&self.center) + z.frobenius_norm_squared() / (2.0 * self.weight))
    }
}
