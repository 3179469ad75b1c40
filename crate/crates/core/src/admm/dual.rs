//! The link between the inertial ADMM and inertial Douglas-Rachford on the
//! dual problem `0 ∈ A y + B y` with
//!
//! ```text
//! A = ∂(F* ∘ (−M*)),   B = ∂(G* ∘ (−N*)) + b
//! ```
//!
//! Started from `w = γb`, inertial Douglas-Rachford with [`dual_resolvents`]
//! and [`dual_params`] produces `wᵏ = yᵏ + γb − pᵏ − γNvᵏ` for the iterates of
//! [`Variant::Inertial`](super::Variant::Inertial). Step `k` of the splitting
//! returns `J_{γB}(w̃ᵏ) = yᵏ` and `xᵏ − yᵏ = γ(Muᵏ⁺¹ + Nvᵏ − b)`.

use super::params::{AdmmParams, AlphaRule, Variant};
use super::state::AdmmState;
use crate::dr::{DrParams, ResolventOracle};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::operators::{conjugate_prox, LinearMap, Proximable, TwoBlockProblem};

/// Resolvent of `∂(h* ∘ (−κI)) + shift` for a scaled identity `κI`:
///
/// ```text
/// J_{γ·}(z) = −(1/κ) · prox_{γκ² h*}(−κ(z − γ·shift))
/// ```
pub struct DualResolvent<'a> {
    h: &'a dyn Proximable,
    kappa: f64,
    shift: Option<&'a DenseMatrix>,
}

impl<'a> DualResolvent<'a> {
    pub fn new(h: &'a dyn Proximable, map: &dyn LinearMap, shift: Option<&'a DenseMatrix>) -> Result<Self> {
        let kappa = map.scaled_identity_factor().ok_or_else(|| {
            Error::Config("dual resolvents are implemented for scaled identities only".into())
        })?;
        Ok(DualResolvent { h, kappa, shift })
    }
}

impl ResolventOracle for DualResolvent<'_> {
    fn resolve(&self, point: &DenseMatrix, gamma: f64) -> Result<DenseMatrix> {
        let mut z = point.clone();
        if let Some(b) = self.shift {
            z.axpy(-gamma, b);
        }
        let k = self.kappa;
        let w = conjugate_prox(self.h, &z.scale(-k), gamma * k * k)?;
        Ok(w.scale(-1.0 / k))
    }
}

/// `(J_{γA}, J_{γB})` for `problem`.
pub fn dual_resolvents(problem: &TwoBlockProblem) -> Result<(DualResolvent<'_>, DualResolvent<'_>)> {
    Ok((
        DualResolvent::new(problem.f.as_ref(), problem.m.as_ref(), None)?,
        DualResolvent::new(problem.g.as_ref(), problem.n.as_ref(), Some(&problem.b))?,
    ))
}

/// `yᵏ + γb − pᵏ − γNvᵏ`
pub fn dr_point(problem: &TwoBlockProblem, state: &AdmmState, gamma: f64) -> DenseMatrix {
    let mut w = &state.y - &state.p;
    w.axpy(gamma, &problem.b);
    w.axpy(-gamma, &problem.n.apply(&state.v));
    w
}

/// Recovers `vᵏ` from one Douglas-Rachford step: with `w̃` the extrapolated
/// point and `y = J_{γB}(w̃)`, `Nvᵏ = b + (y − w̃)/γ`.
pub fn implied_v(
    problem: &TwoBlockProblem,
    y: &DenseMatrix,
    extrapolated: &DenseMatrix,
    gamma: f64,
) -> Result<DenseMatrix> {
    let kappa = problem.n.scaled_identity_factor().ok_or_else(|| {
        Error::Config("v can only be recovered for a scaled identity N".into())
    })?;
    let mut nv = problem.b.clone();
    nv.axpy(1.0 / gamma, &(y - extrapolated));
    Ok(nv.scale(1.0 / kappa))
}

/// Douglas-Rachford parameters that reproduce an inertial ADMM run with a
/// fixed inertia schedule.
pub fn dual_params(params: &AdmmParams) -> Result<DrParams> {
    if params.variant != Variant::Inertial {
        return Err(Error::Config(
            "only the inertial variant has a Douglas-Rachford counterpart".into(),
        ));
    }
    let AlphaRule::Fixed(alpha) = &params.alpha else {
        return Err(Error::Config(
            "the adaptive inertia depends on the run and has no fixed counterpart".into(),
        ));
    };
    Ok(DrParams {
        gamma: params.gamma,
        alpha: alpha.clone(),
        lambda: params.lambda.clone(),
        alpha_bar: params.alpha_bound(),
        regime: params.regime,
    })
}
