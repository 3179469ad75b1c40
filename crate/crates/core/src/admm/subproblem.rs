use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::operators::{LinearMap, Proximable, TwoBlockProblem};

/// One block update
///
/// ```text
/// argmin_x  h(x) + ⟨c, K x⟩ + (γ/2)‖K x − d‖² + (s/2)‖x − x̄‖²
/// ```
///
/// where `(h, K)` is `(F, M)` for the u-block and `(G, N)` for the v-block.
#[derive(Debug, Clone, Copy)]
pub struct Subproblem<'a> {
    /// `c`
    pub multiplier: &'a DenseMatrix,
    /// `d`
    pub target: &'a DenseMatrix,
    pub gamma: f64,
    /// `(s, x̄)`
    pub proximal: Option<(f64, &'a DenseMatrix)>,
}

/// Solves the block minimizations of the ADMM family.
pub trait SubproblemOracle: Send + Sync {
    fn solve_u(&self, problem: &TwoBlockProblem, sub: &Subproblem<'_>) -> Result<DenseMatrix>;
    fn solve_v(&self, problem: &TwoBlockProblem, sub: &Subproblem<'_>) -> Result<DenseMatrix>;
}

/// Closed-form block updates for `K = κ·I`, reducing each subproblem to a
/// single prox evaluation:
///
/// ```text
/// x = prox_{h/ρ}((γκ d − κ c + s x̄)/ρ),   ρ = γκ² + s
/// ```
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedFormOracle;

impl ClosedFormOracle {
    pub fn supports(problem: &TwoBlockProblem) -> bool {
        problem.m.scaled_identity_factor().is_some() && problem.n.scaled_identity_factor().is_some()
    }

    fn solve(
        map: &dyn LinearMap,
        h: &dyn Proximable,
        sub: &Subproblem<'_>,
        block: &'static str,
    ) -> Result<DenseMatrix> {
        let kappa = map.scaled_identity_factor().ok_or_else(|| {
            Error::Config(format!(
                "{block}-subproblem has no closed form for a general linear map; supply a SubproblemOracle"
            ))
        })?;
        let (s, anchor) = match sub.proximal {
            Some((s, a)) if s > 0.0 => (s, Some(a)),
            _ => (0.0, None),
        };
        let rho = sub.gamma * kappa * kappa + s;
        if !(rho > 0.0) {
            return Err(Error::Config(format!(
                "{block}-subproblem is not strongly convex (γκ² + s = {rho})"
            )));
        }
        let mut point = if kappa == 1.0 && s == 0.0 {
            // the common case, kept free of extra roundoff
            DenseMatrix::lincomb(1.0, sub.target, -1.0 / sub.gamma, sub.multiplier)
        } else {
            DenseMatrix::lincomb(
                sub.gamma * kappa / rho,
                sub.target,
                -kappa / rho,
                sub.multiplier,
            )
        };
        if let Some(a) = anchor {
            point.axpy(s / rho, a);
        }
        h.prox(&point, 1.0 / rho)
    }
}

impl SubproblemOracle for ClosedFormOracle {
    fn solve_u(&self, problem: &TwoBlockProblem, sub: &Subproblem<'_>) -> Result<DenseMatrix> {
        Self::solve(problem.m.as_ref(), problem.f.as_ref(), sub, "u")
    }

    fn solve_v(&self, problem: &TwoBlockProblem, sub: &Subproblem<'_>) -> Result<DenseMatrix> {
        Self::solve(problem.n.as_ref(), problem.g.as_ref(), sub, "v")
    }
}
