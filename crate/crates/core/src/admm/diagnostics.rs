use super::state::AdmmState;
use super::stopping::relative_change;
use crate::error::Result;
use crate::linalg::svd;
use crate::operators::{objective, TwoBlockProblem};

/// Singular values above `RANK_REL_TOL · σ₁` count towards the rank.
pub const RANK_REL_TOL: f64 = 1e-6;

/// Optimality residuals of a point `(u, v, y)`:
///
/// ```text
/// r1 = ‖u − prox_F(u − M*y)‖,  r2 = ‖v − prox_G(v − N*y)‖,  r3 = ‖Mu + Nv − b‖
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KktResiduals {
    pub stationarity_u: f64,
    pub stationarity_v: f64,
    pub feasibility: f64,
}

impl KktResiduals {
    pub fn max(&self) -> f64 {
        self.stationarity_u
            .max(self.stationarity_v)
            .max(self.feasibility)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    /// Relative changes against the history held in the state, as in the
    /// stopping test.
    pub rel_u: f64,
    pub rel_v: f64,
    pub rel_b: f64,
    pub primal_objective: f64,
    /// `−F*(−M*x) − G*(−N*y) − ⟨y, b⟩` with `x = yᵏ⁻¹ + γ(Muᵏ + Nvᵏ⁻¹ − b)`,
    /// when both conjugates are available.
    pub dual_objective: Option<f64>,
    pub kkt: KktResiduals,
    /// Numerical rank of `u`.
    pub rank_u: usize,
}

pub fn kkt_residuals(problem: &TwoBlockProblem, state: &AdmmState) -> Result<KktResiduals> {
    let pu = problem
        .f
        .prox(&(&state.u - &problem.m.adjoint_apply(&state.y)), 1.0)?;
    let pv = problem
        .g
        .prox(&(&state.v - &problem.n.adjoint_apply(&state.y)), 1.0)?;
    Ok(KktResiduals {
        stationarity_u: state.u.distance(&pu),
        stationarity_v: state.v.distance(&pv),
        feasibility: problem
            .constraint_residual(&state.u, &state.v)
            .frobenius_norm(),
    })
}

/// `−F*(−M*x) − G*(−N*y) − ⟨y, b⟩` with `x = yᵏ⁻¹ + γ(Muᵏ + Nvᵏ⁻¹ − b)`.
///
/// The u-update makes `−M*x ∈ ∂F(uᵏ)` and the v-update keeps `−N*y` in the
/// domain of `G*` for the RPCP blocks, so both terms are finite there.
pub fn dual_objective(problem: &TwoBlockProblem, state: &AdmmState, gamma: f64) -> Option<f64> {
    let mut x = state.y_prev.clone();
    x.axpy(gamma, &problem.constraint_residual(&state.u, &state.v_prev));
    let fc = problem.f.conjugate_value(&-problem.m.adjoint_apply(&x))?;
    let gc = problem.g.conjugate_value(&-problem.n.adjoint_apply(&state.y))?;
    Some(-fc - gc - state.y.dot(&problem.b))
}

pub fn diagnostics(problem: &TwoBlockProblem, state: &AdmmState, gamma: f64) -> Result<Diagnostics> {
    Ok(Diagnostics {
        rel_u: relative_change(&state.u_prev, &state.u),
        rel_v: relative_change(&state.v_prev, &state.v),
        rel_b: relative_change(
            &problem.reconstruct(&state.u_prev, &state.v_prev),
            &problem.reconstruct(&state.u, &state.v),
        ),
        primal_objective: objective(problem, &state.u, &state.v),
        dual_objective: dual_objective(problem, state, gamma),
        kkt: kkt_residuals(problem, state)?,
        rank_u: svd(&state.u)?.numerical_rank(RANK_REL_TOL),
    })
}
