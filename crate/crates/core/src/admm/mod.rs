//! The ADMM family for `min F(u) + G(v) s.t. Mu + Nv = b`.
//!
//! All variants start from `u = v = y = 0` and stop once the relative
//! changes of `u`, `v` and `Mu + Nv` all drop to `ε` or below.

mod diagnostics;
mod dual;
mod params;
mod solver;
mod state;
mod steps;
mod stopping;
mod subproblem;

pub use diagnostics::{
    diagnostics, dual_objective, kkt_residuals, Diagnostics, KktResiduals, RANK_REL_TOL,
};
pub use dual::{dr_point, dual_params, dual_resolvents, implied_v, DualResolvent};
pub use params::{
    adaptive_inertia, coupled_relaxation, AdmmParams, AlphaRule, CoupledRelaxation, Variant,
    DEFAULT_ALPHA_CAP, DEFAULT_EPSILON, DEFAULT_MAX_ITER,
};
pub use solver::{AdmmSolver, IterationRecord, SolveReport};
pub use state::{AdmmState, StepRecord};
pub use steps::{step, step_classical, step_generalized, step_inertial, step_inertial_proximal};
pub use stopping::{relative_change, stopping_check, StopCheck};
pub use subproblem::{ClosedFormOracle, Subproblem, SubproblemOracle};
