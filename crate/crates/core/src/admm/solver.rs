use std::sync::Arc;

use super::params::AdmmParams;
use super::state::AdmmState;
use super::steps;
use super::stopping::stopping_check;
use super::subproblem::{ClosedFormOracle, SubproblemOracle};
use crate::error::{Error, Result};
use crate::operators::{objective, TwoBlockProblem};
use crate::termination::Termination;

/// Per-iteration record kept by [`AdmmSolver::solve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    pub rel_u: f64,
    pub rel_v: f64,
    pub rel_b: f64,
    pub primal_objective: Option<f64>,
    /// `‖Muᵏ + Nvᵏ − b‖_F`
    pub feasibility: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub inertia_increment: f64,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    /// Final state; for a diverged run, the last finite one.
    pub state: AdmmState,
    pub status: Termination,
    pub iterations: usize,
    pub trace: Vec<IterationRecord>,
}

pub struct AdmmSolver {
    problem: TwoBlockProblem,
    params: AdmmParams,
    oracle: Arc<dyn SubproblemOracle>,
}

impl std::fmt::Debug for AdmmSolver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AdmmSolver")
            .field("problem", &self.problem)
            .field("params", &self.params)
            .finish_non_exhaustive()
    }
}

impl AdmmSolver {
    /// Uses the closed-form block updates, which need `M` and `N` to be
    /// scaled identities. Use [`AdmmSolver::with_oracle`] otherwise.
    pub fn new(problem: TwoBlockProblem, params: AdmmParams) -> Result<Self> {
        if !ClosedFormOracle::supports(&problem) {
            return Err(Error::Config(
                "M and N are not scaled identities; supply a SubproblemOracle".into(),
            ));
        }
        Self::with_oracle(problem, params, Arc::new(ClosedFormOracle))
    }

    pub fn with_oracle(
        problem: TwoBlockProblem,
        params: AdmmParams,
        oracle: Arc<dyn SubproblemOracle>,
    ) -> Result<Self> {
        params.validate()?;
        Ok(AdmmSolver {
            problem,
            params,
            oracle,
        })
    }

    pub fn problem(&self) -> &TwoBlockProblem {
        &self.problem
    }

    pub fn params(&self) -> &AdmmParams {
        &self.params
    }

    pub fn step(&self, state: &AdmmState) -> Result<AdmmState> {
        steps::step(state, &self.problem, &self.params, self.oracle.as_ref())
    }

    /// Runs from `u = v = y = 0`.
    pub fn solve(&self) -> Result<SolveReport> {
        self.solve_from(AdmmState::zeros(&self.problem))
    }

    pub fn solve_from(&self, start: AdmmState) -> Result<SolveReport> {
        let mut state = start;
        let mut trace = Vec::new();
        let mut status = Termination::BudgetExhausted;
        let first = state.iteration;
        while state.iteration - first < self.params.max_iter {
            let next = match self.step(&state) {
                Ok(next) => next,
                Err(Error::Diverged { .. }) => {
                    status = Termination::Diverged;
                    break;
                }
                Err(e) => return Err(e),
            };
            let check = stopping_check(&self.problem, &state, &next, self.params.epsilon);
            trace.push(IterationRecord {
                iteration: next.iteration,
                rel_u: check.rel_u,
                rel_v: check.rel_v,
                rel_b: check.rel_b,
                primal_objective: self
                    .params
                    .record_objective
                    .then(|| objective(&self.problem, &next.u, &next.v)),
                feasibility: self
                    .problem
                    .constraint_residual(&next.u, &next.v)
                    .frobenius_norm(),
                alpha: next.last_step.alpha,
                lambda: next.last_step.lambda,
                inertia_increment: next.last_step.inertia_increment,
            });
            state = next;
            if check.stop {
                status = Termination::Converged;
                break;
            }
        }
        Ok(SolveReport {
            iterations: state.iteration - first,
            state,
            status,
            trace,
        })
    }
}
