//! Fast self-checks: the relaxation table, the reductions between variants,
//! the dual Douglas-Rachford correspondence and a closed-form instance.

use std::sync::Arc;

use iadmm_core::admm::{
    coupled_relaxation, dr_point, dual_params, dual_resolvents, implied_v, AdmmParams, AdmmSolver,
    AdmmState, DEFAULT_ALPHA_CAP,
};
use iadmm_core::dr::{dr_step, DrState};
use iadmm_core::operators::{IdentityMap, SquaredDistance};
use iadmm_core::rpcp::generate;
use iadmm_core::{DenseMatrix, Result, TwoBlockProblem};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {}: {}", self.name, self.detail)
    }
}

/// `(α, λ)` pairs of the coupled rule at `σ = 0.01`, to 4 decimals.
pub const RELAXATION_TABLE: [(f64, f64); 4] =
    [(0.05, 1.7874), (0.1, 1.6019), (0.2, 1.2496), (0.3, 0.9243)];
pub const REDUCTION_TOL: f64 = 1e-12;
pub const DUAL_TOL: f64 = 1e-8;
pub const ANALYTIC_TOL: f64 = 1e-8;

pub fn relaxation_table() -> Result<Check> {
    let mut worst: f64 = 0.0;
    for (alpha, expect) in RELAXATION_TABLE {
        let got = coupled_relaxation(alpha, 0.01)?.lambda;
        worst = worst.max((got - expect).abs());
    }
    Ok(Check {
        name: "relaxation table",
        passed: worst < 5e-5,
        detail: format!("max |λ − table| = {worst:.2e} (4 d.p. needs < 5e-5)"),
    })
}

fn iterates(problem: &TwoBlockProblem, params: AdmmParams, n: usize) -> Result<Vec<AdmmState>> {
    let solver = AdmmSolver::new(problem.clone(), params)?;
    let mut states = vec![AdmmState::zeros(problem)];
    for _ in 0..n {
        let next = solver.step(states.last().expect("nonempty"))?;
        states.push(next);
    }
    Ok(states)
}

/// Max over iterations and `(u, v, y)` of `‖a − b‖_F / max(1, ‖a‖_F)`.
pub fn iterate_gap(a: &[AdmmState], b: &[AdmmState]) -> f64 {
    let rel = |x: &DenseMatrix, y: &DenseMatrix| x.distance(y) / x.frobenius_norm().max(1.0);
    a.iter()
        .zip(b)
        .map(|(x, y)| rel(&x.u, &y.u).max(rel(&x.v, &y.v)).max(rel(&x.y, &y.y)))
        .fold(0.0, f64::max)
}

/// m = 40 RPCP instance, 30 iterations.
pub fn reduction_chain() -> Result<Check> {
    let gamma = 0.01;
    let problem = generate(40, 2, 80, 2024)?.as_problem();
    let a = iterates(&problem, AdmmParams::inertial(gamma, 0.0, 1.6, 0.01), 30)?;
    let b = iterates(&problem, AdmmParams::generalized(gamma, 1.6), 30)?;
    let c = iterates(&problem, AdmmParams::generalized(gamma, 1.0), 30)?;
    let d = iterates(&problem, AdmmParams::classical(gamma), 30)?;
    let (g1, g2) = (iterate_gap(&a, &b), iterate_gap(&c, &d));
    Ok(Check {
        name: "reduction chain",
        passed: g1 <= REDUCTION_TOL && g2 <= REDUCTION_TOL,
        detail: format!(
            "inertial(α=0) vs gadmm {g1:.2e}, gadmm(λ=1) vs admm {g2:.2e} (tol {REDUCTION_TOL:.0e})"
        ),
    })
}

/// Largest relative discrepancy in `yᵏ` and `vᵏ` between the inertial ADMM
/// and inertial Douglas-Rachford on the dual, over `n` iterations.
pub fn dual_discrepancy(alpha: f64, lambda: f64, n: usize) -> Result<f64> {
    let problem = generate(20, 2, 20, 11)?.as_problem();
    let params = AdmmParams::inertial(0.01, alpha, lambda, 0.01);
    let gamma = params.gamma;
    let solver = AdmmSolver::new(problem.clone(), params.clone())?;
    let (ra, rb) = dual_resolvents(&problem)?;
    let dp = dual_params(&params)?;
    let mut admm = AdmmState::zeros(&problem);
    let mut dr = DrState::new(dr_point(&problem, &admm, gamma));
    let mut worst: f64 = 0.0;
    for k in 1..=n {
        let ext = dr.extrapolated(dp.alpha.at(k));
        let next_dr = dr_step(&dr, &ra, &rb, &dp)?;
        let v = implied_v(&problem, &next_dr.y, &ext, gamma)?;
        worst = worst
            .max(next_dr.y.distance(&admm.y) / (1.0 + admm.y.frobenius_norm()))
            .max(v.distance(&admm.v) / (1.0 + admm.v.frobenius_norm()));
        admm = solver.step(&admm)?;
        dr = next_dr;
    }
    Ok(worst)
}

pub fn dual_equivalence() -> Result<Check> {
    let a = dual_discrepancy(0.2, 1.2496, 50)?;
    let b = dual_discrepancy(0.0, 1.0, 50)?;
    Ok(Check {
        name: "dual Douglas-Rachford equivalence",
        passed: a <= DUAL_TOL && b <= DUAL_TOL,
        detail: format!("(0.2, 1.2496): {a:.2e}, (0, 1): {b:.2e} (tol {DUAL_TOL:.0e})"),
    })
}

/// `½(u − 3)² + ½(v + 1)²` subject to `u + v = 1`, with `γ = 1`.
pub fn analytic_problem() -> TwoBlockProblem {
    let s = DenseMatrix::scalar;
    TwoBlockProblem::new(
        Arc::new(SquaredDistance::new(s(3.0), 1.0)),
        Arc::new(SquaredDistance::new(s(-1.0), 1.0)),
        Arc::new(IdentityMap::new(1, 1)),
        Arc::new(IdentityMap::new(1, 1)),
        s(1.0),
    )
    .expect("scalar problem")
}

pub fn analytic_instance() -> Result<Check> {
    let solvers = [
        ("ADMM", AdmmParams::classical(1.0)),
        ("GADMM", AdmmParams::generalized(1.0, 1.6)),
        ("iADMM-proximal", AdmmParams::inertial_proximal(1.0, 0.3)),
        ("iADMM-fixed", AdmmParams::inertial(1.0, 0.2, 1.2496, 0.01)),
        (
            "iADMM-adaptive",
            AdmmParams::inertial_adaptive(1.0, 1.5, DEFAULT_ALPHA_CAP),
        ),
    ];
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for (name, params) in solvers {
        let params = params.with_tolerance(1e-15).with_max_iter(500);
        let report = AdmmSolver::new(analytic_problem(), params)?.solve()?;
        let st = &report.state;
        let err = (st.u.get(0, 0) - 2.5)
            .abs()
            .max((st.v.get(0, 0) + 1.5).abs())
            .max((st.y.get(0, 0) - 0.5).abs());
        worst = worst.max(err);
        parts.push(format!("{name} {err:.1e}"));
    }
    Ok(Check {
        name: "analytic instance",
        passed: worst < ANALYTIC_TOL,
        detail: format!("{} (tol {ANALYTIC_TOL:.0e})", parts.join(", ")),
    })
}

pub fn run_all() -> Result<Vec<Check>> {
    Ok(vec![
        relaxation_table()?,
        reduction_chain()?,
        dual_equivalence()?,
        analytic_instance()?,
    ])
}
