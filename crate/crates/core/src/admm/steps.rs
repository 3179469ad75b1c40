//! One iteration of each ADMM variant. Every step reads `state` only and
//! returns the successor; on failure `state` is still the last good one.

use super::params::{adaptive_inertia_from_norm, AdmmParams, AlphaRule, Variant};
use super::state::{AdmmState, StepRecord};
use super::subproblem::{Subproblem, SubproblemOracle};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::operators::TwoBlockProblem;

fn guard(k: usize, result: Result<DenseMatrix>) -> Result<DenseMatrix> {
    match result {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(_) | Err(Error::NonFinite) => Err(Error::Diverged { iteration: k }),
        Err(e) => Err(e),
    }
}

fn finish(k: usize, next: AdmmState) -> Result<AdmmState> {
    if next.is_finite() {
        Ok(next)
    } else {
        Err(Error::Diverged { iteration: k })
    }
}

/// `argmin_u F(u) + ⟨c, Mu⟩ + (γ/2)‖Mu + Nv − b‖²`
fn u_update(
    k: usize,
    problem: &TwoBlockProblem,
    oracle: &dyn SubproblemOracle,
    multiplier: &DenseMatrix,
    v: &DenseMatrix,
    gamma: f64,
    proximal: Option<(f64, &DenseMatrix)>,
) -> Result<DenseMatrix> {
    let target = &problem.b - &problem.n.apply(v);
    let sub = Subproblem {
        multiplier,
        target: &target,
        gamma,
        proximal,
    };
    guard(k, oracle.solve_u(problem, &sub))
}

/// Dispatches on `params.variant`.
pub fn step(
    state: &AdmmState,
    problem: &TwoBlockProblem,
    params: &AdmmParams,
    oracle: &dyn SubproblemOracle,
) -> Result<AdmmState> {
    match params.variant {
        Variant::Classical => step_classical(state, problem, params, oracle),
        Variant::Generalized => step_generalized(state, problem, params, oracle),
        Variant::InertialProximal => step_inertial_proximal(state, problem, params, oracle),
        Variant::Inertial => step_inertial(state, problem, params, oracle),
    }
}

/// ```text
/// uᵏ⁺¹ = argmin F(u) + ⟨yᵏ, Mu⟩ + (γ/2)‖Mu + Nvᵏ − b‖²
/// vᵏ⁺¹ = argmin G(v) + ⟨yᵏ, Nv⟩ + (γ/2)‖Muᵏ⁺¹ + Nv − b‖²
/// yᵏ⁺¹ = yᵏ + γ(Muᵏ⁺¹ + Nvᵏ⁺¹ − b)
/// ```
pub fn step_classical(
    state: &AdmmState,
    problem: &TwoBlockProblem,
    params: &AdmmParams,
    oracle: &dyn SubproblemOracle,
) -> Result<AdmmState> {
    let k = state.iteration + 1;
    let gamma = params.gamma;
    let u = u_update(k, problem, oracle, &state.y, &state.v, gamma, None)?;

    let target = &problem.b - &problem.m.apply(&u);
    let sub = Subproblem {
        multiplier: &state.y,
        target: &target,
        gamma,
        proximal: None,
    };
    let v = guard(k, oracle.solve_v(problem, &sub))?;

    let mut y = state.y.clone();
    y.axpy(gamma, &problem.constraint_residual(&u, &v));

    let record = StepRecord {
        alpha: 0.0,
        lambda: 1.0,
        inertia_increment: 0.0,
    };
    finish(k, state.advance(u, v, y, state.p.clone(), record))
}

/// ```text
/// rᵏ   = Muᵏ⁺¹ + Nvᵏ − b
/// vᵏ⁺¹ = argmin G(v) + ⟨yᵏ, Nv⟩ + (γ/2)‖N(v − vᵏ) + λₖ rᵏ‖²
/// yᵏ⁺¹ = yᵏ + γ(N(vᵏ⁺¹ − vᵏ) + λₖ rᵏ)
/// ```
/// with the classical u-update.
pub fn step_generalized(
    state: &AdmmState,
    problem: &TwoBlockProblem,
    params: &AdmmParams,
    oracle: &dyn SubproblemOracle,
) -> Result<AdmmState> {
    let k = state.iteration + 1;
    let gamma = params.gamma;
    let lambda = params.lambda.at(k);
    let u = u_update(k, problem, oracle, &state.y, &state.v, gamma, None)?;

    let nv = problem.n.apply(&state.v);
    let residual = problem.m.apply(&u) + &nv - &problem.b;
    let target = DenseMatrix::lincomb(1.0, &nv, -lambda, &residual);
    let sub = Subproblem {
        multiplier: &state.y,
        target: &target,
        gamma,
        proximal: None,
    };
    let v = guard(k, oracle.solve_v(problem, &sub))?;

    let mut dual_step = problem.n.apply(&v) - &nv;
    dual_step.axpy(lambda, &residual);
    let mut y = state.y.clone();
    y.axpy(gamma, &dual_step);

    let record = StepRecord {
        alpha: 0.0,
        lambda,
        inertia_increment: 0.0,
    };
    finish(k, state.advance(u, v, y, state.p.clone(), record))
}

/// ```text
/// (ū, v̄, ȳ) = (uᵏ, vᵏ, yᵏ) + αₖ(uᵏ − uᵏ⁻¹, vᵏ − vᵏ⁻¹, yᵏ − yᵏ⁻¹)
/// uᵏ⁺¹ = argmin F(u) + ⟨ȳ, Mu⟩ + (γ/2)‖Mu + Nv̄ − b‖² + ½‖u − ū‖²_S
/// yᵏ⁺¹ = ȳ + γ(Muᵏ⁺¹ + Nv̄ − b)
/// vᵏ⁺¹ = argmin G(v) + ⟨yᵏ⁺¹, Nv⟩ + (γ/2)‖Muᵏ⁺¹ + Nv − b‖² + ½‖v − v̄‖²_T
/// ```
/// with `S = s·I`, `T = t·I`.
pub fn step_inertial_proximal(
    state: &AdmmState,
    problem: &TwoBlockProblem,
    params: &AdmmParams,
    oracle: &dyn SubproblemOracle,
) -> Result<AdmmState> {
    let k = state.iteration + 1;
    let gamma = params.gamma;
    let alpha = match &params.alpha {
        AlphaRule::Fixed(s) => s.at(k),
        AlphaRule::Adaptive { .. } => {
            return Err(Error::Config(
                "inertial proximal ADMM takes a fixed inertia schedule".into(),
            ))
        }
    };
    let extrapolate = |cur: &DenseMatrix, prev: &DenseMatrix| {
        let mut out = cur.clone();
        if alpha != 0.0 {
            out.axpy(alpha, &(cur - prev));
        }
        out
    };
    let u_bar = extrapolate(&state.u, &state.u_prev);
    let v_bar = extrapolate(&state.v, &state.v_prev);
    let y_bar = extrapolate(&state.y, &state.y_prev);

    let u = u_update(
        k,
        problem,
        oracle,
        &y_bar,
        &v_bar,
        gamma,
        Some((params.proximal_s, &u_bar)),
    )?;

    let mut y = y_bar;
    y.axpy(gamma, &problem.constraint_residual(&u, &v_bar));

    let target = &problem.b - &problem.m.apply(&u);
    let sub = Subproblem {
        multiplier: &y,
        target: &target,
        gamma,
        proximal: Some((params.proximal_t, &v_bar)),
    };
    let v = guard(k, oracle.solve_v(problem, &sub))?;

    let record = StepRecord {
        alpha,
        lambda: 1.0,
        inertia_increment: 0.0,
    };
    finish(k, state.advance(u, v, y, state.p.clone(), record))
}

/// ```text
/// uᵏ⁺¹ = argmin F(u) + ⟨yᵏ, Mu⟩ + (γ/2)‖Mu + Nvᵏ − b‖²
/// rᵏ   = Muᵏ⁺¹ + Nvᵏ − b,   α = αₖ₊₁,   c = yᵏ + α pᵏ
/// vᵏ⁺¹ = argmin G(v) + ⟨c, Nv⟩ + (γ/2)‖N(v − vᵏ) + (1 + α)λₖ rᵏ‖²
/// yᵏ⁺¹ = c + γ[N(vᵏ⁺¹ − vᵏ) + (1 + α)λₖ rᵏ]
/// pᵏ⁺¹ = α[pᵏ + γλₖ rᵏ]
/// ```
///
/// `αₖ₊₁` is taken from the schedule, or from the adaptive rule once
/// `uᵏ⁺¹` is known.
pub fn step_inertial(
    state: &AdmmState,
    problem: &TwoBlockProblem,
    params: &AdmmParams,
    oracle: &dyn SubproblemOracle,
) -> Result<AdmmState> {
    let k = state.iteration + 1;
    let gamma = params.gamma;
    let lambda = params.lambda.at(k);
    let u = u_update(k, problem, oracle, &state.y, &state.v, gamma, None)?;

    let nv = problem.n.apply(&state.v);
    let residual = problem.m.apply(&u) + &nv - &problem.b;
    // q = pᵏ + γλₖ rᵏ
    let mut q = state.p.clone();
    q.axpy(gamma * lambda, &residual);
    let q_norm_sq = q.frobenius_norm_squared();
    let alpha = match &params.alpha {
        AlphaRule::Fixed(s) => s.at(k + 1),
        AlphaRule::Adaptive { cap } => adaptive_inertia_from_norm(k, q_norm_sq, *cap),
    };
    let relax = (1.0 + alpha) * lambda;

    let mut multiplier = state.y.clone();
    if alpha != 0.0 {
        multiplier.axpy(alpha, &state.p);
    }
    let target = DenseMatrix::lincomb(1.0, &nv, -relax, &residual);
    let sub = Subproblem {
        multiplier: &multiplier,
        target: &target,
        gamma,
        proximal: None,
    };
    let v = guard(k, oracle.solve_v(problem, &sub))?;

    let mut dual_step = problem.n.apply(&v) - &nv;
    dual_step.axpy(relax, &residual);
    let mut y = multiplier;
    y.axpy(gamma, &dual_step);

    let p = q.scale(alpha);

    let record = StepRecord {
        alpha,
        lambda,
        inertia_increment: alpha * q_norm_sq,
    };
    finish(k, state.advance(u, v, y, p, record))
}
