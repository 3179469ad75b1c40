//! Inertial Douglas-Rachford splitting for `0 ∈ A x + B x`.
//!
//! One step, with `w̃ = wᵏ + αₖ(wᵏ − wᵏ⁻¹)`:
//!
//! ```text
//! yᵏ   = J_{γB}(w̃)
//! xᵏ   = J_{γA}(2yᵏ − w̃)
//! wᵏ⁺¹ = w̃ + λₖ(xᵏ − yᵏ)
//! ```
//!
//! Two parameter regimes are supported. With a nondecreasing inertia
//! sequence bounded by `ᾱ < 1` the relaxation must satisfy the `(δ, σ)`
//! coupling checked by [`validate_params`]. Alternatively any `αₖ ≤ ᾱ < 1`
//! and `λₖ` bounded away from 0 and 2 may be used, provided the caller keeps
//! `Σ αₖ‖wᵏ − wᵏ⁻¹‖²` finite along the run.
//!
//! The iteration starts from `w⁰ = w¹`, so no restriction on `α₁` is needed.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::operators::Proximable;
use crate::schedule::Schedule;
use crate::termination::Termination;

/// Number of leading terms of a non-constant schedule inspected by
/// [`validate_params`].
pub const VALIDATION_HORIZON: usize = 10_000;

/// Resolvent `J_{γT} = (I + γT)⁻¹` of a maximally monotone operator `T`.
pub trait ResolventOracle: Send + Sync {
    fn resolve(&self, point: &DenseMatrix, gamma: f64) -> Result<DenseMatrix>;
}

/// Resolvent of `∂f`, i.e. `prox_{γf}`.
#[derive(Debug, Clone)]
pub struct ProxResolvent(pub Arc<dyn Proximable>);

impl ResolventOracle for ProxResolvent {
    fn resolve(&self, point: &DenseMatrix, gamma: f64) -> Result<DenseMatrix> {
        self.0.prox(point, gamma)
    }
}

/// Resolvent of the zero operator (the identity map).
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroResolvent;

impl ResolventOracle for ZeroResolvent {
    fn resolve(&self, point: &DenseMatrix, _gamma: f64) -> Result<DenseMatrix> {
        Ok(point.clone())
    }
}

/// Resolvent given by a closure `(point, γ) ↦ J_{γT}(point)`.
pub struct FnResolvent<F>(pub F);

impl<F> ResolventOracle for FnResolvent<F>
where
    F: Fn(&DenseMatrix, f64) -> Result<DenseMatrix> + Send + Sync,
{
    fn resolve(&self, point: &DenseMatrix, gamma: f64) -> Result<DenseMatrix> {
        (self.0)(point, gamma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DrRegime {
    /// `αₖ` nondecreasing in `[0, ᾱ]`, `λₖ` bounded by [`relaxation_bound`].
    NondecreasingInertia { sigma: f64, delta: f64 },
    /// `0 ≤ αₖ ≤ ᾱ < 1` and `0 < λ̲ ≤ λₖ ≤ λ̄ < 2`; summability of the
    /// inertial increments is the caller's responsibility.
    SummableInertia,
}

#[derive(Debug, Clone)]
pub struct DrParams {
    pub gamma: f64,
    pub alpha: Schedule,
    pub lambda: Schedule,
    pub alpha_bar: f64,
    pub regime: DrRegime,
}

impl DrParams {
    /// Plain Douglas-Rachford: `αₖ ≡ 0`, `λₖ ≡ 1`.
    pub fn classical(gamma: f64) -> Self {
        DrParams {
            gamma,
            alpha: Schedule::Constant(0.0),
            lambda: Schedule::Constant(1.0),
            alpha_bar: 0.0,
            regime: DrRegime::SummableInertia,
        }
    }
}

/// Lower bound `(α²(1+α) + ασ)/(1 − α²)` that `δ` must strictly exceed.
pub fn delta_lower_bound(alpha: f64, sigma: f64) -> f64 {
    (alpha * alpha * (1.0 + alpha) + alpha * sigma) / (1.0 - alpha * alpha)
}

/// Largest admissible relaxation
/// `2(δ − α[α(1+α) + αδ + σ]) / (δ[1 + α(1+α) + αδ + σ])`.
pub fn relaxation_bound(alpha: f64, delta: f64, sigma: f64) -> f64 {
    let inner = alpha * (1.0 + alpha) + alpha * delta + sigma;
    2.0 * (delta - alpha * inner) / (delta * (1.0 + inner))
}

/// A failed parameter condition, with both sides evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub condition: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    /// Iteration index for per-iteration conditions.
    pub iteration: Option<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated: lhs = {}, rhs = {}", self.condition, self.lhs, self.rhs)?;
        if let Some(k) = self.iteration {
            write!(f, " (k = {k})")?;
        }
        Ok(())
    }
}

fn require(
    out: &mut Vec<Violation>,
    ok: bool,
    condition: &'static str,
    lhs: f64,
    rhs: f64,
    iteration: Option<usize>,
) {
    if !ok {
        out.push(Violation {
            condition,
            lhs,
            rhs,
            iteration,
        });
    }
}

fn indexed(samples: &[f64]) -> impl Iterator<Item = (Option<usize>, f64)> + '_ {
    let single = samples.len() == 1;
    samples
        .iter()
        .enumerate()
        .map(move |(i, &v)| (if single { None } else { Some(i + 1) }, v))
}

/// Checks the static parameter conditions of the selected regime.
///
/// Non-constant schedules are checked over their first
/// [`VALIDATION_HORIZON`] terms.
pub fn validate_params(p: &DrParams) -> std::result::Result<(), Vec<Violation>> {
    let mut v = Vec::new();
    require(&mut v, p.gamma > 0.0 && p.gamma.is_finite(), "γ > 0", p.gamma, 0.0, None);
    require(&mut v, p.alpha_bar >= 0.0, "ᾱ ≥ 0", p.alpha_bar, 0.0, None);
    require(&mut v, p.alpha_bar < 1.0, "ᾱ < 1", p.alpha_bar, 1.0, None);

    let alphas = p.alpha.samples(VALIDATION_HORIZON);
    for (k, a) in indexed(&alphas) {
        require(&mut v, a >= 0.0, "αₖ ≥ 0", a, 0.0, k);
        require(&mut v, a <= p.alpha_bar, "αₖ ≤ ᾱ", a, p.alpha_bar, k);
    }
    let lambdas = p.lambda.samples(VALIDATION_HORIZON);

    match p.regime {
        DrRegime::NondecreasingInertia { sigma, delta } => {
            for (i, w) in alphas.windows(2).enumerate() {
                require(&mut v, w[1] >= w[0], "αₖ₊₁ ≥ αₖ", w[1], w[0], Some(i + 2));
            }
            require(&mut v, sigma > 0.0, "σ > 0", sigma, 0.0, None);
            require(&mut v, delta > 0.0, "δ > 0", delta, 0.0, None);
            let delta_min = delta_lower_bound(p.alpha_bar, sigma);
            require(
                &mut v,
                delta > delta_min,
                "δ > (ᾱ²(1+ᾱ) + ᾱσ)/(1 − ᾱ²)",
                delta,
                delta_min,
                None,
            );
            let bound = relaxation_bound(p.alpha_bar, delta, sigma);
            for (k, l) in indexed(&lambdas) {
                require(&mut v, l > 0.0, "λₖ > 0", l, 0.0, k);
                require(
                    &mut v,
                    l <= bound,
                    "λₖ ≤ 2(δ − ᾱ[ᾱ(1+ᾱ) + ᾱδ + σ])/(δ[1 + ᾱ(1+ᾱ) + ᾱδ + σ])",
                    l,
                    bound,
                    k,
                );
            }
        }
        DrRegime::SummableInertia => {
            let lo = lambdas.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            require(&mut v, lo > 0.0, "inf λₖ > 0", lo, 0.0, None);
            require(&mut v, hi < 2.0, "sup λₖ < 2", hi, 2.0, None);
        }
    }

    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

#[derive(Debug, Clone)]
pub struct DrState {
    pub w_prev: DenseMatrix,
    pub w_curr: DenseMatrix,
    pub y: DenseMatrix,
    pub x: DenseMatrix,
    /// Number of completed steps.
    pub iteration: usize,
    /// `Σ ‖wᵏ⁺¹ − wᵏ‖²` over completed steps.
    pub fejer_sum: f64,
    /// Most recent `‖wᵏ⁺¹ − wᵏ‖²`.
    pub last_increment: f64,
}

impl DrState {
    /// Starts from `w⁰ = w¹ = w0`.
    pub fn new(w0: DenseMatrix) -> Self {
        DrState {
            w_prev: w0.clone(),
            y: w0.clone(),
            x: w0.clone(),
            w_curr: w0,
            iteration: 0,
            fejer_sum: 0.0,
            last_increment: 0.0,
        }
    }

    /// `wᵏ + αₖ(wᵏ − wᵏ⁻¹)` for the upcoming step.
    pub fn extrapolated(&self, alpha: f64) -> DenseMatrix {
        let mut ext = self.w_curr.clone();
        if alpha != 0.0 {
            ext.axpy(alpha, &(&self.w_curr - &self.w_prev));
        }
        ext
    }

    /// `‖yᵏ − xᵏ‖_F`
    pub fn gap(&self) -> f64 {
        self.y.distance(&self.x)
    }
}

/// One inertial Douglas-Rachford step.
///
/// On a non-finite iterate this returns [`Error::Diverged`]; `state` is
/// untouched and remains the last finite state.
pub fn dr_step(
    state: &DrState,
    a: &dyn ResolventOracle,
    b: &dyn ResolventOracle,
    p: &DrParams,
) -> Result<DrState> {
    let k = state.iteration + 1;
    let alpha = p.alpha.at(k);
    let lambda = p.lambda.at(k);

    let ext = state.extrapolated(alpha);
    let y = b.resolve(&ext, p.gamma)?;
    let reflected = DenseMatrix::lincomb(2.0, &y, -1.0, &ext);
    let x = a.resolve(&reflected, p.gamma)?;
    let mut w_next = ext;
    w_next.axpy(lambda, &(&x - &y));

    if !(y.is_finite() && x.is_finite() && w_next.is_finite()) {
        return Err(Error::Diverged { iteration: k });
    }

    let increment = w_next.distance(&state.w_curr).powi(2);
    Ok(DrState {
        w_prev: state.w_curr.clone(),
        w_curr: w_next,
        y,
        x,
        iteration: k,
        fejer_sum: state.fejer_sum + increment,
        last_increment: increment,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct StoppingRule {
    /// Stop once `‖yᵏ − xᵏ‖_F ≤ tolerance`.
    pub tolerance: f64,
    pub max_iter: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrTraceEntry {
    pub iteration: usize,
    pub gap: f64,
    pub fejer_increment: f64,
    pub fejer_sum: f64,
}

#[derive(Debug, Clone)]
pub struct DrReport {
    /// Final state; for a diverged run, the last finite one.
    pub state: DrState,
    pub status: Termination,
    pub trace: Vec<DrTraceEntry>,
}

impl DrReport {
    pub fn y(&self) -> &DenseMatrix {
        &self.state.y
    }
    pub fn x(&self) -> &DenseMatrix {
        &self.state.x
    }
    pub fn w(&self) -> &DenseMatrix {
        &self.state.w_curr
    }
}

/// Runs [`dr_step`] until the `y`/`x` gap falls below the tolerance or the
/// iteration budget runs out.
pub fn dr_solve(
    a: &dyn ResolventOracle,
    b: &dyn ResolventOracle,
    p: &DrParams,
    w0: DenseMatrix,
    stop: StoppingRule,
) -> Result<DrReport> {
    if let Err(violations) = validate_params(p) {
        let text: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::Config(text.join("; ")));
    }
    let mut state = DrState::new(w0);
    let mut trace = Vec::new();
    let mut status = Termination::BudgetExhausted;
    while state.iteration < stop.max_iter {
        state = match dr_step(&state, a, b, p) {
            Ok(next) => next,
            Err(Error::Diverged { .. }) => {
                status = Termination::Diverged;
                break;
            }
            Err(e) => return Err(e),
        };
        let gap = state.gap();
        trace.push(DrTraceEntry {
            iteration: state.iteration,
            gap,
            fejer_increment: state.last_increment,
            fejer_sum: state.fejer_sum,
        });
        if gap <= stop.tolerance {
            status = Termination::Converged;
            break;
        }
    }
    Ok(DrReport {
        state,
        status,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{randn_matrix, SeededRng};
    use crate::operators::{L1Norm, NuclearNorm, SquaredDistance};

    fn s(v: f64) -> DenseMatrix {
        DenseMatrix::scalar(v)
    }

    fn quadratic(center: f64) -> ProxResolvent {
        ProxResolvent(Arc::new(SquaredDistance::new(s(center), 1.0)))
    }

    fn fixed_inertia(alpha: f64, sigma: f64) -> DrParams {
        let delta = 1.0 + delta_lower_bound(alpha, sigma);
        DrParams {
            gamma: 1.0,
            alpha: Schedule::Constant(alpha),
            lambda: Schedule::Constant(relaxation_bound(alpha, delta, sigma)),
            alpha_bar: alpha,
            regime: DrRegime::NondecreasingInertia { sigma, delta },
        }
    }

    #[test]
    fn accepts_tabulated_relaxations() {
        for (alpha, lambda) in [(0.05, 1.7874), (0.1, 1.6019), (0.2, 1.2496), (0.3, 0.9243)] {
            let mut p = fixed_inertia(alpha, 0.01);
            p.lambda = Schedule::Constant(lambda);
            assert_eq!(validate_params(&p), Ok(()), "alpha = {alpha}");
        }
    }

    #[test]
    fn no_inertia_unit_relaxation_is_fine() {
        let p = DrParams {
            gamma: 1.0,
            alpha: Schedule::Constant(0.0),
            lambda: Schedule::Constant(1.0),
            alpha_bar: 0.0,
            regime: DrRegime::NondecreasingInertia {
                sigma: 0.01,
                delta: 1.0,
            },
        };
        assert_eq!(relaxation_bound(0.0, 1.0, 0.01), 2.0 / 1.01);
        assert_eq!(validate_params(&p), Ok(()));
    }

    #[test]
    fn rejects_oversized_relaxation() {
        let mut p = fixed_inertia(0.3, 0.01);
        p.lambda = Schedule::Constant(1.5);
        let v = validate_params(&p).unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].lhs, 1.5);
        assert!((v[0].rhs - 0.9243).abs() < 1e-4);
        assert!(v[0].to_string().contains("λₖ ≤"));
    }

    #[test]
    fn rejects_decreasing_inertia_and_small_delta() {
        let mut p = fixed_inertia(0.2, 0.01);
        p.alpha = Schedule::from_fn(|k| if k < 5 { 0.2 } else { 0.1 });
        let v = validate_params(&p).unwrap_err();
        assert!(v.iter().any(|x| x.condition == "αₖ₊₁ ≥ αₖ" && x.iteration == Some(5)));

        let mut p = fixed_inertia(0.2, 0.01);
        p.regime = DrRegime::NondecreasingInertia {
            sigma: 0.01,
            delta: 0.01,
        };
        let v = validate_params(&p).unwrap_err();
        assert!(v.iter().any(|x| x.condition.starts_with("δ >")));
    }

    #[test]
    fn summable_regime_static_bounds() {
        let mut p = DrParams::classical(1.0);
        p.lambda = Schedule::Constant(1.5);
        p.alpha = Schedule::Constant(0.05);
        p.alpha_bar = 0.05;
        assert_eq!(validate_params(&p), Ok(()));
        p.lambda = Schedule::Constant(2.0);
        assert!(validate_params(&p).is_err());
        p.lambda = Schedule::Constant(1.0);
        p.alpha = Schedule::Constant(0.06);
        assert!(validate_params(&p).is_err());
    }

    #[test]
    fn identity_resolvents_do_not_move() {
        let w0 = randn_matrix(&mut SeededRng::new(1), 3, 3);
        let st = DrState::new(w0.clone());
        let next = dr_step(&st, &ZeroResolvent, &ZeroResolvent, &DrParams::classical(0.7)).unwrap();
        assert_eq!(next.w_curr, w0);
        assert_eq!(next.last_increment, 0.0);
    }

    #[test]
    fn reduces_to_plain_douglas_rachford() {
        let mut rng = SeededRng::new(2);
        let a = ProxResolvent(Arc::new(NuclearNorm::new(1.0)));
        let b = ProxResolvent(Arc::new(L1Norm::new(0.3)));
        let gamma = 0.8;
        let mut st = DrState::new(randn_matrix(&mut rng, 6, 5));
        for _ in 0..10 {
            let w = st.w_curr.clone();
            let y = b.resolve(&w, gamma).unwrap();
            let x = a.resolve(&(&y.scale(2.0) - &w), gamma).unwrap();
            let expect = &(&w + &x) - &y;
            st = dr_step(&st, &a, &b, &DrParams::classical(gamma)).unwrap();
            assert!(st.y.distance(&y) <= 1e-14 * y.frobenius_norm().max(1.0));
            assert!(st.w_curr.distance(&expect) <= 1e-14 * expect.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn scalar_quadratics_converge_to_minimizer() {
        // f = ½(t − 3)², g = ½(t + 1)²: f + g is minimized at t = 1.
        let p = DrParams::classical(1.0);
        let stop = StoppingRule {
            tolerance: 1e-10,
            max_iter: 1000,
        };
        let r = dr_solve(&quadratic(3.0), &quadratic(-1.0), &p, s(0.0), stop).unwrap();
        assert_eq!(r.status, Termination::Converged);
        assert!((r.y().get(0, 0) - 1.0).abs() < 1e-8);
        assert!((r.x().get(0, 0) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn inertial_scalar_run_converges_with_summable_increments() {
        // nondecreasing inertia with α₁ = 0
        let alpha_bar = 0.2;
        let sigma = 0.01;
        let delta = 1.0 + delta_lower_bound(alpha_bar, sigma);
        let p = DrParams {
            gamma: 1.0,
            alpha: Schedule::from_fn(move |k| alpha_bar * (1.0 - 1.0 / k as f64)),
            lambda: Schedule::Constant(relaxation_bound(alpha_bar, delta, sigma)),
            alpha_bar,
            regime: DrRegime::NondecreasingInertia { sigma, delta },
        };
        let stop = StoppingRule {
            tolerance: 0.0,
            max_iter: 200,
        };
        let r = dr_solve(&quadratic(3.0), &quadratic(-1.0), &p, s(-7.0), stop).unwrap();
        // the gap can hit exactly zero in floating point before the budget
        assert_ne!(r.status, Termination::Diverged);
        assert!((r.y().get(0, 0) - 1.0).abs() < 1e-8);
        let inc = |k: usize| r.trace[k - 1].fejer_increment;
        assert!(inc(r.trace.len()) < inc(10));
        assert!(r.trace.windows(2).all(|w| w[1].fejer_sum >= w[0].fejer_sum));
        assert!(r.trace.iter().any(|t| t.gap < 1e-6));
    }

    #[test]
    fn fixed_point_start_stays_put() {
        // w = 3 is the fixed point of the scalar instance (y = x = 1).
        let stop = StoppingRule {
            tolerance: 1e-12,
            max_iter: 10,
        };
        let r = dr_solve(&quadratic(3.0), &quadratic(-1.0), &DrParams::classical(1.0), s(3.0), stop)
            .unwrap();
        assert_eq!(r.status, Termination::Converged);
        assert_eq!(r.state.iteration, 1);
        assert_eq!(r.w().get(0, 0), 3.0);
        assert_eq!(r.state.fejer_sum, 0.0);
    }

    #[test]
    fn non_finite_resolvent_reports_divergence() {
        let bad = FnResolvent(|p: &DenseMatrix, _g: f64| Ok(p.map(|_| f64::NAN)));
        let st = DrState::new(s(1.0));
        let err = dr_step(&st, &ZeroResolvent, &bad, &DrParams::classical(1.0)).unwrap_err();
        assert_eq!(err, Error::Diverged { iteration: 1 });

        let stop = StoppingRule {
            tolerance: 1e-12,
            max_iter: 10,
        };
        let r = dr_solve(&ZeroResolvent, &bad, &DrParams::classical(1.0), s(1.0), stop).unwrap();
        assert_eq!(r.status, Termination::Diverged);
        assert_eq!(r.state.w_curr, s(1.0));
    }

    #[test]
    fn prox_resolvents_are_firmly_nonexpansive() {
        let mut rng = SeededRng::new(4);
        let resolvents = [
            ProxResolvent(Arc::new(NuclearNorm::new(1.0))),
            ProxResolvent(Arc::new(L1Norm::new(0.5))),
        ];
        for r in &resolvents {
            for _ in 0..20 {
                let x = randn_matrix(&mut rng, 5, 4);
                let y = randn_matrix(&mut rng, 5, 4);
                let jx = r.resolve(&x, 0.7).unwrap();
                let jy = r.resolve(&y, 0.7).unwrap();
                let d = &jx - &jy;
                let lhs = d.frobenius_norm_squared();
                let rhs = d.dot(&(&x - &y));
                assert!(lhs <= rhs + 1e-10 * rhs.abs().max(1.0));
            }
        }
    }
}
