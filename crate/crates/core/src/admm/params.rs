use crate::dr::{self, delta_lower_bound, relaxation_bound, DrParams, DrRegime};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::schedule::Schedule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// u → v → y with unit relaxation.
    Classical,
    /// Relaxed v- and y-updates with `λₖ ∈ (0, 2)`.
    Generalized,
    /// Inertial proximal ADMM: extrapolate `(u, v, y)`, then
    /// update in the order u → y → v.
    InertialProximal,
    /// Inertial ADMM derived from inertial Douglas-Rachford on the dual;
    /// carries the auxiliary sequence `p`.
    Inertial,
}

/// How the inertia coefficient is produced.
#[derive(Debug, Clone)]
pub enum AlphaRule {
    Fixed(Schedule),
    /// `α = min{1/(k²‖pᵏ + γλₖ(Muᵏ⁺¹ + Nvᵏ − b)‖²), cap}`, evaluated after the
    /// u-update of iteration `k`.
    Adaptive { cap: f64 },
}

/// Parameters of every ADMM variant. Fields that a variant does not use are
/// ignored by its step rule but still validated for consistency.
#[derive(Debug, Clone)]
pub struct AdmmParams {
    pub gamma: f64,
    pub variant: Variant,
    pub lambda: Schedule,
    pub alpha: AlphaRule,
    /// `S = s·I` in the u-subproblem of the inertial proximal variant.
    pub proximal_s: f64,
    /// `T = t·I` in the v-subproblem of the inertial proximal variant.
    pub proximal_t: f64,
    /// Convergence regime for [`Variant::Inertial`].
    pub regime: DrRegime,
    pub epsilon: f64,
    pub max_iter: usize,
    /// Evaluate `F(u) + G(v)` every iteration (costs an SVD for the nuclear
    /// norm).
    pub record_objective: bool,
}

pub const DEFAULT_EPSILON: f64 = 1e-7;
pub const DEFAULT_MAX_ITER: usize = 1000;
/// Cap on the adaptive inertia coefficient.
pub const DEFAULT_ALPHA_CAP: f64 = 0.05;

impl AdmmParams {
    fn base(gamma: f64, variant: Variant) -> Self {
        AdmmParams {
            gamma,
            variant,
            lambda: Schedule::Constant(1.0),
            alpha: AlphaRule::Fixed(Schedule::Constant(0.0)),
            proximal_s: 0.0,
            proximal_t: 0.0,
            regime: DrRegime::SummableInertia,
            epsilon: DEFAULT_EPSILON,
            max_iter: DEFAULT_MAX_ITER,
            record_objective: true,
        }
    }

    pub fn classical(gamma: f64) -> Self {
        Self::base(gamma, Variant::Classical)
    }

    pub fn generalized(gamma: f64, lambda: impl Into<Schedule>) -> Self {
        AdmmParams {
            lambda: lambda.into(),
            ..Self::base(gamma, Variant::Generalized)
        }
    }

    /// Inertial proximal ADMM with `S = T = 0`.
    pub fn inertial_proximal(gamma: f64, alpha: impl Into<Schedule>) -> Self {
        AdmmParams {
            alpha: AlphaRule::Fixed(alpha.into()),
            ..Self::base(gamma, Variant::InertialProximal)
        }
    }

    /// The u → y → v reordering of the classical method.
    pub fn reordered(gamma: f64) -> Self {
        Self::inertial_proximal(gamma, 0.0)
    }

    /// Inertial ADMM with constant inertia `alpha` and relaxation `lambda`,
    /// validated under the coupled `(δ, σ)` condition with
    /// `δ = 1 + (α²(1+α) + ασ)/(1 − α²)`.
    pub fn inertial(gamma: f64, alpha: f64, lambda: f64, sigma: f64) -> Self {
        let delta = if alpha < 1.0 {
            1.0 + delta_lower_bound(alpha, sigma)
        } else {
            f64::NAN
        };
        AdmmParams {
            alpha: AlphaRule::Fixed(Schedule::Constant(alpha)),
            lambda: Schedule::Constant(lambda),
            regime: DrRegime::NondecreasingInertia { sigma, delta },
            ..Self::base(gamma, Variant::Inertial)
        }
    }

    /// Inertial ADMM with the adaptive, summable inertia rule.
    pub fn inertial_adaptive(gamma: f64, lambda: impl Into<Schedule>, cap: f64) -> Self {
        AdmmParams {
            alpha: AlphaRule::Adaptive { cap },
            lambda: lambda.into(),
            regime: DrRegime::SummableInertia,
            ..Self::base(gamma, Variant::Inertial)
        }
    }

    pub fn with_proximal(mut self, s: f64, t: f64) -> Self {
        self.proximal_s = s;
        self.proximal_t = t;
        self
    }

    pub fn with_tolerance(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_record_objective(mut self, on: bool) -> Self {
        self.record_objective = on;
        self
    }

    /// Largest inertia coefficient the rule can emit.
    pub fn alpha_bound(&self) -> f64 {
        match &self.alpha {
            AlphaRule::Fixed(s) => s
                .samples(dr::VALIDATION_HORIZON)
                .into_iter()
                .fold(0.0, f64::max),
            AlphaRule::Adaptive { cap } => *cap,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return fail(format!("γ must be positive, got {}", self.gamma));
        }
        if !(self.epsilon > 0.0) {
            return fail(format!("ε must be positive, got {}", self.epsilon));
        }
        let lambdas = self.lambda.samples(dr::VALIDATION_HORIZON);
        let fixed_alphas = match &self.alpha {
            AlphaRule::Fixed(s) => Some(s.samples(dr::VALIDATION_HORIZON)),
            AlphaRule::Adaptive { .. } => None,
        };
        let all_zero = |v: &Option<Vec<f64>>| v.as_ref().is_some_and(|a| a.iter().all(|&x| x == 0.0));

        match self.variant {
            Variant::Classical => {
                if lambdas.iter().any(|&l| l != 1.0) || !all_zero(&fixed_alphas) {
                    return fail("classical ADMM requires λₖ ≡ 1 and αₖ ≡ 0".into());
                }
            }
            Variant::Generalized => {
                if !all_zero(&fixed_alphas) {
                    return fail("generalized ADMM has no inertia (αₖ ≡ 0)".into());
                }
                if let Some(l) = lambdas.iter().find(|&&l| !(l > 0.0 && l < 2.0)) {
                    return fail(format!("generalized ADMM requires λₖ ∈ (0, 2), got {l}"));
                }
            }
            Variant::InertialProximal => {
                let Some(alphas) = fixed_alphas else {
                    return fail("inertial proximal ADMM takes a fixed inertia schedule".into());
                };
                if let Some(a) = alphas.iter().find(|&&a| !(0.0..1.0).contains(&a)) {
                    return fail(format!("inertia must lie in [0, 1), got {a}"));
                }
                if !(self.proximal_s >= 0.0 && self.proximal_t >= 0.0) {
                    return fail("proximal weights s, t must be nonnegative".into());
                }
            }
            Variant::Inertial => {
                if let (AlphaRule::Adaptive { .. }, DrRegime::NondecreasingInertia { .. }) =
                    (&self.alpha, self.regime)
                {
                    return fail(
                        "the adaptive inertia rule is not monotone; use the summable regime".into(),
                    );
                }
                if let AlphaRule::Adaptive { cap } = self.alpha {
                    if !(0.0..1.0).contains(&cap) {
                        return fail(format!("inertia cap must lie in [0, 1), got {cap}"));
                    }
                }
                let alpha = match &self.alpha {
                    AlphaRule::Fixed(s) => s.clone(),
                    AlphaRule::Adaptive { cap } => Schedule::Constant(*cap),
                };
                let p = DrParams {
                    gamma: self.gamma,
                    alpha,
                    lambda: self.lambda.clone(),
                    alpha_bar: self.alpha_bound(),
                    regime: self.regime,
                };
                if let Err(v) = dr::validate_params(&p) {
                    let text: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    return fail(text.join("; "));
                }
            }
        }
        Ok(())
    }
}

/// `(δ, λ)` of the coupled inertia/relaxation rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledRelaxation {
    pub delta: f64,
    pub lambda: f64,
}

/// For constant inertia `alpha`, picks `δ = 1 + (α²(1+α) + ασ)/(1 − α²)` and
/// the largest admissible `λ` for that `δ`.
pub fn coupled_relaxation(alpha: f64, sigma: f64) -> Result<CoupledRelaxation> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Argument(format!("α must lie in [0, 1), got {alpha}")));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::Argument(format!("σ must be positive, got {sigma}")));
    }
    let delta = 1.0 + delta_lower_bound(alpha, sigma);
    Ok(CoupledRelaxation {
        delta,
        lambda: relaxation_bound(alpha, delta, sigma),
    })
}

/// `min{1/(k²‖p + γλ·residual‖²), cap}`; returns `cap` when the norm is zero.
pub fn adaptive_inertia(
    k: usize,
    p: &DenseMatrix,
    residual: &DenseMatrix,
    gamma: f64,
    lambda: f64,
    cap: f64,
) -> f64 {
    assert!(k >= 1, "iterations are counted from 1");
    let mut q = p.clone();
    q.axpy(gamma * lambda, residual);
    adaptive_inertia_from_norm(k, q.frobenius_norm_squared(), cap)
}

pub(crate) fn adaptive_inertia_from_norm(k: usize, norm_sq: f64, cap: f64) -> f64 {
    if norm_sq == 0.0 {
        return cap;
    }
    let kf = k as f64;
    (1.0 / (kf * kf * norm_sq)).min(cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coupled_relaxation_table() {
        let expect = [(0.05, 1.7874), (0.1, 1.6019), (0.2, 1.2496), (0.3, 0.9243)];
        for (alpha, lambda) in expect {
            let c = coupled_relaxation(alpha, 0.01).unwrap();
            assert_eq!(format!("{:.4}", c.lambda), format!("{lambda:.4}"));
        }
        let zero = coupled_relaxation(0.0, 0.01).unwrap();
        assert_eq!(zero.delta, 1.0);
        assert_eq!(zero.lambda, 2.0 / 1.01);
        assert!(coupled_relaxation(1.0, 0.01).is_err());
        assert!(coupled_relaxation(0.5, 0.0).is_err());
    }

    #[test]
    fn coupled_relaxation_stays_in_open_interval() {
        for i in 0..=99 {
            let alpha = i as f64 / 100.0;
            for sigma in [1e-6, 1e-3, 0.01, 0.1, 0.5, 1.0] {
                let l = coupled_relaxation(alpha, sigma).unwrap().lambda;
                assert!(l > 0.0 && l < 2.0, "α = {alpha}, σ = {sigma}: λ = {l}");
            }
        }
    }

    #[test]
    fn adaptive_inertia_examples() {
        let z = DenseMatrix::zeros(2, 2);
        assert_eq!(adaptive_inertia(1, &z, &z, 0.01, 1.5, 0.05), 0.05);
        assert_eq!(adaptive_inertia(17, &z, &z, 0.01, 1.5, 0.05), 0.05);
        // ‖p‖² = 100 at k = 1
        let p = DenseMatrix::scalar(10.0);
        let r = DenseMatrix::scalar(0.0);
        assert_eq!(adaptive_inertia(1, &p, &r, 0.01, 1.5, 0.05), 0.01);
        // cap binds for tiny norms
        let tiny = DenseMatrix::scalar(1e-3);
        assert_eq!(adaptive_inertia(3, &tiny, &r, 0.01, 1.5, 0.05), 0.05);
    }

    #[test]
    fn validation_per_variant() {
        assert!(AdmmParams::classical(0.01).validate().is_ok());
        let mut bad = AdmmParams::classical(0.01);
        bad.lambda = Schedule::Constant(1.2);
        assert!(bad.validate().is_err());

        assert!(AdmmParams::generalized(0.01, 1.6).validate().is_ok());
        assert!(AdmmParams::generalized(0.01, 2.0).validate().is_err());

        assert!(AdmmParams::inertial_proximal(0.01, 0.3).validate().is_ok());
        assert!(AdmmParams::inertial_proximal(0.01, 1.0).validate().is_err());
        assert!(AdmmParams::inertial_proximal(0.01, 0.3)
            .with_proximal(-1.0, 0.0)
            .validate()
            .is_err());

        assert!(AdmmParams::inertial(0.01, 0.2, 1.2496, 0.01).validate().is_ok());
        assert!(AdmmParams::inertial(0.01, 0.3, 1.5, 0.01).validate().is_err());
        assert!(AdmmParams::inertial(0.01, 0.0, 1.6, 0.01).validate().is_ok());
        assert!(AdmmParams::inertial_adaptive(0.01, 1.5, 0.05).validate().is_ok());
        assert!(AdmmParams::inertial_adaptive(0.01, 2.5, 0.05).validate().is_err());
        assert!(AdmmParams::classical(-1.0).validate().is_err());
    }
}
