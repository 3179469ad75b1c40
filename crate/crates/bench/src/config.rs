use std::path::{Path, PathBuf};

use iadmm_core::admm::{coupled_relaxation, AdmmParams, DEFAULT_ALPHA_CAP};
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};

pub const DESK_ORDERS: [usize; 2] = [100, 200];
pub const LARGE_ORDERS: [usize; 3] = [500, 800, 1000];
/// `σ` used to derive `λ` from `α` when a fixed-inertia solver omits it.
pub const DEFAULT_SIGMA: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Admm,
    Gadmm,
    /// Inertial proximal ADMM (extrapolate, then u → y → v).
    InertialProximal,
    /// Inertial ADMM with constant `α` and `λ`.
    InertialFixed,
    /// Inertial ADMM with the adaptive summable `α` rule.
    InertialAdaptive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    pub name: String,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    /// Upper bound of the adaptive `α`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proximal_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proximal_t: Option<f64>,
}

impl SolverSpec {
    pub fn new(name: &str, method: Method) -> Self {
        SolverSpec {
            name: name.to_string(),
            method,
            alpha: None,
            lambda: None,
            sigma: None,
            cap: None,
            proximal_s: None,
            proximal_t: None,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn params(&self, gamma: f64, epsilon: f64, max_iter: usize) -> Result<AdmmParams> {
        let missing = |what: &str| {
            BenchError::Config(format!("solver {:?} needs {what}", self.name))
        };
        let sigma = self.sigma.unwrap_or(DEFAULT_SIGMA);
        let params = match self.method {
            Method::Admm => AdmmParams::classical(gamma),
            Method::Gadmm => {
                AdmmParams::generalized(gamma, self.lambda.ok_or_else(|| missing("lambda"))?)
            }
            Method::InertialProximal => AdmmParams::inertial_proximal(
                gamma,
                self.alpha.ok_or_else(|| missing("alpha"))?,
            )
            .with_proximal(
                self.proximal_s.unwrap_or(0.0),
                self.proximal_t.unwrap_or(0.0),
            ),
            Method::InertialFixed => {
                let alpha = self.alpha.ok_or_else(|| missing("alpha"))?;
                let lambda = match self.lambda {
                    Some(l) => l,
                    None => coupled_relaxation(alpha, sigma)?.lambda,
                };
                AdmmParams::inertial(gamma, alpha, lambda, sigma)
            }
            Method::InertialAdaptive => AdmmParams::inertial_adaptive(
                gamma,
                self.lambda.ok_or_else(|| missing("lambda"))?,
                self.cap.unwrap_or(DEFAULT_ALPHA_CAP),
            ),
        };
        let params = params.with_tolerance(epsilon).with_max_iter(max_iter);
        params
            .validate()
            .map_err(|e| BenchError::Config(format!("solver {:?}: {e}", self.name)))?;
        Ok(params)
    }
}

/// The five configurations compared in the RPCP study.
pub fn default_solvers() -> Vec<SolverSpec> {
    vec![
        SolverSpec::new("ADMM", Method::Admm),
        SolverSpec::new("GADMM", Method::Gadmm).with_lambda(1.6),
        SolverSpec::new("iADMM-proximal", Method::InertialProximal).with_alpha(0.3),
        SolverSpec::new("iADMM-fixed", Method::InertialFixed)
            .with_alpha(0.2)
            .with_lambda(1.2496),
        SolverSpec::new("iADMM-adaptive", Method::InertialAdaptive).with_lambda(1.5),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub orders: Vec<usize>,
    /// `r = round(fraction · m)`
    pub rank_fractions: Vec<f64>,
    /// `nnz = round(fraction · m²)`
    pub sparsity_fractions: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub gamma: f64,
    pub seeds: Vec<u64>,
    pub max_iter: usize,
    pub output: PathBuf,
    /// One CSV per run with the iteration trace, when set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_dir: Option<PathBuf>,
    /// Wall time makes the output differ between runs, so it is opt-in.
    #[serde(default)]
    pub record_wall_time: bool,
    pub solvers: Vec<SolverSpec>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            orders: DESK_ORDERS.to_vec(),
            rank_fractions: vec![0.05],
            sparsity_fractions: vec![0.05],
            epsilons: vec![1e-7],
            gamma: 0.01,
            seeds: vec![1, 2, 3, 4, 5],
            max_iter: 1000,
            output: PathBuf::from("results.csv"),
            trace_dir: None,
            record_wall_time: false,
            solvers: default_solvers(),
        }
    }
}

/// One data cell of the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub m: usize,
    pub r: usize,
    pub nnz: usize,
    pub epsilon: f64,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        let cfg: ExperimentConfig = toml::from_str(&text).map_err(|e| BenchError::Parse {
            path: path.to_path_buf(),
            source: e,
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(BenchError::Config(msg));
        if self.solvers.is_empty() {
            return fail("at least one solver is required".into());
        }
        if self.seeds.is_empty() {
            return fail("at least one seed is required".into());
        }
        if self.orders.is_empty() || self.orders.contains(&0) {
            return fail("matrix orders must be a nonempty list of positive integers".into());
        }
        for (what, list) in [
            ("rank fraction", &self.rank_fractions),
            ("sparsity fraction", &self.sparsity_fractions),
        ] {
            if list.is_empty() {
                return fail(format!("at least one {what} is required"));
            }
            if let Some(f) = list.iter().find(|&&f| !(f > 0.0 && f <= 1.0)) {
                return fail(format!("{what} {f} outside (0, 1]"));
            }
        }
        if self.epsilons.is_empty() || self.epsilons.iter().any(|&e| !(e > 0.0)) {
            return fail("epsilons must be a nonempty list of positive reals".into());
        }
        let mut names: Vec<&str> = self.solvers.iter().map(|s| s.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return fail("solver names must be unique".into());
        }
        for s in &self.solvers {
            s.params(self.gamma, self.epsilons[0], self.max_iter)?;
        }
        Ok(())
    }

    /// Cells in sweep order: m, then rank, sparsity, ε, seed.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for &m in &self.orders {
            for &rf in &self.rank_fractions {
                let r = ((rf * m as f64).round() as usize).clamp(1, m);
                for &sf in &self.sparsity_fractions {
                    let nnz = ((sf * (m * m) as f64).round() as usize).min(m * m);
                    for &epsilon in &self.epsilons {
                        for &seed in &self.seeds {
                            out.push(Cell {
                                m,
                                r,
                                nnz,
                                epsilon,
                                seed,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}
