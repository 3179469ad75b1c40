use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use iadmm_bench::config::{LARGE_ORDERS, SolverSpec};
use iadmm_bench::experiment::{describe, run_experiment_with};
use iadmm_bench::table::{TABLE_ALPHAS, TABLE_SIGMA};
use iadmm_bench::{print_param_table, verify, BenchError, ExperimentConfig};

#[derive(Parser)]
#[command(name = "iadmm-bench", version, about = "RPCP benchmarks for the ADMM family")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep and write one CSV row per (solver, cell).
    Run(RunArgs),
    /// Print the (α, δ, λ) table of the coupled relaxation rule.
    ParamTable {
        #[arg(long, value_delimiter = ',', default_values_t = TABLE_ALPHAS)]
        alphas: Vec<f64>,
        #[arg(long, default_value_t = TABLE_SIGMA)]
        sigma: f64,
    },
    /// Run the quick equivalence and closed-form checks.
    Verify,
    /// Print the default configuration as TOML.
    DefaultConfig,
}

#[derive(Args)]
struct RunArgs {
    /// TOML experiment file; built-in desk-scale defaults when absent.
    #[arg(long, short)]
    config: Option<PathBuf>,
    /// Matrix orders (comma separated).
    #[arg(long, value_delimiter = ',')]
    m: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    r_fraction: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    sparsity: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    epsilon: Option<Vec<f64>>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Keep only the named solvers (comma separated).
    #[arg(long, value_delimiter = ',')]
    solver: Option<Vec<String>>,
    /// Override α of the selected solvers.
    #[arg(long)]
    alpha: Option<f64>,
    /// Override λ of the selected solvers.
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    seed: Option<Vec<u64>>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Write one iteration trace CSV per run into this directory.
    #[arg(long)]
    trace_dir: Option<PathBuf>,
    /// Use the large matrix orders (500, 800, 1000). Slow.
    #[arg(long)]
    large_scale: bool,
    /// Record wall time (breaks byte-identical output between runs).
    #[arg(long)]
    wall_time: bool,
    #[arg(long, short)]
    quiet: bool,
}

fn build_config(args: &RunArgs) -> Result<ExperimentConfig, BenchError> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if args.large_scale {
        cfg.orders = LARGE_ORDERS.to_vec();
    }
    if let Some(m) = &args.m {
        cfg.orders = m.clone();
    }
    if let Some(v) = &args.r_fraction {
        cfg.rank_fractions = v.clone();
    }
    if let Some(v) = &args.sparsity {
        cfg.sparsity_fractions = v.clone();
    }
    if let Some(v) = &args.epsilon {
        cfg.epsilons = v.clone();
    }
    if let Some(g) = args.gamma {
        cfg.gamma = g;
    }
    if let Some(names) = &args.solver {
        let unknown: Vec<&String> = names
            .iter()
            .filter(|n| !cfg.solvers.iter().any(|s| &&s.name == n))
            .collect();
        if !unknown.is_empty() {
            let known: Vec<&str> = cfg.solvers.iter().map(|s| s.name.as_str()).collect();
            return Err(BenchError::Config(format!(
                "unknown solver(s) {unknown:?}; configured: {known:?}"
            )));
        }
        cfg.solvers.retain(|s| names.contains(&s.name));
    }
    let apply = |s: &mut SolverSpec| {
        if args.alpha.is_some() {
            s.alpha = args.alpha;
        }
        if args.lambda.is_some() {
            s.lambda = args.lambda;
        }
    };
    cfg.solvers.iter_mut().for_each(apply);
    if let Some(v) = &args.seed {
        cfg.seeds = v.clone();
    }
    if let Some(k) = args.max_iter {
        cfg.max_iter = k;
    }
    if let Some(o) = &args.output {
        cfg.output = o.clone();
    }
    if args.trace_dir.is_some() {
        cfg.trace_dir = args.trace_dir.clone();
    }
    cfg.record_wall_time |= args.wall_time;
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => build_config(&args).and_then(|cfg| {
            let quiet = args.quiet;
            let rows = run_experiment_with(&cfg, |run| {
                if !quiet {
                    let _ = describe(&run.row, &mut std::io::stderr());
                }
            })?;
            eprintln!("{} rows written to {}", rows.len(), cfg.output.display());
            Ok(true)
        }),
        Command::ParamTable { alphas, sigma } => {
            print_param_table(&alphas, sigma, &mut std::io::stdout())
                .map(|_| true)
                .map_err(|e| BenchError::Config(e.to_string()))
        }
        Command::Verify => verify::run_all()
            .map_err(BenchError::from)
            .map(|checks| {
                for c in &checks {
                    println!("{c}");
                }
                checks.iter().all(|c| c.passed)
            }),
        Command::DefaultConfig => {
            print!("{}", ExperimentConfig::default().to_toml());
            Ok(true)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
