use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use iadmm_core::admm::{AdmmSolver, SolveReport};
use iadmm_core::rpcp::{generate, RpcpInstance};
use iadmm_core::Termination;

use crate::config::{Cell, ExperimentConfig, SolverSpec};
use crate::error::{BenchError, Result};

pub const CSV_HEADER: [&str; 12] = [
    "solver",
    "m",
    "r",
    "nnz",
    "epsilon",
    "seed",
    "iterations",
    "rel_u_star",
    "rel_v_star",
    "rank_u",
    "wall_time_s",
    "status",
];

pub const TRACE_HEADER: [&str; 6] = ["iteration", "rel_u", "rel_v", "rel_b", "primal_obj", "r3"];

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub solver: String,
    pub m: usize,
    pub r: usize,
    pub nnz: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub iterations: usize,
    /// Missing when the solve failed before producing an iterate.
    pub rel_u_star: Option<f64>,
    pub rel_v_star: Option<f64>,
    pub rank_u: Option<usize>,
    pub wall_time_s: Option<f64>,
    pub status: Termination,
}

/// A row together with the solver report it was computed from.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub row: ResultRow,
    pub report: Option<SolveReport>,
}

fn real(x: f64) -> String {
    format!("{x:.12e}")
}

impl ResultRow {
    fn record(&self) -> Vec<String> {
        vec![
            self.solver.clone(),
            self.m.to_string(),
            self.r.to_string(),
            self.nnz.to_string(),
            real(self.epsilon),
            self.seed.to_string(),
            self.iterations.to_string(),
            self.rel_u_star.map(real).unwrap_or_default(),
            self.rel_v_star.map(real).unwrap_or_default(),
            self.rank_u.map(|r| r.to_string()).unwrap_or_default(),
            self.wall_time_s.map(real).unwrap_or_default(),
            self.status.to_string(),
        ]
    }
}

/// Solves one cell with one solver. Solver failures become `diverged` rows;
/// only configuration errors are returned.
pub fn run_cell(
    spec: &SolverSpec,
    instance: &RpcpInstance,
    cell: &Cell,
    gamma: f64,
    max_iter: usize,
    record_wall_time: bool,
) -> Result<RunOutcome> {
    let params = spec.params(gamma, cell.epsilon, max_iter)?;
    let solver = AdmmSolver::new(instance.as_problem(), params)?;
    let mut row = ResultRow {
        solver: spec.name.clone(),
        m: cell.m,
        r: cell.r,
        nnz: cell.nnz,
        epsilon: cell.epsilon,
        seed: cell.seed,
        iterations: 0,
        rel_u_star: None,
        rel_v_star: None,
        rank_u: None,
        wall_time_s: None,
        status: Termination::Diverged,
    };
    let start = Instant::now();
    let solved = solver.solve();
    let elapsed = start.elapsed().as_secs_f64();
    if record_wall_time {
        row.wall_time_s = Some(elapsed);
    }
    let report = match solved {
        Ok(report) => report,
        Err(e) => {
            eprintln!("{} on m={} seed={}: {e}", spec.name, cell.m, cell.seed);
            return Ok(RunOutcome { row, report: None });
        }
    };
    row.iterations = report.iterations;
    row.status = report.status;
    match instance.recovery_metrics(&report.state.u, &report.state.v) {
        Ok(m) => {
            row.rel_u_star = Some(m.rel_u_star);
            row.rel_v_star = Some(m.rel_v_star);
            row.rank_u = Some(m.rank_u);
        }
        Err(e) => {
            eprintln!("{} on m={} seed={}: {e}", spec.name, cell.m, cell.seed);
            row.status = Termination::Diverged;
        }
    }
    Ok(RunOutcome {
        row,
        report: Some(report),
    })
}

pub fn trace_path(dir: &Path, row: &ResultRow) -> PathBuf {
    let name: String = row
        .solver
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect();
    dir.join(format!(
        "{name}_m{}_r{}_nnz{}_eps{:e}_seed{}.csv",
        row.m, row.r, row.nnz, row.epsilon, row.seed
    ))
}

pub fn write_trace(path: &Path, report: &SolveReport) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| BenchError::csv(path, e))?;
    w.write_record(TRACE_HEADER)
        .map_err(|e| BenchError::csv(path, e))?;
    for t in &report.trace {
        w.write_record([
            t.iteration.to_string(),
            real(t.rel_u),
            real(t.rel_v),
            real(t.rel_b),
            t.primal_objective.map(real).unwrap_or_default(),
            real(t.feasibility),
        ])
        .map_err(|e| BenchError::csv(path, e))?;
    }
    w.flush().map_err(|e| BenchError::io(path, e))
}

struct RowSink {
    path: PathBuf,
    writer: csv::Writer<File>,
}

impl RowSink {
    fn create(path: &Path) -> Result<Self> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
        }
        let mut writer = csv::Writer::from_path(path).map_err(|e| BenchError::csv(path, e))?;
        writer
            .write_record(CSV_HEADER)
            .map_err(|e| BenchError::csv(path, e))?;
        writer.flush().map_err(|e| BenchError::io(path, e))?;
        Ok(RowSink {
            path: path.to_path_buf(),
            writer,
        })
    }

    fn push(&mut self, row: &ResultRow) -> Result<()> {
        self.writer
            .write_record(row.record())
            .map_err(|e| BenchError::csv(&self.path, e))?;
        self.writer
            .flush()
            .map_err(|e| BenchError::io(&self.path, e))
    }
}

/// Writes `rows` to `path` as CSV, header first.
pub fn emit_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    let mut sink = RowSink::create(path)?;
    for row in rows {
        sink.push(row)?;
    }
    Ok(())
}

/// Runs every solver on every cell. Rows are appended to `config.output` as
/// they complete, so an interrupted sweep keeps what it finished.
///
/// The instance of a cell depends only on `(m, r, nnz, seed)`, so all
/// solvers see the same data and the sweep order does not matter.
pub fn run_experiment_with(
    config: &ExperimentConfig,
    mut on_run: impl FnMut(&RunOutcome),
) -> Result<Vec<ResultRow>> {
    config.validate()?;
    let mut sink = RowSink::create(&config.output)?;
    if let Some(dir) = &config.trace_dir {
        std::fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    }
    let mut rows = Vec::new();
    for cell in config.cells() {
        let instance = generate(cell.m, cell.r, cell.nnz, cell.seed)?;
        for spec in &config.solvers {
            let outcome = run_cell(
                spec,
                &instance,
                &cell,
                config.gamma,
                config.max_iter,
                config.record_wall_time,
            )?;
            sink.push(&outcome.row)?;
            if let (Some(dir), Some(report)) = (&config.trace_dir, &outcome.report) {
                write_trace(&trace_path(dir, &outcome.row), report)?;
            }
            on_run(&outcome);
            rows.push(outcome.row);
        }
    }
    Ok(rows)
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    run_experiment_with(config, |_| {})
}

/// Human-readable summary line for progress output.
pub fn describe(row: &ResultRow, out: &mut impl Write) -> std::io::Result<()> {
    let opt = |x: Option<f64>| x.map(|v| format!("{v:.4e}")).unwrap_or_else(|| "-".into());
    writeln!(
        out,
        "{:<16} m={:<5} r={:<4} seed={:<4} k={:<5} rel_u*={} rel_v*={} rank={} {}",
        row.solver,
        row.m,
        row.r,
        row.seed,
        row.iterations,
        opt(row.rel_u_star),
        opt(row.rel_v_star),
        row.rank_u.map(|r| r.to_string()).unwrap_or_else(|| "-".into()),
        row.status
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> ResultRow {
        ResultRow {
            solver: "ADMM".into(),
            m: 10,
            r: 1,
            nnz: 5,
            epsilon: 1e-7,
            seed: 3,
            iterations: 42,
            rel_u_star: Some(1.0 / 3.0),
            rel_v_star: None,
            rank_u: Some(1),
            wall_time_s: None,
            status: Termination::Converged,
        }
    }

    #[test]
    fn record_layout() {
        let rec = row().record();
        assert_eq!(rec.len(), CSV_HEADER.len());
        assert_eq!(rec[4], "1.000000000000e-7");
        assert_eq!(rec[7], "3.333333333333e-1");
        assert_eq!(rec[8], "");
        assert_eq!(rec[11], "converged");
    }

    #[test]
    fn trace_file_names_are_sanitized() {
        let mut r = row();
        r.solver = "my solver/1".into();
        let p = trace_path(Path::new("t"), &r);
        assert_eq!(
            p,
            Path::new("t").join("my_solver_1_m10_r1_nnz5_eps1e-7_seed3.csv")
        );
    }
}
