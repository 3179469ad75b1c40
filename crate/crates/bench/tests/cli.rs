use std::path::Path;
use std::process::Command;

use iadmm_bench::config::{ExperimentConfig, Method, SolverSpec};
use iadmm_bench::emit_csv;
use iadmm_bench::experiment::{run_experiment, trace_path, CSV_HEADER};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_iadmm-bench"))
}

fn small_config(dir: &Path, output: &str) -> ExperimentConfig {
    ExperimentConfig {
        orders: vec![20],
        rank_fractions: vec![0.1],
        sparsity_fractions: vec![0.05],
        epsilons: vec![1e-4],
        seeds: vec![1, 2, 3],
        max_iter: 1000,
        output: dir.join(output),
        solvers: vec![
            SolverSpec::new("ADMM", Method::Admm),
            SolverSpec::new("fixed", Method::InertialFixed).with_alpha(0.2),
        ],
        ..ExperimentConfig::default()
    }
}

fn write_config(dir: &Path, cfg: &ExperimentConfig) -> std::path::PathBuf {
    let path = dir.join("sweep.toml");
    std::fs::write(&path, cfg.to_toml()).unwrap();
    path
}

#[test]
fn sweep_writes_one_row_per_run_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path(), "a.csv");
    let path = write_config(dir.path(), &cfg);
    let traces = dir.path().join("traces");

    let status = bin()
        .args(["run", "--quiet", "--config"])
        .arg(&path)
        .arg("--trace-dir")
        .arg(&traces)
        .status()
        .unwrap();
    assert!(status.success());
    let first = std::fs::read_to_string(dir.path().join("a.csv")).unwrap();
    assert_eq!(first.lines().count(), 7);
    assert_eq!(first.lines().next().unwrap(), CSV_HEADER.join(","));

    let status = bin()
        .args(["run", "--quiet", "--config"])
        .arg(&path)
        .arg("--output")
        .arg(dir.path().join("b.csv"))
        .status()
        .unwrap();
    assert!(status.success());
    let second = std::fs::read_to_string(dir.path().join("b.csv")).unwrap();
    assert_eq!(first, second);

    // converged rows satisfy the stopping rule at their last traced iteration
    let rows = run_experiment(&small_config(dir.path(), "c.csv")).unwrap();
    assert_eq!(std::fs::read_to_string(dir.path().join("c.csv")).unwrap(), first);
    for row in &rows {
        assert_eq!(row.status.to_string(), "converged");
        let mut t = csv::Reader::from_path(trace_path(&traces, row)).unwrap();
        let last = t.records().last().unwrap().unwrap();
        assert_eq!(last[0].parse::<usize>().unwrap(), row.iterations);
        let worst = (1..=3)
            .map(|i| last[i].parse::<f64>().unwrap())
            .fold(0.0, f64::max);
        assert!(worst <= row.epsilon);
    }
    // metrics keep at least 10 significant digits
    for line in first.lines().skip(1) {
        let field = line.split(',').nth(7).unwrap();
        let digits = field.split('e').next().unwrap().replace(['.', '-'], "");
        assert!(digits.len() >= 10, "{field}");
    }
    assert_eq!(rows.len(), 6);
}

#[test]
fn flags_override_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path(), "a.csv");
    let path = write_config(dir.path(), &cfg);
    let out = dir.path().join("one.csv");
    let status = bin()
        .args(["run", "--quiet", "--config"])
        .arg(&path)
        .args(["--solver", "fixed", "--alpha", "0.1", "--seed", "9", "--max-iter", "5"])
        .arg("--output")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("fixed,20,2,20,"));
    assert!(lines[1].contains(",9,5,"));
    assert!(lines[1].ends_with(",,budget-exhausted"));
}

#[test]
fn invalid_configuration_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(dir.path(), "a.csv");
    cfg.solvers = vec![SolverSpec::new("bad", Method::InertialFixed)
        .with_alpha(0.3)
        .with_lambda(1.5)];
    let path = write_config(dir.path(), &cfg);
    let out = bin().args(["run", "--config"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid config"));
    assert!(!dir.path().join("a.csv").exists());

    let out = bin()
        .args(["run", "--config"])
        .arg(&path)
        .args(["--solver", "nope"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_rows_give_a_header_only_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    emit_csv(&[], &path).unwrap();
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text, format!("{}\n", CSV_HEADER.join(",")));
}

#[test]
fn param_table_prints_the_relaxations() {
    let out = bin().arg("param-table").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for lambda in ["1.9802", "1.7874", "1.6019", "1.2496", "0.9243"] {
        assert!(text.contains(lambda), "{text}");
    }
}

#[test]
fn verify_passes() {
    let out = bin().arg("verify").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 4);
}
