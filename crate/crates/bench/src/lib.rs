//! Benchmark harness for the RPCP experiments: parameter sweeps over matrix
//! order, rank, sparsity, tolerance and seed for each configured solver,
//! with CSV output.

pub mod config;
mod error;
pub mod experiment;
pub mod table;
pub mod verify;

pub use config::{ExperimentConfig, Method, SolverSpec};
pub use error::{BenchError, Result};
pub use experiment::{emit_csv, run_experiment, ResultRow};
pub use table::print_param_table;
