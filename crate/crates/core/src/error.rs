use thiserror::Error;

/// Errors produced by the linear algebra layer and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("shape mismatch in {context}: expected {expected:?}, found {found:?}")]
    Shape {
        context: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("SVD of a {rows}x{cols} matrix did not converge")]
    SvdNoConvergence { rows: usize, cols: usize },

    #[error("solver configuration error: {0}")]
    Config(String),

    /// An iterate became NaN or infinite. The state passed into the failing
    /// step is the last finite one.
    #[error("iterate became non-finite at iteration {iteration}")]
    Diverged { iteration: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
