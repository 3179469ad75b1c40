use std::io::{self, Write};

use iadmm_core::admm::coupled_relaxation;

pub const TABLE_ALPHAS: [f64; 5] = [0.0, 0.05, 0.1, 0.2, 0.3];
pub const TABLE_SIGMA: f64 = 0.01;

/// Prints `(α, δ, λ)` of the coupled inertia/relaxation rule, one row per
/// `α`, rounded to 4 decimals.
pub fn print_param_table(alphas: &[f64], sigma: f64, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{:>8} {:>8} {:>8}", "alpha", "delta", "lambda")?;
    for &alpha in alphas {
        match coupled_relaxation(alpha, sigma) {
            Ok(c) => writeln!(out, "{alpha:>8.4} {:>8.4} {:>8.4}", c.delta, c.lambda)?,
            Err(e) => writeln!(out, "{alpha:>8.4} {e}")?,
        }
    }
    Ok(())
}
