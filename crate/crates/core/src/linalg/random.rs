use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::DenseMatrix;
use crate::error::{Error, Result};

/// Deterministic random stream: ChaCha8 keyed by a 64-bit seed.
///
/// ChaCha output is platform independent, so equal seeds give identical
/// matrices everywhere.
#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }

    /// Uniform draw on the closed interval `[lo, hi]`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.inner.random_range(lo..=hi)
    }

    /// Uniform index in `lo..hi`.
    pub fn index(&mut self, lo: usize, hi: usize) -> usize {
        self.inner.random_range(lo..hi)
    }
}

/// Matrix of i.i.d. standard normal entries, filled row by row.
pub fn randn_matrix(rng: &mut SeededRng, rows: usize, cols: usize) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            out.set(i, j, rng.standard_normal());
        }
    }
    out
}

/// Matrix with exactly `nnz` nonzero entries.
///
/// The support is drawn uniformly without replacement by a partial
/// Fisher-Yates shuffle over row-major linear indices; values are i.i.d.
/// uniform on `[lo, hi]`. An exact zero draw is redrawn so the nonzero
/// count is exact.
pub fn sparse_uniform_matrix(
    rng: &mut SeededRng,
    rows: usize,
    cols: usize,
    nnz: usize,
    lo: f64,
    hi: f64,
) -> Result<DenseMatrix> {
    if rows == 0 || cols == 0 {
        return Err(Error::Argument(format!("empty shape {rows}x{cols}")));
    }
    let total = rows * cols;
    if nnz > total {
        return Err(Error::Argument(format!(
            "nnz = {nnz} exceeds the {total} entries of a {rows}x{cols} matrix"
        )));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Argument(format!("invalid value range [{lo}, {hi}]")));
    }

    let mut linear: Vec<usize> = (0..total).collect();
    for i in 0..nnz {
        let j = rng.index(i, total);
        linear.swap(i, j);
    }

    let mut out = DenseMatrix::zeros(rows, cols);
    for &idx in &linear[..nnz] {
        let value = loop {
            let x = rng.uniform(lo, hi);
            if x != 0.0 {
                break x;
            }
        };
        out.set(idx / cols, idx % cols, value);
    }
    Ok(out)
}
