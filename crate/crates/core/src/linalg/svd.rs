use nalgebra::DMatrix;

use super::DenseMatrix;
use crate::error::{Error, Result};

/// Thin SVD `A = U diag(σ) Vᵀ` with `k = min(rows, cols)`.
#[derive(Debug, Clone)]
pub struct SvdResult {
    /// `rows x k`, orthonormal columns.
    pub u: DenseMatrix,
    /// Nonincreasing, nonnegative, length `k`.
    pub singular_values: Vec<f64>,
    /// `cols x k`, orthonormal columns.
    pub v: DenseMatrix,
}

impl SvdResult {
    /// `U diag(d) Vᵀ` for a replacement spectrum `d` (length `k`).
    pub fn recompose_with(&self, spectrum: &[f64]) -> DenseMatrix {
        assert_eq!(spectrum.len(), self.singular_values.len());
        let mut us = self.u.as_nalgebra().clone();
        for (j, &s) in spectrum.iter().enumerate() {
            us.column_mut(j).scale_mut(s);
        }
        DenseMatrix::from_inner(us * self.v.as_nalgebra().transpose())
    }

    pub fn recompose(&self) -> DenseMatrix {
        self.recompose_with(&self.singular_values)
    }

    /// Number of singular values strictly above `rel_tol * σ₁`.
    pub fn numerical_rank(&self, rel_tol: f64) -> usize {
        let top = self.singular_values.first().copied().unwrap_or(0.0);
        if top == 0.0 {
            return 0;
        }
        self.singular_values
            .iter()
            .filter(|&&s| s > rel_tol * top)
            .count()
    }
}

/// Thin singular value decomposition.
///
/// Backed by faer, which stays accurate for repeated singular values. The
/// result is sorted so singular values are nonincreasing.
pub fn svd(a: &DenseMatrix) -> Result<SvdResult> {
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let (rows, cols) = a.shape();
    let inner = a.as_nalgebra();
    let raw = faer::Mat::<f64>::from_fn(rows, cols, |i, j| inner[(i, j)])
        .thin_svd()
        .map_err(|_| Error::SvdNoConvergence { rows, cols })?;
    let (u, v) = (raw.U(), raw.V());
    let sigma = raw.S().column_vector();
    let k = rows.min(cols);

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));

    let mut values = Vec::with_capacity(k);
    let mut u_sorted = DMatrix::zeros(rows, k);
    let mut v_sorted = DMatrix::zeros(cols, k);
    for (dst, &src) in order.iter().enumerate() {
        // guard against -0.0
        values.push(sigma[src].abs());
        for i in 0..rows {
            u_sorted[(i, dst)] = u[(i, src)];
        }
        for i in 0..cols {
            v_sorted[(i, dst)] = v[(i, src)];
        }
    }

    Ok(SvdResult {
        u: DenseMatrix::from_inner(u_sorted),
        singular_values: values,
        v: DenseMatrix::from_inner(v_sorted),
    })
}
