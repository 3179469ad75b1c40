use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Bounded linear operator between matrix spaces.
///
/// Implementations must satisfy `⟨adjoint_apply(y), x⟩ = ⟨y, apply(x)⟩`.
pub trait LinearMap: Send + Sync + fmt::Debug {
    fn domain_shape(&self) -> (usize, usize);
    fn codomain_shape(&self) -> (usize, usize);
    fn apply(&self, x: &DenseMatrix) -> DenseMatrix;
    fn adjoint_apply(&self, y: &DenseMatrix) -> DenseMatrix;

    /// `Some(c)` when the map is `c·I`. Subproblems attached to such maps
    /// are solved in closed form.
    fn scaled_identity_factor(&self) -> Option<f64> {
        None
    }

    fn is_identity(&self) -> bool {
        self.scaled_identity_factor() == Some(1.0)
    }

    /// Declared by the constructor, never verified.
    fn has_full_column_rank(&self) -> bool;
}

#[derive(Debug, Clone, Copy)]
pub struct IdentityMap {
    shape: (usize, usize),
}

impl IdentityMap {
    pub fn new(rows: usize, cols: usize) -> Self {
        IdentityMap { shape: (rows, cols) }
    }
}

impl LinearMap for IdentityMap {
    fn domain_shape(&self) -> (usize, usize) {
        self.shape
    }
    fn codomain_shape(&self) -> (usize, usize) {
        self.shape
    }
    fn apply(&self, x: &DenseMatrix) -> DenseMatrix {
        x.clone()
    }
    fn adjoint_apply(&self, y: &DenseMatrix) -> DenseMatrix {
        y.clone()
    }
    fn scaled_identity_factor(&self) -> Option<f64> {
        Some(1.0)
    }
    fn has_full_column_rank(&self) -> bool {
        true
    }
}

/// `x ↦ c·x`.
#[derive(Debug, Clone, Copy)]
pub struct ScaledIdentity {
    shape: (usize, usize),
    factor: f64,
}

impl ScaledIdentity {
    pub fn new(rows: usize, cols: usize, factor: f64) -> Result<Self> {
        if !factor.is_finite() {
            return Err(Error::Argument(format!("non-finite scale factor {factor}")));
        }
        Ok(ScaledIdentity {
            shape: (rows, cols),
            factor,
        })
    }
}

impl LinearMap for ScaledIdentity {
    fn domain_shape(&self) -> (usize, usize) {
        self.shape
    }
    fn codomain_shape(&self) -> (usize, usize) {
        self.shape
    }
    fn apply(&self, x: &DenseMatrix) -> DenseMatrix {
        x.scale(self.factor)
    }
    fn adjoint_apply(&self, y: &DenseMatrix) -> DenseMatrix {
        y.scale(self.factor)
    }
    fn scaled_identity_factor(&self) -> Option<f64> {
        Some(self.factor)
    }
    fn has_full_column_rank(&self) -> bool {
        self.factor != 0.0
    }
}

/// Left multiplication `X ↦ A X` acting on `n x c` matrices, with `A` of
/// shape `p x n`.
#[derive(Debug, Clone)]
pub struct MatrixMap {
    matrix: DenseMatrix,
    matrix_t: DenseMatrix,
    columns: usize,
    full_column_rank: bool,
}

impl MatrixMap {
    pub fn new(matrix: DenseMatrix, columns: usize, full_column_rank: bool) -> Result<Self> {
        if columns == 0 {
            return Err(Error::Argument("operand must have at least one column".into()));
        }
        let matrix_t = matrix.transpose();
        Ok(MatrixMap {
            matrix,
            matrix_t,
            columns,
            full_column_rank,
        })
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }
}

impl LinearMap for MatrixMap {
    fn domain_shape(&self) -> (usize, usize) {
        (self.matrix.cols(), self.columns)
    }
    fn codomain_shape(&self) -> (usize, usize) {
        (self.matrix.rows(), self.columns)
    }
    fn apply(&self, x: &DenseMatrix) -> DenseMatrix {
        self.matrix.matmul(x)
    }
    fn adjoint_apply(&self, y: &DenseMatrix) -> DenseMatrix {
        self.matrix_t.matmul(y)
    }
    fn has_full_column_rank(&self) -> bool {
        self.full_column_rank
    }
}
