//! Dense real matrices, SVD and seeded random generation.

mod random;
mod svd;

pub use random::{randn_matrix, sparse_uniform_matrix, SeededRng};
pub use svd::{svd, SvdResult};

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Dense real matrix. Vectors and scalars are stored as `n x 1` and `1 x 1`
/// matrices.
///
/// Constructors reject empty shapes and non-finite entries. Arithmetic does
/// not re-check finiteness; solvers call [`DenseMatrix::is_finite`] on their
/// iterates instead.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix(DMatrix<f64>);

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix shape must be at least 1x1");
        DenseMatrix(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "matrix shape must be at least 1x1");
        DenseMatrix(DMatrix::identity(n, n))
    }

    pub fn scalar(value: f64) -> Self {
        DenseMatrix(DMatrix::from_element(1, 1, value))
    }

    /// Builds a matrix from entries listed row by row.
    pub fn from_row_slice(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Argument(format!("empty shape {rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Argument(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(DenseMatrix(DMatrix::from_row_slice(rows, cols, entries)))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = DenseMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.0[(i, i)] = d;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix shape must be at least 1x1");
        DenseMatrix(DMatrix::from_fn(rows, cols, f))
    }

    /// Wraps a nalgebra matrix, checking shape and finiteness.
    pub fn from_nalgebra(inner: DMatrix<f64>) -> Result<Self> {
        if inner.nrows() == 0 || inner.ncols() == 0 {
            return Err(Error::Argument("empty matrix".into()));
        }
        if inner.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(DenseMatrix(inner))
    }

    pub(crate) fn from_inner(inner: DMatrix<f64>) -> Self {
        DenseMatrix(inner)
    }

    pub fn as_nalgebra(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_nalgebra(self) -> DMatrix<f64> {
        self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.0[(row, col)] = value;
    }

    /// Entries in row-major order.
    pub fn to_row_major(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = &f64> {
        self.0.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn count_nonzero(&self) -> usize {
        self.0.iter().filter(|&&x| x != 0.0).count()
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius_norm(self)
    }

    pub fn frobenius_norm_squared(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// Trace inner product `⟨A, B⟩ = Σ aᵢⱼ bᵢⱼ`.
    pub fn dot(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape(), "inner product shape mismatch");
        self.0.dot(&other.0)
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix(self.0.transpose())
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols(), other.rows(), "matmul shape mismatch");
        DenseMatrix(&self.0 * &other.0)
    }

    pub fn scale(&self, factor: f64) -> DenseMatrix {
        DenseMatrix(&self.0 * factor)
    }

    pub fn map(&self, f: impl FnMut(f64) -> f64) -> DenseMatrix {
        DenseMatrix(self.0.map(f))
    }

    /// `self += factor * other`
    pub fn axpy(&mut self, factor: f64, other: &DenseMatrix) {
        assert_eq!(self.shape(), other.shape(), "axpy shape mismatch");
        for (a, &b) in self.0.iter_mut().zip(other.0.iter()) {
            *a += factor * b;
        }
    }

    /// Linear combination `a * x + b * y`.
    pub fn lincomb(a: f64, x: &DenseMatrix, b: f64, y: &DenseMatrix) -> DenseMatrix {
        let mut out = x.scale(a);
        out.axpy(b, y);
        out
    }

    /// Frobenius distance `‖self - other‖_F`.
    pub fn distance(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape(), "distance shape mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub(crate) fn ensure_shape(&self, context: &'static str, expected: (usize, usize)) -> Result<()> {
        if self.shape() != expected {
            return Err(Error::Shape {
                context,
                expected,
                found: self.shape(),
            });
        }
        Ok(())
    }
}

/// `sqrt(Σ aᵢⱼ²)`, computed with scaling so huge or tiny entries do not
/// overflow or underflow.
pub fn frobenius_norm(a: &DenseMatrix) -> f64 {
    let scale = a.max_abs();
    if scale == 0.0 {
        return 0.0;
    }
    let sum: f64 = a.0.iter().map(|x| (x / scale) * (x / scale)).sum();
    scale * sum.sqrt()
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DenseMatrix {}x{} {:?}", self.rows(), self.cols(), self.to_row_major())
    }
}

impl<'a> Add<&'a DenseMatrix> for &'a DenseMatrix {
    type Output = DenseMatrix;
    fn add(self, rhs: &'a DenseMatrix) -> DenseMatrix {
        assert_eq!(self.shape(), rhs.shape(), "add shape mismatch");
        DenseMatrix(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a DenseMatrix> for &'a DenseMatrix {
    type Output = DenseMatrix;
    fn sub(self, rhs: &'a DenseMatrix) -> DenseMatrix {
        assert_eq!(self.shape(), rhs.shape(), "sub shape mismatch");
        DenseMatrix(&self.0 - &rhs.0)
    }
}

impl Add<&DenseMatrix> for DenseMatrix {
    type Output = DenseMatrix;
    fn add(mut self, rhs: &DenseMatrix) -> DenseMatrix {
        self += rhs;
        self
    }
}

impl Sub<&DenseMatrix> for DenseMatrix {
    type Output = DenseMatrix;
    fn sub(mut self, rhs: &DenseMatrix) -> DenseMatrix {
        self -= rhs;
        self
    }
}

impl AddAssign<&DenseMatrix> for DenseMatrix {
    fn add_assign(&mut self, rhs: &DenseMatrix) {
        assert_eq!(self.shape(), rhs.shape(), "add shape mismatch");
        self.0 += &rhs.0;
    }
}

impl SubAssign<&DenseMatrix> for DenseMatrix {
    fn sub_assign(&mut self, rhs: &DenseMatrix) {
        assert_eq!(self.shape(), rhs.shape(), "sub shape mismatch");
        self.0 -= &rhs.0;
    }
}

impl Mul<f64> for &DenseMatrix {
    type Output = DenseMatrix;
    fn mul(self, rhs: f64) -> DenseMatrix {
        self.scale(rhs)
    }
}

impl Mul<f64> for DenseMatrix {
    type Output = DenseMatrix;
    fn mul(mut self, rhs: f64) -> DenseMatrix {
        self.0 *= rhs;
        self
    }
}

impl Neg for &DenseMatrix {
    type Output = DenseMatrix;
    fn neg(self) -> DenseMatrix {
        DenseMatrix(-&self.0)
    }
}

impl Neg for DenseMatrix {
    type Output = DenseMatrix;
    fn neg(self) -> DenseMatrix {
        DenseMatrix(-self.0)
    }
}
