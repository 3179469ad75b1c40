use std::sync::Arc;

use super::{LinearMap, Proximable};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// `min F(u) + G(v)  s.t.  M u + N v = b`
#[derive(Debug, Clone)]
pub struct TwoBlockProblem {
    pub f: Arc<dyn Proximable>,
    pub g: Arc<dyn Proximable>,
    pub m: Arc<dyn LinearMap>,
    pub n: Arc<dyn LinearMap>,
    pub b: DenseMatrix,
}

impl TwoBlockProblem {
    pub fn new(
        f: Arc<dyn Proximable>,
        g: Arc<dyn Proximable>,
        m: Arc<dyn LinearMap>,
        n: Arc<dyn LinearMap>,
        b: DenseMatrix,
    ) -> Result<Self> {
        if !b.is_finite() {
            return Err(Error::NonFinite);
        }
        for (name, map) in [("M", &m), ("N", &n)] {
            if map.codomain_shape() != b.shape() {
                return Err(Error::Config(format!(
                    "codomain of {name} is {:?} but b is {:?}",
                    map.codomain_shape(),
                    b.shape()
                )));
            }
        }
        Ok(TwoBlockProblem { f, g, m, n, b })
    }

    pub fn u_shape(&self) -> (usize, usize) {
        self.m.domain_shape()
    }

    pub fn v_shape(&self) -> (usize, usize) {
        self.n.domain_shape()
    }

    /// `M u + N v`
    pub fn reconstruct(&self, u: &DenseMatrix, v: &DenseMatrix) -> DenseMatrix {
        self.m.apply(u) + &self.n.apply(v)
    }

    /// `M u + N v − b`
    pub fn constraint_residual(&self, u: &DenseMatrix, v: &DenseMatrix) -> DenseMatrix {
        self.reconstruct(u, v) - &self.b
    }
}

/// `F(u) + G(v)`
pub fn objective(problem: &TwoBlockProblem, u: &DenseMatrix, v: &DenseMatrix) -> f64 {
    problem.f.value(u) + problem.g.value(v)
}
