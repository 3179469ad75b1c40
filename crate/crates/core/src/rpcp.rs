//! Robust principal component pursuit
//!
//! ```text
//! min ‖u‖_* + μ‖v‖₁   s.t.  u + v = b
//! ```
//!
//! with synthetic instances `b = u* + v*`, where `u* = L Rᵀ` for Gaussian
//! `m x r` factors and `v*` has `nnz` entries drawn uniformly from
//! `[−500, 500]` on a uniformly random support.

use std::sync::Arc;

use crate::admm::RANK_REL_TOL;
use crate::error::{Error, Result};
use crate::linalg::{randn_matrix, sparse_uniform_matrix, svd, DenseMatrix, SeededRng};
use crate::operators::{IdentityMap, L1Norm, NuclearNorm, TwoBlockProblem};

/// Range of the nonzero entries of `v*`.
pub const SPARSE_RANGE: (f64, f64) = (-500.0, 500.0);

#[derive(Debug, Clone)]
pub struct RpcpInstance {
    pub m: usize,
    pub r: usize,
    pub nnz: usize,
    pub u_star: DenseMatrix,
    pub v_star: DenseMatrix,
    pub b: DenseMatrix,
    /// `1/√m`
    pub mu: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveryMetrics {
    /// `‖u − u*‖_F / ‖u*‖_F`
    pub rel_u_star: f64,
    /// `‖v − v*‖_F / ‖v*‖_F`, or the absolute error when `v* = 0`.
    pub rel_v_star: f64,
    pub rank_u: usize,
}

/// Draws an instance. `L`, `R` and then `v*` are taken from one stream
/// seeded with `seed`.
pub fn generate(m: usize, r: usize, nnz: usize, seed: u64) -> Result<RpcpInstance> {
    if m == 0 {
        return Err(Error::Argument("matrix order must be positive".into()));
    }
    if !(1..=m).contains(&r) {
        return Err(Error::Argument(format!("rank {r} outside 1..={m}")));
    }
    if nnz > m * m {
        return Err(Error::Argument(format!(
            "nnz {nnz} exceeds the {} entries of an order-{m} matrix",
            m * m
        )));
    }
    let mut rng = SeededRng::new(seed);
    let l = randn_matrix(&mut rng, m, r);
    let rf = randn_matrix(&mut rng, m, r);
    let u_star = l.matmul(&rf.transpose());
    let v_star = sparse_uniform_matrix(&mut rng, m, m, nnz, SPARSE_RANGE.0, SPARSE_RANGE.1)?;
    let b = &u_star + &v_star;
    Ok(RpcpInstance {
        m,
        r,
        nnz,
        u_star,
        v_star,
        b,
        mu: 1.0 / (m as f64).sqrt(),
        seed,
    })
}

impl RpcpInstance {
    /// `F = ‖·‖_*`, `G = μ‖·‖₁`, `M = N = I`.
    pub fn as_problem(&self) -> TwoBlockProblem {
        TwoBlockProblem::new(
            Arc::new(NuclearNorm::new(1.0)),
            Arc::new(L1Norm::new(self.mu)),
            Arc::new(IdentityMap::new(self.m, self.m)),
            Arc::new(IdentityMap::new(self.m, self.m)),
            self.b.clone(),
        )
        .expect("generated instances are finite and square")
    }

    pub fn recovery_metrics(&self, u: &DenseMatrix, v: &DenseMatrix) -> Result<RecoveryMetrics> {
        u.ensure_shape("u", self.u_star.shape())?;
        v.ensure_shape("v", self.v_star.shape())?;
        let rel = |x: &DenseMatrix, star: &DenseMatrix| {
            let den = star.frobenius_norm();
            let num = x.distance(star);
            if den == 0.0 {
                num
            } else {
                num / den
            }
        };
        Ok(RecoveryMetrics {
            rel_u_star: rel(u, &self.u_star),
            rel_v_star: rel(v, &self.v_star),
            rank_u: svd(u)?.numerical_rank(RANK_REL_TOL),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::svt;

    #[test]
    fn instance_invariants() {
        let inst = generate(30, 4, 45, 7).unwrap();
        assert_eq!(inst.v_star.count_nonzero(), 45);
        assert!(inst.v_star.max_abs() <= 500.0);
        assert_eq!(inst.b, &inst.u_star + &inst.v_star);
        assert!((inst.mu * 30f64.sqrt() - 1.0).abs() <= f64::EPSILON);
        let s = svd(&inst.u_star).unwrap().singular_values;
        assert!(s[4] / s[0] < 1e-10);
        assert!(s[3] / s[0] > 1e-3);
    }

    #[test]
    fn deterministic_under_seed() {
        let a = generate(12, 3, 10, 99).unwrap();
        let b = generate(12, 3, 10, 99).unwrap();
        let c = generate(12, 3, 10, 100).unwrap();
        assert_eq!(a.b, b.b);
        assert_ne!(a.b, c.b);
    }

    #[test]
    fn no_sparse_part() {
        let inst = generate(10, 2, 0, 1).unwrap();
        assert_eq!(inst.v_star.count_nonzero(), 0);
        assert_eq!(inst.b, inst.u_star);
    }

    #[test]
    fn full_rank_when_r_equals_m() {
        let inst = generate(15, 15, 0, 3).unwrap();
        let m = inst.recovery_metrics(&inst.u_star, &inst.v_star).unwrap();
        assert_eq!(m.rank_u, 15);
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(generate(5, 0, 0, 1), Err(Error::Argument(_))));
        assert!(matches!(generate(5, 6, 0, 1), Err(Error::Argument(_))));
        assert!(matches!(generate(5, 2, 26, 1), Err(Error::Argument(_))));
    }

    #[test]
    fn ground_truth_metrics_and_objective() {
        let inst = generate(20, 3, 20, 5).unwrap();
        let m = inst.recovery_metrics(&inst.u_star, &inst.v_star).unwrap();
        assert_eq!((m.rel_u_star, m.rel_v_star, m.rank_u), (0.0, 0.0, 3));

        let p = inst.as_problem();
        let nuclear: f64 = svd(&inst.u_star).unwrap().singular_values.iter().sum();
        let l1: f64 = inst.v_star.iter().map(|x| x.abs()).sum();
        let obj = crate::operators::objective(&p, &inst.u_star, &inst.v_star);
        assert!((obj - (nuclear + inst.mu * l1)).abs() < 1e-9 * obj);
    }

    #[test]
    fn blocks() {
        let inst = generate(10, 2, 0, 1).unwrap();
        let p = inst.as_problem();
        let mut d = DenseMatrix::zeros(10, 10);
        d.set(0, 0, 3.0);
        d.set(1, 1, 1.0);
        assert!((p.f.value(&d) - 4.0).abs() < 1e-12);

        let g = L1Norm::new(0.1);
        let v = DenseMatrix::from_row_slice(1, 2, &[-2.0, 5.0]).unwrap();
        assert!((crate::operators::Proximable::value(&g, &v) - 0.7).abs() < 1e-15);

        let x = inst.b.scale(0.01);
        assert_eq!(p.f.prox(&x, 100.0).unwrap(), svt(&x, 100.0).unwrap());
        assert!(p.f.conjugate_value(&x).is_some());
        assert!(p.g.conjugate_value(&x).is_some());
    }
}
