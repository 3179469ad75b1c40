//! A coupling matrix without closed-form block updates, solved through a
//! user-supplied subproblem oracle.

use std::sync::Arc;

use iadmm_core::admm::{
    AdmmParams, AdmmSolver, ClosedFormOracle, Subproblem, SubproblemOracle,
};
use iadmm_core::operators::{IdentityMap, MatrixMap, SquaredDistance};
use iadmm_core::{DenseMatrix, Error, Result, TwoBlockProblem};

const A: [f64; 4] = [2.0, 1.0, 0.0, 1.0];

fn col(a: f64, b: f64) -> DenseMatrix {
    DenseMatrix::from_row_slice(2, 1, &[a, b]).unwrap()
}

/// Solves `K x = rhs` for a 2x2 `K`.
fn solve2(k: [f64; 4], rhs: &DenseMatrix) -> DenseMatrix {
    let det = k[0] * k[3] - k[1] * k[2];
    let (r0, r1) = (rhs.get(0, 0), rhs.get(1, 0));
    col((k[3] * r0 - k[1] * r1) / det, (k[0] * r1 - k[2] * r0) / det)
}

fn problem() -> TwoBlockProblem {
    let m = DenseMatrix::from_row_slice(2, 2, &A).unwrap();
    TwoBlockProblem::new(
        Arc::new(SquaredDistance::new(col(3.0, -2.0), 1.0)),
        Arc::new(SquaredDistance::new(col(0.5, 1.0), 1.0)),
        Arc::new(MatrixMap::new(m, 1, true).unwrap()),
        Arc::new(IdentityMap::new(2, 1)),
        col(1.0, 2.0),
    )
    .unwrap()
}

/// `F = ½‖u − a‖²` with a general `M`: `(I + γMᵀM) u = a − Mᵀc + γMᵀd`.
struct QuadraticOracle {
    a: DenseMatrix,
}

impl SubproblemOracle for QuadraticOracle {
    fn solve_u(&self, problem: &TwoBlockProblem, sub: &Subproblem<'_>) -> Result<DenseMatrix> {
        let g = sub.gamma;
        let mt_m = [
            A[0] * A[0] + A[2] * A[2],
            A[0] * A[1] + A[2] * A[3],
            A[1] * A[0] + A[3] * A[2],
            A[1] * A[1] + A[3] * A[3],
        ];
        let k = [1.0 + g * mt_m[0], g * mt_m[1], g * mt_m[2], 1.0 + g * mt_m[3]];
        let mut rhs = self.a.clone();
        rhs.axpy(-1.0, &problem.m.adjoint_apply(sub.multiplier));
        rhs.axpy(g, &problem.m.adjoint_apply(sub.target));
        Ok(solve2(k, &rhs))
    }

    fn solve_v(&self, problem: &TwoBlockProblem, sub: &Subproblem<'_>) -> Result<DenseMatrix> {
        ClosedFormOracle.solve_v(problem, sub)
    }
}

#[test]
fn closed_form_is_refused_for_a_general_map() {
    let err = AdmmSolver::new(problem(), AdmmParams::classical(1.0)).unwrap_err();
    assert!(matches!(err, Error::Config(_)));
}

#[test]
fn oracle_driven_solvers_reach_the_kkt_point() {
    // u = a − Mᵀy, v = c − y, (MMᵀ + I) y = Ma + c − b
    let a = col(3.0, -2.0);
    let m = DenseMatrix::from_row_slice(2, 2, &A).unwrap();
    let mmt = m.matmul(&m.transpose());
    let k = [
        mmt.get(0, 0) + 1.0,
        mmt.get(0, 1),
        mmt.get(1, 0),
        mmt.get(1, 1) + 1.0,
    ];
    let rhs = m.matmul(&a) + &col(0.5, 1.0) - &col(1.0, 2.0);
    let y = solve2(k, &rhs);
    let u = &a - &m.transpose().matmul(&y);
    let v = &col(0.5, 1.0) - &y;

    for params in [
        AdmmParams::classical(1.0),
        AdmmParams::generalized(1.0, 1.5),
        AdmmParams::inertial(1.0, 0.2, 1.2496, 0.01),
    ] {
        let oracle = Arc::new(QuadraticOracle { a: a.clone() });
        let params = params.with_tolerance(1e-14).with_max_iter(2000);
        let report = AdmmSolver::with_oracle(problem(), params, oracle)
            .unwrap()
            .solve()
            .unwrap();
        let st = &report.state;
        let err = st.u.distance(&u).max(st.v.distance(&v)).max(st.y.distance(&y));
        assert!(err < 1e-8, "error {err:e}");
    }
}
