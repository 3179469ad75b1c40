//! `min ½(u − 3)² + ½(v + 1)²  s.t.  u + v = 1`, whose saddle point is
//! `(u, v, y) = (2.5, −1.5, 0.5)`.

use std::sync::Arc;

use iadmm_core::admm::{diagnostics, AdmmParams, AdmmSolver, DEFAULT_ALPHA_CAP};
use iadmm_core::operators::{IdentityMap, SquaredDistance};
use iadmm_core::{DenseMatrix, Termination, TwoBlockProblem};

fn s(v: f64) -> DenseMatrix {
    DenseMatrix::scalar(v)
}

fn problem() -> TwoBlockProblem {
    TwoBlockProblem::new(
        Arc::new(SquaredDistance::new(s(3.0), 1.0)),
        Arc::new(SquaredDistance::new(s(-1.0), 1.0)),
        Arc::new(IdentityMap::new(1, 1)),
        Arc::new(IdentityMap::new(1, 1)),
        s(1.0),
    )
    .unwrap()
}

fn solvers() -> Vec<(&'static str, AdmmParams)> {
    vec![
        ("admm", AdmmParams::classical(1.0)),
        ("gadmm", AdmmParams::generalized(1.0, 1.6)),
        ("inertial-proximal", AdmmParams::inertial_proximal(1.0, 0.3)),
        ("inertial", AdmmParams::inertial(1.0, 0.2, 1.2496, 0.01)),
        (
            "inertial-adaptive",
            AdmmParams::inertial_adaptive(1.0, 1.5, DEFAULT_ALPHA_CAP),
        ),
    ]
}

#[test]
fn every_solver_reaches_the_saddle_point() {
    for (name, params) in solvers() {
        let params = params.with_tolerance(1e-15).with_max_iter(500);
        let report = AdmmSolver::new(problem(), params).unwrap().solve().unwrap();
        let st = &report.state;
        let err = (st.u.get(0, 0) - 2.5)
            .abs()
            .max((st.v.get(0, 0) + 1.5).abs())
            .max((st.y.get(0, 0) - 0.5).abs());
        assert!(err < 1e-8, "{name}: error {err:e} after {}", report.iterations);
        assert_ne!(report.status, Termination::Diverged);
        assert!(report.iterations <= 500);
    }
}

#[test]
fn default_tolerance_stops_with_small_ratios() {
    for (name, params) in solvers() {
        let report = AdmmSolver::new(problem(), params).unwrap().solve().unwrap();
        assert_eq!(report.status, Termination::Converged, "{name}");
        let last = report.trace.last().unwrap();
        assert!(last.rel_u.max(last.rel_v).max(last.rel_b) <= 1e-7, "{name}");
        let d = diagnostics(&problem(), &report.state, 1.0).unwrap();
        assert!(d.kkt.max() < 1e-5, "{name}: {:?}", d.kkt);
    }
}
