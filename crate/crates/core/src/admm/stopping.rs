use super::state::AdmmState;
use crate::linalg::DenseMatrix;
use crate::operators::TwoBlockProblem;

/// Outcome of the relative-change test between two consecutive iterates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StopCheck {
    pub stop: bool,
    pub rel_u: f64,
    pub rel_v: f64,
    /// Relative change of the reconstruction `bᵏ = Muᵏ + Nvᵏ`.
    pub rel_b: f64,
}

impl StopCheck {
    pub fn max(&self) -> f64 {
        self.rel_u.max(self.rel_v).max(self.rel_b)
    }
}

/// `‖next − prev‖_F / ‖prev‖_F`. A zero denominator yields 0 when the
/// numerator is also zero and the absolute change otherwise.
pub fn relative_change(prev: &DenseMatrix, next: &DenseMatrix) -> f64 {
    let num = next.distance(prev);
    let den = prev.frobenius_norm();
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

/// Stops once all three relative changes are at most `epsilon`.
pub fn stopping_check(
    problem: &TwoBlockProblem,
    prev: &AdmmState,
    next: &AdmmState,
    epsilon: f64,
) -> StopCheck {
    let rel_u = relative_change(&prev.u, &next.u);
    let rel_v = relative_change(&prev.v, &next.v);
    let rel_b = relative_change(
        &problem.reconstruct(&prev.u, &prev.v),
        &problem.reconstruct(&next.u, &next.v),
    );
    StopCheck {
        stop: rel_u <= epsilon && rel_v <= epsilon && rel_b <= epsilon,
        rel_u,
        rel_v,
        rel_b,
    }
}
