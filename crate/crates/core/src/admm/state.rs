use crate::linalg::DenseMatrix;
use crate::operators::TwoBlockProblem;

/// Parameters actually used by the most recent step.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepRecord {
    pub alpha: f64,
    pub lambda: f64,
    /// `α‖pᵏ + γλₖ(Muᵏ⁺¹ + Nvᵏ − b)‖²` for the inertial variant, zero
    /// otherwise.
    pub inertia_increment: f64,
}

#[derive(Debug, Clone)]
pub struct AdmmState {
    pub u: DenseMatrix,
    pub v: DenseMatrix,
    pub y: DenseMatrix,
    /// Auxiliary inertial sequence, only updated by the inertial variant.
    pub p: DenseMatrix,
    pub u_prev: DenseMatrix,
    pub v_prev: DenseMatrix,
    pub y_prev: DenseMatrix,
    /// Completed iterations.
    pub iteration: usize,
    pub last_step: StepRecord,
}

impl AdmmState {
    /// `u = v = y = p = 0`, with the history equal to the current values.
    pub fn zeros(problem: &TwoBlockProblem) -> Self {
        let (ur, uc) = problem.u_shape();
        let (vr, vc) = problem.v_shape();
        let (br, bc) = problem.b.shape();
        Self::from_start(
            DenseMatrix::zeros(ur, uc),
            DenseMatrix::zeros(vr, vc),
            DenseMatrix::zeros(br, bc),
        )
    }

    pub fn from_start(u: DenseMatrix, v: DenseMatrix, y: DenseMatrix) -> Self {
        AdmmState {
            p: DenseMatrix::zeros(y.rows(), y.cols()),
            u_prev: u.clone(),
            v_prev: v.clone(),
            y_prev: y.clone(),
            u,
            v,
            y,
            iteration: 0,
            last_step: StepRecord::default(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.v.is_finite() && self.y.is_finite() && self.p.is_finite()
    }

    /// Successor state: current values move into the history.
    pub(crate) fn advance(
        &self,
        u: DenseMatrix,
        v: DenseMatrix,
        y: DenseMatrix,
        p: DenseMatrix,
        last_step: StepRecord,
    ) -> AdmmState {
        AdmmState {
            u_prev: self.u.clone(),
            v_prev: self.v.clone(),
            y_prev: self.y.clone(),
            u,
            v,
            y,
            p,
            iteration: self.iteration + 1,
            last_step,
        }
    }
}
