//! Linear maps, proximable functions and the two-block problem they form.

mod linear;
mod problem;
mod prox;

pub use linear::{IdentityMap, LinearMap, MatrixMap, ScaledIdentity};
pub use problem::{objective, TwoBlockProblem};
pub use prox::{
    conjugate_prox, soft_threshold, svt, L1Norm, NuclearNorm, Proximable, SquaredDistance,
    ZeroFunction, CONJUGATE_FEASIBILITY_TOL,
};
