//! Solvers for two-block separable convex minimization
//!
//! ```text
//! min F(u) + G(v)   s.t.  M u + N v = b
//! ```
//!
//! The crate provides the classical ADMM, the generalized ADMM (relaxed
//! v- and y-updates), an inertial proximal ADMM, and an
//! inertial ADMM obtained by running inertial Douglas-Rachford splitting on
//! the dual problem. The generic inertial Douglas-Rachford iteration is also
//! exposed on its own, together with the dual resolvents that link the two.
//!
//! Robust principal component pursuit (`min ‖u‖_* + μ‖v‖₁ s.t. u + v = b`)
//! is shipped as the reference application, see [`rpcp`].

pub mod admm;
pub mod dr;
mod error;
pub mod linalg;
pub mod operators;
pub mod rpcp;
pub mod schedule;
mod termination;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, SeededRng, SvdResult};
pub use operators::{LinearMap, Proximable, TwoBlockProblem};
pub use schedule::Schedule;
pub use termination::Termination;
