use std::fmt;
use std::sync::Arc;

/// A real parameter sequence indexed by iteration number `k ≥ 1`.
#[derive(Clone)]
pub enum Schedule {
    Constant(f64),
    Sequence(Arc<dyn Fn(usize) -> f64 + Send + Sync>),
}

impl Schedule {
    pub fn constant(value: f64) -> Self {
        Schedule::Constant(value)
    }

    pub fn from_fn(f: impl Fn(usize) -> f64 + Send + Sync + 'static) -> Self {
        Schedule::Sequence(Arc::new(f))
    }

    pub fn at(&self, k: usize) -> f64 {
        match self {
            Schedule::Constant(v) => *v,
            Schedule::Sequence(f) => f(k),
        }
    }

    /// Values at `1..=horizon`. Constant schedules yield one value.
    pub(crate) fn samples(&self, horizon: usize) -> Vec<f64> {
        match self {
            Schedule::Constant(v) => vec![*v],
            Schedule::Sequence(f) => (1..=horizon).map(|k| f(k)).collect(),
        }
    }
}

impl fmt::Debug for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::Constant(v) => write!(f, "Constant({v})"),
            Schedule::Sequence(_) => write!(f, "Sequence(..)"),
        }
    }
}

impl From<f64> for Schedule {
    fn from(v: f64) -> Self {
        Schedule::Constant(v)
    }
}
