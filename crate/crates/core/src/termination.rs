use std::fmt;
use std::str::FromStr;

/// How an iterative solve ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    Converged,
    BudgetExhausted,
    Diverged,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::Converged => "converged",
            Termination::BudgetExhausted => "budget-exhausted",
            Termination::Diverged => "diverged",
        }
    }
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Termination {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "converged" => Ok(Termination::Converged),
            "budget-exhausted" => Ok(Termination::BudgetExhausted),
            "diverged" => Ok(Termination::Diverged),
            other => Err(format!("unknown termination status `{other}`")),
        }
    }
}
