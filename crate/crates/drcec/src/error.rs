use thiserror::Error;

/// Crate-wide error type. The CLI maps variants onto process exit codes, so
/// new variants should be added to `Error::exit_code` as well.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed text input; `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Structurally invalid data or arguments (out-of-range ids, dimension
    /// mismatches, unusable configuration).
    #[error("{0}")]
    InvalidInput(String),

    /// An exhaustive-enumeration request was refused because it would exceed
    /// the configured budget.
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    /// The LP solver failed to produce a usable answer (infeasible or
    /// unbounded where neither should be possible, or a certificate check
    /// failed).
    #[error("solver failure: {0}")]
    Solver(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Process exit code used by the command-line frontend: 2 for bad input,
    /// 3 for refused budgets, 4 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::InvalidInput(_) | Error::Io(_) => 2,
            Error::BudgetExceeded(_) => 3,
            Error::Solver(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
