use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("operands live over different variable lists")]
    VariableMismatch,
    #[error("{what} cap exceeded (limit {limit})")]
    CapExceeded { what: &'static str, limit: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("exponent overflow")]
    Overflow,
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn dim(expected: usize, found: usize) -> Self {
        Error::Dimension { expected, found }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
