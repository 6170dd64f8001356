use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("tableau is not standard: {0}")]
    NotStandard(String),
    #[error("not a Carter-Payne pair: {0}")]
    NotCpPair(String),
    #[error("integer overflow in coefficient arithmetic")]
    Overflow,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("time budget of {0} s exhausted")]
    BudgetExhausted(u64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
