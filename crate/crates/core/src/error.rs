use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or mathematically inconsistent input.
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("the group {0} is infinite")]
    Infinite(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    /// A mathematical identity that should hold was found to fail.
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn check(msg: impl Into<String>) -> Self {
        Error::CheckFailed(msg.into())
    }
}
