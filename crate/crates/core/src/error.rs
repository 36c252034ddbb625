use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An operation was called outside its domain (non-spin model, bad divisibility, …).
    #[error("{0}")]
    Precondition(String),
    /// Malformed input data.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// Fixed-point data that contradicts itself.
    #[error("inconsistent fixed-point data: {0}")]
    Inconsistent(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
