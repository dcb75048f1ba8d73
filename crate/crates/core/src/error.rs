use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero raised to negative power {0}")]
    ZeroToNegativePower(i64),
    #[error("composition requires an inner series with zero constant term")]
    NonZeroConstantTerm,
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series has zero constant term and cannot be inverted")]
    NotInvertible,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse {input:?} as a rational")]
    ParseRational { input: String },
    #[error("line {line}: {message}")]
    Input { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
