use thiserror::Error;

/// Errors raised by the special functions, the operator algebra and the solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole at non-positive integer x = {0}")]
    Pole(f64),

    #[error("gamma overflow: x = {0} exceeds the largest representable argument")]
    Overflow(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not meet the stopping rule within {max_terms} terms")]
    TruncationFailure { max_terms: usize },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("index {index} outside [0, {len})")]
    Index { index: usize, len: usize },

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("quadrature did not converge: {0}")]
    ConvergenceFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}
