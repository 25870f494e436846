use thiserror::Error;

/// Errors raised by the exact geometry, construction, and counting routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("points are not cospherical within their affine span")]
    NotCospherical,

    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty search space: {0}")]
    EmptySearchSpace(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
