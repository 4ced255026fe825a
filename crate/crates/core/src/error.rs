use thiserror::Error;

use crate::ricalc::ParseError;

/// Errors raised across the state algebra, channels, rates and RI calculus.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate subsystem label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),

    #[error("label sets overlap on `{0}`")]
    OverlappingLabels(String),

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPsd(f64),

    #[error("trace is {0} instead of 1")]
    InvalidTrace(f64),

    #[error("vector norm squared is {0} instead of 1")]
    InvalidNorm(f64),

    #[error("Kraus family is not trace preserving (deviation {0:.3e})")]
    NotTracePreserving(f64),

    #[error("matrix is not an isometry (deviation {0:.3e})")]
    NotIsometry(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("state too large for dense evaluation: {0}")]
    DimensionOverflow(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("cannot evaluate: {0}")]
    Unresolvable(String),

    #[error("no matching resources: {0}")]
    NoMatchingResources(String),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
