use thiserror::Error;

/// Errors raised by instance construction, numeric evaluation and sampling.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("balls overlap or touch (delta <= 0)")]
    BallsOverlapOrTouch,

    #[error("bias half-range k = {k} is below max(|c|, |x|) = {required}")]
    KInsufficient { k: f64, required: f64 },

    #[error("dimension {0} is below the minimum of 2")]
    DimensionTooSmall(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),

    #[error("vector has a non-finite component")]
    NonFinite,

    #[error("vector norm {0:e} is too small to normalize")]
    DegenerateVector(f64),

    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(f64),

    #[error("{name} = {value} is out of range")]
    ArgumentOutOfRange { name: &'static str, value: f64 },

    #[error("continued fraction did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("internal consistency violation: {0}")]
    Consistency(String),

    #[error("instance list is empty")]
    EmptyInstanceList,

    #[error("{0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
