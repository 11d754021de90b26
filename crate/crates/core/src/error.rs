//! Crate-wide error type.

/// Errors surfaced by the numeric kernels, learners, and environments.
#[derive(Debug, thiserror::Error)]
pub enum CoreError {
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("rank-deficient least-squares system")]
    RankDeficient,
    #[error("matrix not positive definite after damping fallback")]
    NotPositiveDefinite,
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("generation failed: {0}")]
    Generation(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
