use thiserror::Error;

/// Errors raised by the arithmetic, reduction and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid sheaf type: {0}")]
    InvalidType(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0}")]
    DomainError(String),
    #[error("input out of bounds: {0}")]
    InputOutOfBounds(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    /// Control signal: the type already has rank equal to its hcf.
    #[error("base case reached: rank {rank} equals hcf")]
    BaseCaseReached { rank: i64 },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("weighted bundles live over different stacks: {0} vs {1}")]
    BaseMismatch(String, String),
    #[error("not covered by the generic-Hom theorem: {0}")]
    NotCovered(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("inconsistent splitting: {0}")]
    InvalidSplitting(String),
    #[error("splitting contradicts the slope-chain argument: {0}")]
    TheoremContradicted(String),
    #[error("certificate invalid at {path}: check `{check}` failed ({detail})")]
    CertificateInvalid {
        path: String,
        check: &'static str,
        detail: String,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
