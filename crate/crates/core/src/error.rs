use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("input vectors are linearly dependent")]
    DependentInput,

    #[error("negative radicand: {0}")]
    NegativeRadicand(String),

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("no admissible block length l for m = {0} (need m >= 8)")]
    NoBlockLength(u64),

    #[error("state lies outside the typical subspace: overlap {overlap} < 1 - 1e-9")]
    OutsideTypicalSubspace { overlap: f64 },

    #[error("projector set is not a resolution of the identity (defect {0:e})")]
    NotResolutionOfIdentity(f64),

    #[error("unitarity certification failed: {0}")]
    CertificationFailed(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("zero-rank projector")]
    ZeroRank,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization: {0}")]
    Serde(#[from] serde_json::Error),
}
