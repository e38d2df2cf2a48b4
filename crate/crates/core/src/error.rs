use thiserror::Error;

/// Errors raised when constructing or combining correlation-theory objects.
#[derive(Debug, Error)]
pub enum Error {
    #[error("negative probability {value} at index {index}")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1 (tolerance {tol:e})")]
    Normalization { sum: f64, tol: f64 },

    #[error("empty distribution or table")]
    Empty,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("ragged table: row {row} has {len} entries, expected {expected}")]
    RaggedTable { row: usize, len: usize, expected: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("state norm is {0}, expected 1")]
    InvalidNorm(f64),

    #[error("operation requires a bipartite state, got dims ({0}, {1})")]
    NotBipartite(usize, usize),

    #[error("POVM elements sum to identity only within {0:e}")]
    Incomplete(f64),

    #[error("Kraus operators are not trace preserving (deviation {0:e})")]
    NotTracePreserving(f64),

    #[error("outcome {index} has probability {probability:e}; conditional state undefined")]
    ZeroProbabilityOutcome { index: usize, probability: f64 },

    #[error("outcome index {index} out of range for {len} elements")]
    OutcomeOutOfRange { index: usize, len: usize },

    #[error("invalid rank {rank} for dimension {dim}")]
    InvalidRank { rank: usize, dim: usize },

    #[error("covariance matrix is not symmetric (max deviation {0:e})")]
    NotSymmetric(f64),

    #[error("covariance matrix violates the uncertainty bound: smallest symplectic eigenvalue {0} < 1/2")]
    Unphysical(f64),

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
