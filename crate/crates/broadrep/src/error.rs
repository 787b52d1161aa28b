//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Parameter validation failed; the message names the violated constraint.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// q failed the primality check.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// No irreducible modulus found within the search budget. One always
    /// exists, so hitting this signals a bug in the search.
    #[error("no irreducible modulus of degree {l} over F_{q} found in {tries} tries")]
    NoIrreducible { q: u64, l: usize, tries: usize },

    /// An element was used under a context with a different degree/modulus.
    #[error("field context mismatch: expected {expected} coordinates, got {got}")]
    ContextMismatch { expected: usize, got: usize },

    #[error("division by zero in the field")]
    ZeroInverse,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),

    /// Interpolation requires evaluation points independent over the base field.
    #[error("evaluation points are linearly dependent (rank {rank} < {needed})")]
    DependentPoints { rank: usize, needed: usize },

    /// gamma below the feasible range of the trade-off curve.
    #[error("bandwidth {gamma} is below the feasible range (minimum {min_gamma})")]
    InfeasibleBandwidth { gamma: String, min_gamma: String },

    #[error("index {0} out of range")]
    IndexOutOfRange(usize),

    /// Reconstruction failure: the selected nodes span too little.
    #[error("reconstruction failed: dimension {achieved} < required {required}")]
    DimensionDeficit { achieved: usize, required: usize },

    /// A newcomer kept drawing dependent recombination rows.
    #[error("recombination retries exhausted after {0} attempts")]
    RetriesExhausted(usize),

    /// Enumeration or sampling budget exceeded.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// The data collector vertex is unreachable from the source.
    #[error("data collector is disconnected from the source")]
    DisconnectedDc,

    #[error("pattern needs at least {needed} rounds, got {got}")]
    InsufficientRounds { needed: usize, got: usize },

    /// A repair-matrix row referenced the same helper twice where the
    /// parameters guarantee distinctness.
    #[error("repair matrix row {row} references helper slot {slot} twice")]
    DistinctHelpersViolated { row: usize, slot: usize },

    #[error("erasure bookkeeping mismatch: node {node} has {got} erased packets, expected {expected}")]
    ErasureMismatch { node: usize, got: usize, expected: usize },

    #[error("payload does not fit: capacity {capacity} bytes, need {needed}")]
    PayloadTooLarge { capacity: usize, needed: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
