use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },

    #[error("face vertices must be strictly increasing: {0:?}")]
    NonCanonicalFace(Vec<u32>),

    #[error("expected a face of dimension {expected}, found dimension {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("mixed face dimensions in input")]
    MixedDimensions,

    #[error("empty input where a nonempty set is required")]
    EmptyInput,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("columns are linearly dependent over the rationals")]
    DependentColumns,

    #[error("process exhausted after {0} faces")]
    ProcessExhausted(usize),

    #[error("index {index} out of range (limit {limit})")]
    OutOfRange { index: usize, limit: usize },

    #[error("invariant violated: {0}")]
    Violation(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
