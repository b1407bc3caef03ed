use thiserror::Error;

/// Errors raised while composing, parameterizing or querying a model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("milieu matrix is not square: {rows} rows, row {row} has {cols} columns")]
    NonSquareMilieu { rows: usize, row: usize, cols: usize },

    #[error("entity {entity} has {degree} milieu neighbours but the update function declares arity {arity}")]
    ArityMismatch {
        entity: usize,
        degree: usize,
        arity: usize,
    },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("incomplete parameters: {0}")]
    IncompleteParameters(String),

    #[error("index {index} out of range for {len} entities")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("value {value} out of range {min}..={max}")]
    OutOfRange { value: i64, min: i64, max: i64 },

    #[error("invalid character {ch:?} at position {position} (expected '0' or '1')")]
    InvalidCharacter { ch: char, position: usize },

    #[error("empty state string")]
    Empty,

    #[error("state {value} at position {position} is not binary")]
    NonBinaryState { value: u8, position: usize },

    #[error("ring width {0} is below the minimum of 3")]
    WidthTooSmall(usize),

    #[error("learning rate must be finite and positive, got {0}")]
    InvalidLearningRate(f64),

    #[error("threshold must lie in [0, 1], got {0}")]
    InvalidThreshold(f64),

    #[error("malformed weight line {line}: {reason}")]
    MalformedWeights { line: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
