use thiserror::Error;

/// Errors raised by the model, kinetics, search, and I/O layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TbnError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("empty TBN: at least one monomer is required")]
    EmptyTbn,
    #[error("invalid bond strength: {0}")]
    BondStrength(String),
    #[error("unknown monomer `{0}`")]
    UnknownMonomer(String),
    #[error("unknown configuration `{0}`")]
    UnknownConfiguration(String),
    #[error("not a partition of the TBN: {0}")]
    NotPartition(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("invalid path at step {step}: {reason}")]
    InvalidPath { step: usize, reason: String },
    #[error("precondition violated: {0}")]
    Domain(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("invalid construction parameters: {0}")]
    Spec(String),
    #[error("instance too large: {0}")]
    ScaleCap(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error("invalid JSON document: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, TbnError>;
