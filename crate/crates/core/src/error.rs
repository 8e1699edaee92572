use thiserror::Error;

/// Failure categories shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular point: {0}")]
    SingularPoint(String),

    #[error("invalid multi-index: {0}")]
    InvalidMultiIndex(String),

    #[error("axis {axis} out of range for {nvars} variables")]
    AxisOutOfRange { axis: usize, nvars: usize },

    #[error("series diverges: {0}")]
    Divergence(String),

    #[error("degenerate lattice: {0}")]
    DegenerateLattice(String),

    #[error("point is not strictly inside the ball: {0}")]
    NotInterior(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The exact linear system has no solution: the target is not in the span
    /// of the dictionary.
    #[error("completeness violation: {0}")]
    CompletenessViolation(String),

    #[error("resource guard: {0}")]
    ResourceLimit(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
