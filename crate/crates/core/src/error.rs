use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("matrix is not Hermitian (max |A_ij - conj(A_ji)| = {max_violation:e})")]
    NonHermitianInput { max_violation: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("vector is zero")]
    ZeroVector,

    #[error("energy denominator for basis index {index} vanishes with a non-negligible numerator; the level is degenerate")]
    DegenerateDenominator { index: usize },

    #[error("state is not normalized (norm = {norm:e})")]
    NotNormalized { norm: f64 },

    #[error("need at least 2 distinct positive strengths, got {points}")]
    InsufficientData { points: usize },

    #[error("level {level} out of range for dimension {dim}")]
    LevelOutOfRange { level: usize, dim: usize },

    #[error("line {line}: {reason}")]
    ParseError { line: usize, reason: String },
}

impl Error {
    /// Stable identifier for the error kind, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::EmptyDimension => "EmptyDimension",
            Error::NonFinite { .. } => "NonFinite",
            Error::NonHermitianInput { .. } => "NonHermitianInput",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::ZeroVector => "ZeroVector",
            Error::DegenerateDenominator { .. } => "DegenerateDenominator",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::InsufficientData { .. } => "InsufficientData",
            Error::LevelOutOfRange { .. } => "LevelOutOfRange",
            Error::ParseError { .. } => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
