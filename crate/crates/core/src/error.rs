use thiserror::Error;

/// Errors produced by construction and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix shape {rows}x{cols} does not hold {len} entries")]
    BadShape { rows: usize, cols: usize, len: usize },

    #[error("non-finite entry encountered")]
    NonFinite,

    #[error("dimension {dim} exceeds the configured maximum {max}")]
    TooLarge { dim: usize, max: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("columns are not orthonormal (residual {residual:.3e})")]
    NotIsometry { residual: f64 },

    #[error("operator space is not an algebra: {0}")]
    NotAnAlgebra(&'static str),

    #[error("decomposition failed after {attempts} seeds: {reason}")]
    DecompositionFailed { attempts: usize, reason: String },

    #[error("Kraus completeness violated (residual {residual:.3e})")]
    IncompleteKraus { residual: f64 },

    #[error("density matrix invariant violated: {0}")]
    BadDensityMatrix(String),

    #[error("decoded reference state does not factor: {0}")]
    ReferenceFactorization(String),

    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
