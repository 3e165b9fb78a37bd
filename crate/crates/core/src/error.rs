use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {dim}")]
    NonSquare { row: usize, len: usize, dim: usize },

    #[error("matrix is empty")]
    Empty,

    #[error("matrix is not Hermitian: max |M - M^H| = {deviation:e} exceeds {threshold:e}")]
    NotHermitian { deviation: f64, threshold: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("zero matrix has no spectral scale; it is positive semi-definite")]
    ZeroMatrix,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error(
        "fixed initialization triple requires an unpadded power-of-two matrix (dim {dim}, original {original_dim})"
    )]
    PaddedUnsupported { dim: usize, original_dim: usize },

    #[error("refinement of -M returned positive semi-definite; the quantum estimate is inconsistent")]
    InconsistentRefinement,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
