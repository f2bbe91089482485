use thiserror::Error;

/// Errors produced by the tensor algebra and decomposition routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tensor dimensions must be positive, got {m}x{n}x{p}")]
    ZeroDimension { m: usize, n: usize, p: usize },

    #[error("expected {expected} entries for a {m}x{n}x{p} tensor, got {actual}")]
    LengthMismatch {
        m: usize,
        n: usize,
        p: usize,
        expected: usize,
        actual: usize,
    },

    #[error("non-finite entry {value} at (i={i}, j={j}, k={k})")]
    NonFinite { i: usize, j: usize, k: usize, value: f64 },

    /// Operand shapes disagree along the named axes.
    #[error("dimension mismatch: {axes} ({left} vs {right})")]
    DimensionMismatch {
        axes: &'static str,
        left: usize,
        right: usize,
    },

    #[error("tensor must be square in its first two modes, got {m}x{n}")]
    NotSquare { m: usize, n: usize },

    #[error("matrix with {rows} rows cannot be folded into tubes of length {p}")]
    FoldRows { rows: usize, p: usize },

    #[error("matrix is not block circulant: block ({row}, {col}) deviates by {deviation:e}")]
    NotCirculant { row: usize, col: usize, deviation: f64 },

    #[error("spectrum is not conjugate symmetric: imaginary residue {residue:e} exceeds {limit:e}")]
    ImaginaryResidue { residue: f64, limit: f64 },

    #[error("frontal slice {k} of the transform is singular (smallest singular value {sigma_min:e})")]
    SingularSlice { k: usize, sigma_min: f64 },

    #[error("matrix has non-finite entries")]
    NonFiniteMatrix,

    #[error("jacobi SVD did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("truncation rank {s} out of range 1..={max}")]
    RankOutOfRange { s: usize, max: usize },

    #[error("tensor file: {0}")]
    Format(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
