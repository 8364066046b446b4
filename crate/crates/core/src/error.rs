use thiserror::Error;

/// Errors raised by the numerical routines and state constructors.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index ({a}, {b}, {c}) out of range for dims ({m}, {n}, {p})")]
    IndexOutOfRange {
        a: usize,
        b: usize,
        c: usize,
        m: usize,
        n: usize,
        p: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("unknown operation `{0}`")]
    UnknownOperation(String),

    #[error("{theorem} requires dims {required}, got ({m}, {n}, {p}){hint}")]
    UnsupportedDims {
        theorem: &'static str,
        required: &'static str,
        m: usize,
        n: usize,
        p: usize,
        hint: String,
    },

    #[error("state file: {0}")]
    StateFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
