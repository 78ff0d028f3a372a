use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the exact and numeric operations of this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: left operand lives in C^{left}, right operand in C^{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("polynomial is not bihomogeneous; bidegrees present: {present:?}")]
    NotBihomogeneous { present: Vec<(u32, u32)> },

    #[error("bidegree mismatch: {left:?} vs {right:?}")]
    BidegreeMismatch { left: (u32, u32), right: (u32, u32) },

    #[error("polynomial is not harmonic (its Laplacian is nonzero)")]
    NotHarmonic,

    #[error("operation needs n >= {required}, got n = {n}")]
    AmbientTooSmall { n: usize, required: usize },

    #[error("unsupported dimension n = {n} for {what}")]
    UnsupportedDimension { n: usize, what: &'static str },

    #[error("a = 0 degenerates H to |z|^2 whose zero set is {{0}}")]
    DegenerateCone,

    #[error("phase grid of size {grid} aliases frequencies of total degree {degree}")]
    Aliasing { grid: usize, degree: u32 },

    #[error("non-finite integrand value at quadrature node {node}")]
    NonFinite { node: usize },

    #[error("sample {index} lies on a zero of the reference product (|value| = {magnitude:e})")]
    ZeroReference { index: usize, magnitude: f64 },

    #[error("empty cone sample: {0}")]
    EmptyConeSample(String),

    #[error("radial expansion tail did not converge: estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    TailNotConverged { estimate: f64, tolerance: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
