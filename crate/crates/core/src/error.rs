use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("term of degree {degree} exceeds the declared bound 2d = {bound}")]
    DegreeOverflow { degree: u32, bound: u32 },

    #[error("variable index {index} out of range 1..={nvars}")]
    VariableIndex { index: usize, nvars: usize },

    #[error("exponent has {found} entries, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("weight scheme has {found} weights, expected d = {expected}")]
    WeightLength { expected: usize, found: usize },

    #[error("invalid weight scheme: {0}")]
    InvalidWeights(String),

    #[error("band index k = {k} out of range 1..={d}")]
    BandOutOfRange { k: u32, d: u32 },

    #[error("the zero polynomial has no sign-variation sequence")]
    ZeroPolynomial,

    #[error("matrix is not symmetric (|a[{row}][{col}] - a[{col}][{row}]| = {gap:e})")]
    NotSymmetric { row: usize, col: usize, gap: f64 },

    #[error("Gram basis of size {size} exceeds the limit {limit}")]
    BasisTooLarge { size: usize, limit: usize },

    #[error("moment sequence is missing y_{0}")]
    MissingMoment(String),

    #[error("moment sequence is not normalized (y_0 = {0})")]
    NotNormalized(f64),

    #[error("invalid rational literal {0:?}")]
    Rational(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
