use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("result at level {level} lies outside the window 0..={max}")]
    OutOfWindow { level: i64, max: usize },
    #[error("space mismatch: expected {expected}, found {found}")]
    SpaceMismatch { expected: String, found: String },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("invalid Lie algebra data: {0}")]
    InvalidLie(String),
    #[error("critical level: k + h_dual = 0")]
    CriticalLevel,
    #[error("degenerate bilinear form: {0}")]
    DegenerateForm(String),
    #[error("tensor is not skewsymmetric at level {0}")]
    NotSkewSymmetric(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
