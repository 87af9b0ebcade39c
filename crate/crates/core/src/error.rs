use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("pole hit: {0}")]
    PoleHit(String),
    #[error("not expandable as a power series in {0}")]
    NotExpandable(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("grading violation: {0}")]
    GradingViolation(String),
    #[error("matrix too small: need size >= {min}, got {got}")]
    SizeTooSmall { min: usize, got: usize },
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("invalid alternating sign matrix: {0}")]
    InvalidAsm(String),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("zero division in T-system at site (i={i}, j={j}, k={k})")]
    ZeroDivision { i: i64, j: i64, k: usize },
    #[error("degenerate spectral parameters: {0}")]
    DegenerateSpectralParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
