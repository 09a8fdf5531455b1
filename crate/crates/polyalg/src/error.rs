use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("polynomials over different fields or variables")]
    Mismatch,
    #[error("the point is not a common zero of the system")]
    NotACommonZero,
    #[error("common zero locus is positive-dimensional (common factor {0})")]
    PositiveDimensional(String),
    #[error("local algebra did not stabilise below truncation order {bound}")]
    TruncationExceeded { bound: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("internal error: {0}")]
    Internal(String),
}
