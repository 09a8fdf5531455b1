use horikawa_polyalg::PolyError;
use thiserror::Error;

use crate::lattice::SurfaceModel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HorikawaError {
    #[error("divisor classes live on different surfaces: {0} and {1}")]
    SurfaceMismatch(SurfaceModel, SurfaceModel),
    #[error("{surface} needs {expected} coefficients, got {got}")]
    Rank {
        surface: SurfaceModel,
        expected: usize,
        got: usize,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("coefficient {value} exceeds the oracle bound |c| <= {limit}")]
    LimitExceeded { value: i64, limit: i64 },
    /// A relation that must hold by construction failed.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    /// The recipe lies outside the smooth and elliptic cases.
    #[error("case value {value} is neither 0 nor 4")]
    CaseValue { value: i64 },
    #[error("refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub type Result<T> = std::result::Result<T, HorikawaError>;
