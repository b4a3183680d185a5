use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("non-finite matrix entry at index {index}")]
    NonFinite { index: usize },
    #[error("empty vector family")]
    EmptyFamily,
    #[error("unsupported dimension {0}")]
    BadDimension(usize),
    #[error("dimension {0} is odd; antisymmetric unitaries need even dimension")]
    OddDimension(usize),
    #[error("dimension {0} is too small for this construction")]
    DimensionTooSmall(usize),
    #[error("not an antisymmetric unitary (antisymmetry {antisymmetry:e}, unitarity {unitarity:e})")]
    NotAntisymmetricUnitary { antisymmetry: f64, unitarity: f64 },
    #[error("canonical decomposition failed (residual {residual:e})")]
    DecompositionFailed { residual: f64 },
    #[error("eigenvalues do not pair as (λ, −λ) (residual {residual:e})")]
    PairingFailed { residual: f64 },
    #[error("Φ(P_x) has eigenvalue {eigenvalue:e} below −tolerance")]
    NonpositiveState { eigenvalue: f64 },
    #[error("unknown vector family {0:?}")]
    UnknownFamily(String),
    #[error("inconsistent result: {0}")]
    InconsistentResult(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix file: {0}")]
    Format(String),
}
