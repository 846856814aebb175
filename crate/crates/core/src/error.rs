use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation on the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("algebra is not a full matrix algebra")]
    NotMatrixAlgebra,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("associativity fails at basis triple ({0}, {1}, {2})")]
    AssociativityViolation(usize, usize, usize),

    #[error("declared unity does not act as identity on basis element {0}")]
    UnityViolation(usize),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("symbolic determinant of size {size} exceeds the envelope of {limit}")]
    EnvelopeExceeded { size: usize, limit: usize },

    #[error("characteristic polynomial vanishes identically")]
    DegenerateCharPoly,

    #[error("pencil determinant vanishes identically")]
    DegeneratePencil,

    #[error("no regular alpha0 found: the pencil is singular at this functional")]
    NoRegularAlpha0,

    #[error("algebra is not of type 1: {0}")]
    NotType1(String),

    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
