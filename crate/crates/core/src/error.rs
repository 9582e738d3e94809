use thiserror::Error;

use crate::lattice::MultiIndex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} has no entry below in direction {direction}")]
    BelowLattice { index: MultiIndex, direction: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("ragged moment table: measure {measure} has {found} moments, expected {expected}")]
    RaggedTable {
        measure: usize,
        expected: usize,
        found: usize,
    },

    #[error("insufficient moment depth: need degree {required}, table has {available}")]
    InsufficientDepth { required: usize, available: usize },

    #[error("non-normal index {0}")]
    NonNormalIndex(MultiIndex),

    #[error("type I vector is undefined at the zero index")]
    EmptyIndex,

    #[error("operation requires r = 2, got r = {0}")]
    NotBivariate(usize),

    #[error("family '{0}' has no closed form")]
    UnsupportedFamily(String),

    #[error("evaluation point {0} is a pole")]
    EvaluationPole(String),

    #[error("inconsistent coefficient field at {index}: step directions {first} and {second} disagree")]
    InconsistentField {
        index: MultiIndex,
        first: usize,
        second: usize,
    },

    #[error("coefficient field has no entry for {0}")]
    MissingCoefficients(MultiIndex),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
