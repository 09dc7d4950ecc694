use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("patch mismatch: dimension {left} vs {right}")]
    PatchMismatch { left: usize, right: usize },
    #[error("too many variables: {0} (at most 8 supported)")]
    TooManyVariables(usize),
    #[error("interior product of a degree-0 form")]
    DegreeZero,
    #[error("degree {degree} exceeds dimension {dim}")]
    DegreeTooLarge { degree: usize, dim: usize },
    #[error("could not parse {input:?}: {message}")]
    Parse { input: String, message: String },
    #[error("frame determinant is not a nonzero constant: {0}")]
    FrameNotUnimodular(String),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("twist form not closed: d(eta) = {0}")]
    TwistNotClosed(String),
    #[error("Jacobi identity fails on {witness}: jacobiator = {jacobiator}")]
    JacobiFailure { witness: String, jacobiator: String },
    #[error("dependent generators")]
    DependentGenerators,
    #[error("not traceless")]
    NotTraceless,
    #[error("invalid connection: {0}")]
    InvalidConnection(String),
    #[error("incompatible para-complex structure: {0}")]
    IncompatibleStructure(String),
    #[error("eigenbundles not transverse")]
    NonTransverse,
    #[error("operation requires {0}")]
    Unsupported(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid field {field}: {message}")]
    InvalidField { field: String, message: String },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
