use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime {0} is outside the supported range (p < 65536)")]
    PrimeTooLarge(u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("invalid cup-product tensor: {0}")]
    InvalidTensor(String),

    #[error("operation requires a {expected} algebra")]
    WrongFlavor { expected: &'static str },

    #[error("squaring subspace has dimension {found}, expected {expected}; not the algebra of a right-angled Coxeter group")]
    SigmaDimension { expected: usize, found: usize },

    #[error("projective enumeration needs {required} classes, cap is {cap}")]
    CapExceeded { required: u128, cap: u64 },

    #[error("no vertex basis exists; not the algebra of a right-angled Artin group")]
    NotARaagAlgebra,

    #[error("internal error: reconstruction witness failed verification")]
    VerificationFailed,

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
