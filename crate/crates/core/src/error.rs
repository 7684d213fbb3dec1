use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("left/right side mismatch")]
    SideMismatch,
    #[error("arity mismatch: {0} vs {1} free variables")]
    ArityMismatch(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("quotient is infinite-dimensional at path length cap {0}")]
    InfiniteDimensional(usize),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("structure check failed: {0}")]
    StructureViolation(String),
    #[error("path is not composable: {0}")]
    NotComposable(String),
    #[error("HORIZON_EXCEEDED: needs Loewy length {needed}, horizon is {horizon}")]
    HorizonExceeded { needed: usize, horizon: usize },
    #[error("SQUARE_FAILED({0})")]
    SquareFailed(String),
    #[error("square does not commute: {0}")]
    NonCommuting(String),
    #[error("UNCLASSIFIED({0})")]
    Unclassified(String),
    #[error("tuple is not expressible over the generators")]
    NotExpressible,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("level {level} out of range 0..={max}")]
    LevelOutOfRange { level: usize, max: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
