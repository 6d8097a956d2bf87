use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed phase `{0}`")]
    Phase(String),
    #[error("malformed input: {0}")]
    Schema(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("invalid matched pair: {0}")]
    InvalidMatchedPair(String),
    #[error("groupoid is not connected: {0}")]
    NotConnected(String),
    #[error("not an exact factorization: {0}")]
    NotExact(String),
    #[error("groupoid has {found} arrows, above the enumeration bound {bound}")]
    BoundExceeded { found: usize, bound: usize },
    #[error("boxes are not composable: {0}")]
    NotComposable(String),
    #[error("not an Opext pair: {0}")]
    InvalidPair(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("incompatible data: {0}")]
    IncompatibleData(String),
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("category is not fusion: {0}")]
    NotFusion(String),
    #[error("modules live over different carriers")]
    MismatchedCarrier,
    #[error("3-cocycle is not trivial on the subgroupoid: {0}")]
    CocycleNotTrivialOnV(String),
    #[error("{0}")]
    Io(String),
    #[error("symbolic evaluation unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
