use thiserror::Error;

/// Errors raised by chain, chamber and moduli computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("index {index} out of range 0..={max}")]
    Index { index: usize, max: usize },

    #[error("invalid chain type: {0}")]
    InvalidType(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("slope of the zero chain is undefined")]
    ZeroChain,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported type: {0}")]
    UnsupportedType(String),

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
