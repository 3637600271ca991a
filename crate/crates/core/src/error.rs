use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KlrError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid rank: {0}")]
    InvalidRank(String),

    #[error("{0} is not a prime no larger than 2^31")]
    NotPrime(u64),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid support: {0}")]
    InvalidSupport(String),

    #[error("{0} is not a Garnir node of the shape")]
    NotGarnir(String),

    #[error("semisimplicity conditions fail for this multicharge and size ({0})")]
    CriterionViolated(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("representation fails {0} defining relation(s)")]
    Unverified(usize),

    #[error("subspace is not invariant under the generator action")]
    NonInvariant,

    #[error("least dominant standard tableau is not unique")]
    AmbiguousMinimum,

    #[error("vector enumeration exceeded the dimension bound {bound} (reached {reached})")]
    ClosureBoundExceeded { bound: usize, reached: usize },

    #[error("vector enumeration did not close within {0} generator applications")]
    NonTermination(usize),

    #[error("witness check failed: {0}")]
    WitnessFailed(String),

    #[error("irreducibility undecided: {0}")]
    Undecided(String),

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, KlrError>;

impl From<std::io::Error> for KlrError {
    fn from(e: std::io::Error) -> Self {
        KlrError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for KlrError {
    fn from(e: serde_json::Error) -> Self {
        KlrError::Parse(e.to_string())
    }
}
