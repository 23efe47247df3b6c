use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation would exceed one of the configured limits.
    #[error("capacity exceeded: {what} needs {needed}, limit is {limit}")]
    Capacity {
        what: String,
        needed: u128,
        limit: u128,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("operation is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("ring axiom violated: {axiom} at {witness:?}")]
    AxiomViolation { axiom: String, witness: Vec<usize> },

    #[error("ring has no multiplicative identity")]
    NoIdentity,

    #[error("subset is not a two-sided ideal")]
    NotAnIdeal,

    #[error("subset is not a field subset of the ring")]
    NotAFieldSubset,

    #[error("malformed ledger record at line {line}: {msg}")]
    Ledger { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, needed: u128, limit: u128) -> Self {
        Error::Capacity {
            what: what.into(),
            needed,
            limit,
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
