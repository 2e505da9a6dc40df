use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A syntax error in one of the text grammars, located by byte offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different algebra contexts")]
    ContextMismatch,
    #[error("invalid variable name {0:?}: expected an uppercase identifier")]
    InvalidVariableName(String),
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("no substitution given for variable {0}")]
    MissingAssignment(String),
    #[error("invalid variable order: {0}")]
    InvalidOrder(String),
    #[error("p must be prime (got {0})")]
    NotPrime(u64),
    #[error("p = 2 is refused: the Teichmüller identities used here require p != 2 (pass the p = 2 override to proceed)")]
    PrimeTwoRefused,
    #[error("level mismatch: expected {expected} coordinates, got {actual}")]
    LevelMismatch { expected: usize, actual: usize },
    #[error("prime mismatch: polynomials were generated for p = {expected}, context has p = {actual}")]
    PrimeMismatch { expected: u32, actual: u32 },
    #[error("invalid independence instance: {0}")]
    InvalidInstance(String),
    #[error("word limit exceeded: an intermediate polynomial reached {reached} words (limit {limit})")]
    WordLimit { reached: usize, limit: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("malformed document: {0}")]
    Document(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures caused by the configured resource guard rather than
    /// bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::WordLimit { .. })
    }
}
