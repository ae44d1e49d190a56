use thiserror::Error;

/// Domain errors shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("eigensheaf not divisible for character {0}")]
    NotDivisible(String),
    #[error("configuration is not slc: {0}")]
    NotSlc(String),
    #[error("no table row matches: {0}")]
    NoMatch(String),
    #[error("unknown case id {0}")]
    UnknownCase(String),
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("missing metadata: {0}")]
    MissingMetadata(String),
}

pub type Result<T> = std::result::Result<T, Error>;
