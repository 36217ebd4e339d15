use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("non-composable path: `{0}` does not start where the previous arrow ends")]
    NonComposable(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("not certified finite-dimensional within max_len {0}")]
    NotCertified(usize),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("not schurian")]
    NotSchurian,
    #[error("not connected")]
    NotConnected,
    #[error("not monomial")]
    NotMonomial,
    #[error("not gentle tilted of type A or Ã")]
    NotGentleTilted,
    #[error("invalid system of relations: {0}")]
    InvalidSystem(String),
    #[error("invalid extension pair: {0}")]
    InvalidPair(String),
    #[error("ambiguous defining sum for new arrow `{0}`")]
    AmbiguousDefiningSum(String),
    #[error("`{0}` is not a new arrow")]
    NotNewArrow(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("binomial relation {index} has an unexpected new-arrow pattern: {reason}")]
    BinomialShape { index: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
