use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("generator a{index} is outside rank {rank}")]
    LetterOutOfRange { index: u32, rank: u32 },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("letter sequence is not cyclically reduced")]
    NotCyclicallyReduced,

    #[error("{0} is not primitive")]
    NotPrimitive(String),

    #[error("expected {expected} words, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid Whitehead move: {0}")]
    InvalidMove(String),

    #[error("search budget of {limit} states exhausted")]
    ResourceExhausted { limit: usize },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("invalid certificate: {0}")]
    Certificate(String),

    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
