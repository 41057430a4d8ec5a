use thiserror::Error;

/// A syntax error in series or rational text, with the byte offset where it
/// was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: expected {expected}")]
pub struct ParseError {
    pub position: usize,
    pub expected: &'static str,
}

impl ParseError {
    pub(crate) fn new(position: usize, expected: &'static str) -> Self {
        ParseError { position, expected }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("significance threshold must be positive, got {0}")]
    NonPositiveThreshold(String),

    #[error("certificate chain base {base} differs from lower bound {lower}")]
    CertificateBaseMismatch { base: String, lower: String },

    #[error("certificate is not accepted: violation at index {index} ({kind})")]
    CertificateRejected { index: u64, kind: &'static str },

    #[error("chain index computation exceeds u64 range")]
    IndexOverflow,

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("no measurement value for element `{0}`")]
    MissingValue(String),

    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(String),

    #[error("sequence decreases at index {0}")]
    DecreasingSequence(usize),

    #[error("invalid reward scheme `{0}`")]
    InvalidScheme(String),

    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
