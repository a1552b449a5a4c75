use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision mismatch: {left} vs {right}")]
    PrecisionMismatch { left: usize, right: usize },

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: usize, right: usize },

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("not exactly divisible by t^{0}")]
    Divisibility(usize),

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("exponent condition violated: {0}")]
    ExponentCondition(String),

    #[error("a_{index} is not a unit of A")]
    NonUnitCoefficient { index: usize },

    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("inconsistent endomorphism: {0}")]
    InconsistentBlackbox(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Parse errors are reported separately from domain errors by the CLI.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::InvalidField(_))
    }
}
