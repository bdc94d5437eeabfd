use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parameters disagree: {0}")]
    Mismatch(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("normalization failed: {0}")]
    NormalizationFailed(String),
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// The message without the kind prefix.
    pub fn message(&self) -> &str {
        match self {
            Error::InvalidParameter(m)
            | Error::Mismatch(m)
            | Error::NotAutomorphism(m)
            | Error::NormalizationFailed(m)
            | Error::BudgetExhausted(m)
            | Error::Parse(m) => m,
        }
    }
}
