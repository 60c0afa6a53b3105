use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A trigonometric function was asked for its value at a pole.
    #[error("pole: {0}")]
    Pole(String),

    /// An exact quantity failed a property it is supposed to have
    /// (e.g. `a_p + (-1)^((p+1)/4)` not being a perfect square).
    #[error("integrity failure: {0}")]
    Integrity(String),

    /// More than one algebraic candidate sits within tolerance of a value.
    #[error("ambiguous recognition: {0}")]
    Ambiguity(String),

    #[error("unknown identity `{id}`; valid ids: {valid}")]
    UnknownIdentity { id: String, valid: String },

    #[error("unknown conjecture `{id}`; valid ids: {valid}")]
    UnknownConjecture { id: String, valid: String },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
