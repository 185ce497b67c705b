use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty series")]
    EmptySeries,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("mismatched inputs: {0}")]
    Mismatch(String),
    #[error("unstable model: {0}")]
    UnstableModel(String),
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("duplicate point {0}")]
    DuplicatePoint(u32),
    #[error("unknown group \"{0}\"")]
    UnknownGroup(String),
    #[error("no accepted hits")]
    NoAcceptedHits,
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }
}
