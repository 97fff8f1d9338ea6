use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is singular over Q(v)")]
    SingularMatrix,
    #[error("power series expansion not possible: {0}")]
    NotExpandable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid datum: {0}")]
    DatumInvalid(String),
    #[error("algorithm broke down at {step}: {context}")]
    AlgorithmBroken { step: String, context: String },
    #[error("enumeration exceeds the configured limit: {0}")]
    TooLarge(String),
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn broken(step: &str, context: impl Into<String>) -> Error {
    Error::AlgorithmBroken {
        step: step.to_string(),
        context: context.into(),
    }
}
