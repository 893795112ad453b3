use thiserror::Error;

use crate::scalar::Backend;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("backend mismatch: {left} operand combined with {right} operand")]
    BackendMismatch { left: Backend, right: Backend },

    #[error("grade {0} is outside 0..=4")]
    GradeOutOfRange(usize),

    #[error("invalid generators: {}", .violations.join("; "))]
    InvalidGenerator { violations: Vec<String> },

    #[error("invalid spin element: {0}")]
    InvalidSpin(String),

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("syntax error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }

    pub(crate) fn generator(violation: impl Into<String>) -> Self {
        Error::InvalidGenerator {
            violations: vec![violation.into()],
        }
    }
}
