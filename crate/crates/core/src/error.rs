use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("forms are not in weakly general position: {0}")]
    NotInPosition(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("pipeline failure at stage `{stage}`: {reason}")]
    PipelineFailure { stage: String, reason: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionViolated(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }

    /// Prefixes the message with the pipeline stage that produced it.
    pub fn at_stage(self, stage: &str) -> Self {
        match self {
            Error::PipelineFailure { .. } => self,
            Error::InvalidInput(m) => Error::InvalidInput(format!("[{stage}] {m}")),
            Error::PreconditionViolated(m) => {
                Error::PreconditionViolated(format!("[{stage}] {m}"))
            }
            Error::ResourceLimit(m) => Error::ResourceLimit(format!("[{stage}] {m}")),
            Error::NotInPosition(m) => Error::NotInPosition(format!("[{stage}] {m}")),
            Error::Inconclusive(m) => Error::Inconclusive(format!("[{stage}] {m}")),
            e @ Error::Parse { .. } => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
