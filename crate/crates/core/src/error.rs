use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("invalid field parameters: {0}")]
    InvalidParams(String),

    #[error("field of order {order} exceeds the table limit {limit}")]
    SizeExceeded { order: u128, limit: u64 },

    #[error("elements belong to fields of order {left} and {right}")]
    FieldMismatch { left: u32, right: u32 },

    #[error("zero raised to a non-positive power")]
    ZeroToNonpositive,

    #[error("coefficient a must be nonzero")]
    ZeroCoefficient,

    #[error("invalid field element: {0}")]
    InvalidElement(String),

    #[error("precondition violated: {0}")]
    PrecondViolated(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("checkpoint {path} is inconsistent: {reason}")]
    Checkpoint { path: PathBuf, reason: String },

    #[error("no field tasks with order <= {0}")]
    NoTasks(u64),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
