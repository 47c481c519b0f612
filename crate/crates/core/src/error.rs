use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A row in an input table could not be parsed.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    /// Input parsed but violates a corpus invariant (duplicate id, dangling edge, ...).
    #[error("validation error: {0}")]
    Validation(String),

    #[error("node index {index} out of range (node count {node_count})")]
    NodeIndex { index: u64, node_count: usize },

    #[error("unknown paper id `{0}`")]
    UnknownId(String),

    /// Caller passed arguments that the operation does not accept.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("snapshot error: {0}")]
    Snapshot(String),

    #[error("worker failed on focal `{focal}`: {message}")]
    Worker { focal: String, message: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: u64, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    /// Process exit code: 1 usage, 2 data/validation, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            Error::Io { .. }
            | Error::Parse { .. }
            | Error::Validation(_)
            | Error::NodeIndex { .. }
            | Error::UnknownId(_)
            | Error::Snapshot(_) => 2,
            Error::Worker { .. } | Error::Json(_) => 3,
        }
    }
}
