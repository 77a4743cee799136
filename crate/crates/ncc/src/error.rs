use std::io;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Semantic(String),

    #[error(transparent)]
    Core(#[from] ncc_core::Error),

    /// A computed value failed its own consistency check.
    #[error("invariant check failed: {0}")]
    Assertion(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<String>, source: io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 2 for failed checks, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Assertion(_) => 2,
            _ => 1,
        }
    }
}
