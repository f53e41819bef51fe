use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{context}: line {line}: {reason}")]
    Format {
        context: String,
        line: usize,
        reason: String,
    },
    #[error("{context}: {source}")]
    Core {
        context: String,
        source: repmeasures_core::Error,
    },
    /// A bound that must hold for every text was broken.
    #[error("{name}: invariant violated: {what}")]
    Invariant { name: String, what: String },
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Error {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn core(context: impl Into<String>, source: repmeasures_core::Error) -> Error {
        Error::Core {
            context: context.into(),
            source,
        }
    }

    /// Process exit code: 2 for invariant violations, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
