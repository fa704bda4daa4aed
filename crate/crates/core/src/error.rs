use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// The variants map onto the command-line exit codes: [`Error::Usage`] is a
/// caller mistake (exit 1), everything else is a data or domain failure
/// (exit 2).
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error in {file} at row {row}: {msg}")]
    Parse { file: String, row: usize, msg: String },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io { path: path.as_ref().display().to_string(), source }
    }

    /// True for errors caused by the caller's arguments rather than the data.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Usage(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
