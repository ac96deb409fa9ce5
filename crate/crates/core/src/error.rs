use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{context} line {line}: {message}")]
    Parse {
        context: String,
        line: usize,
        message: String,
    },

    #[error("record {id}: {message}")]
    Record { id: String, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0}")]
    Degenerate(String),

    #[error("design matrix is rank deficient: column {column} ({name}) is linearly dependent on earlier columns")]
    RankDeficient { column: usize, name: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("lexicon has no category named `{0}`")]
    MissingCategory(String),

    #[error("model file version mismatch: expected {expected}, found {found}")]
    VersionMismatch { expected: String, found: String },

    #[error("optimisation diverged: {0}")]
    Diverged(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures caused by the caller's data or arguments, as opposed
    /// to numerical breakdown inside the library.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Diverged(_) | Error::Internal(_))
    }
}
