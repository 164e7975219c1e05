use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Syntax(String),

    #[error("landmark count {count} ≠ 33 at frame {frame}")]
    LandmarkCount { frame: usize, count: usize },

    #[error("non-increasing timestamp at frame {frame}")]
    NonIncreasingTimestamp { frame: usize },

    #[error("non-finite value in {field} at frame {frame}")]
    NonFinite { frame: usize, field: &'static str },

    #[error("visibility {value} outside [0, 1] at frame {frame}, landmark {landmark}")]
    Visibility {
        frame: usize,
        landmark: usize,
        value: f64,
    },

    #[error("csv layout error at frame {frame}: {message}")]
    CsvLayout { frame: usize, message: String },

    #[error("sequence has no frames")]
    EmptySequence,

    #[error("fps must be positive and finite, got {0}")]
    InvalidFps(f64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("no feature is valid in both frames")]
    NoValidFeatures,

    #[error("feature vectors come from different registries ({left} vs {right} features)")]
    RegistryMismatch { left: usize, right: usize },

    #[error("empty {0}")]
    Empty(&'static str),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error("all {0} template alignments failed")]
    AllTemplatesFailed(usize),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Attach the offending file path to an error.
    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }
}
