use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("min spacing {min_spacing} cannot fit two points in a disc of radius {radius}")]
    SpacingTooLarge { radius: f64, min_spacing: f64 },

    #[error("point set is empty")]
    EmptySet,

    #[error("duplicate points at indices {0} and {1}")]
    DuplicatePoint(usize, usize),

    #[error("point {index} ({x}, {y}) lies outside the bounding disc")]
    OutsideDomain { index: usize, x: f64, y: f64 },

    #[error("points {0} and {1} are closer than the recorded min spacing")]
    SpacingViolated(usize, usize),

    #[error("inconsistent tessellation: {0}")]
    InconsistentTessellation(String),

    #[error("state has {actual} cells, tessellation has {expected}")]
    StateLength { expected: usize, actual: usize },

    #[error("malformed {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Parse {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
