use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("missing required config fields: {}", .0.join(", "))]
    MissingFields(Vec<String>),

    #[error("polynomial degree {0} is not supported (expected 0, 1 or 2)")]
    UnsupportedDegree(usize),

    #[error("basis mode {mode} out of range for degree {degree}")]
    ModeOutOfRange { mode: usize, degree: usize },

    #[error("CFL number {cfl:.4} exceeds limit {limit:.4} at t = {t}")]
    CflViolation { cfl: f64, limit: f64, t: f64 },

    #[error("failed to parse config {path}: {message}")]
    ConfigParse { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
