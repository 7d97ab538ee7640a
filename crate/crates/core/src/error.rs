use thiserror::Error;

/// Errors raised by the record engine and the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least {min}, got {found}")]
    InvalidDimension { found: usize, min: usize },

    #[error("coordinate {index} = {value} lies outside [0, 1)")]
    CoordinateOutOfRange { index: usize, value: f64 },

    #[error("point {0:?} is not in the record-setting region")]
    NotInRegion(Vec<f64>),

    #[error("coordinate tie in coordinate {coordinate}: value {value} appears twice")]
    CoordinateTie { coordinate: usize, value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("integer overflow computing {0}")]
    Overflow(&'static str),

    #[error("numerical failure in {routine}: {detail}")]
    Numeric { routine: &'static str, detail: String },

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// True for errors caused by bad caller input rather than a failed computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::InvalidDimension { .. }
                | Error::CoordinateOutOfRange { .. }
                | Error::NotInRegion(_)
                | Error::CoordinateTie { .. }
                | Error::InvalidArgument(_)
                | Error::ResourceLimit(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
