use thiserror::Error;

use crate::pointgeom::PointClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid space specification{}: {message}", location_suffix(.location))]
    InvalidSpec {
        message: String,
        location: Option<String>,
    },

    #[error("dimension mismatch: space has dimension {expected}, vector has {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("direction vector is zero")]
    ZeroDirection,

    #[error("reference vector is zero; orthogonality relative to 0 is not defined")]
    ZeroLeft,

    #[error("set of {size} vectors exceeds the space dimension {dim}")]
    SetTooLarge { size: usize, dim: usize },

    #[error("index {index} out of range for a set of {len} vectors")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("point is not on the unit sphere (norm {norm})")]
    NotOnSphere { norm: f64 },

    #[error("point is not exposed: {}", .0.summary())]
    NotExposed(Box<PointClass>),

    #[error("constructed basis failed its strong-orthogonality certificate (margin {margin:e})")]
    CertificateFailed { margin: f64 },

    #[error("basis matrix is singular")]
    SingularBasis,

    #[error("operator norm is attained away from the antipodes of x0: {0}")]
    AttainmentNotUnique(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("inconsistent classification: {0}")]
    InconsistentClassification(String),

    #[error("exact backend is only available for polyhedral norms and lp with p in {{1, inf}}")]
    ExactUnavailable,

    #[error("exact backend requires rational coordinates")]
    NotRational,

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn location_suffix(location: &Option<String>) -> String {
    match location {
        Some(loc) => format!(" at {loc}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidSpec {
            message: message.into(),
            location: None,
        }
    }

    pub(crate) fn invalid_at(message: impl Into<String>, location: impl Into<String>) -> Self {
        Error::InvalidSpec {
            message: message.into(),
            location: Some(location.into()),
        }
    }
}
