use thiserror::Error;

/// Errors raised by metric computation, input validation and file parsing.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("non-finite objective value {value} at position {position}")]
    NonFinite { position: usize, value: f64 },

    #[error("invalid weight vector: {0}")]
    InvalidWeight(String),

    #[error("chebycheff utility requires an ideal point")]
    MissingIdealPoint,

    #[error("reference targets {dominating} and {dominated} are not mutually non-dominated")]
    DominatedReference { dominating: usize, dominated: usize },

    #[error("duplicate solution id `{0}`")]
    DuplicateId(String),

    #[error("invalid value for `{field}`: {reason}")]
    InvalidConfig { field: &'static str, reason: String },

    #[error("parse error at row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("{0}")]
    Io(String),

    #[error("noise level {eta}, replication {replication}: {source}")]
    Replication {
        eta: f64,
        replication: usize,
        source: Box<MetricError>,
    },
}

impl MetricError {
    pub(crate) fn parse(row: usize, message: impl Into<String>) -> Self {
        MetricError::Parse {
            row,
            message: message.into(),
        }
    }

    pub(crate) fn config(field: &'static str, reason: impl Into<String>) -> Self {
        MetricError::InvalidConfig {
            field,
            reason: reason.into(),
        }
    }

    /// Coarse classification used by front ends to choose exit codes.
    pub fn kind(&self) -> ErrorKind {
        match self {
            MetricError::Parse { .. } | MetricError::Io(_) => ErrorKind::Input,
            MetricError::DimensionMismatch { .. }
            | MetricError::MissingIdealPoint
            | MetricError::InvalidConfig { .. } => ErrorKind::Usage,
            MetricError::Empty(_)
            | MetricError::NonFinite { .. }
            | MetricError::InvalidWeight(_)
            | MetricError::DominatedReference { .. }
            | MetricError::DuplicateId(_) => ErrorKind::Invariant,
            MetricError::Replication { source, .. } => source.kind(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Unreadable or malformed input.
    Input,
    /// Inputs that are well formed but do not fit together.
    Usage,
    /// Data that violates a domain invariant.
    Invariant,
}

impl From<std::io::Error> for MetricError {
    fn from(err: std::io::Error) -> Self {
        MetricError::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, MetricError>;
