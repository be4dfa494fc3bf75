use thiserror::Error;

/// Failure modes shared by the kernel and the layers built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("product truncation needs more than {n_max} factors")]
    CapExceeded { n_max: usize },
    #[error("pole: {0}")]
    PoleAt(String),
    #[error("bad index: k = {k} exceeds n = {n}")]
    BadIndex { n: usize, k: usize },
    #[error("outside domain: {0}")]
    DomainError(String),
    #[error("divergent series: {0}")]
    DivergentSeries(String),
    #[error("series did not converge within {n_max} terms")]
    NoConvergence { n_max: usize },
    #[error("denominator parameter {index} is at or near q^-{k}")]
    PoleInDenominator { index: usize, k: usize },
    #[error("quadrature did not converge at {nodes} nodes")]
    QuadNoConvergence { nodes: usize },
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
}

impl QError {
    /// Short stable name used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            QError::CapExceeded { .. } => "CapExceeded",
            QError::PoleAt(_) => "PoleAt",
            QError::BadIndex { .. } => "BadIndex",
            QError::DomainError(_) => "DomainError",
            QError::DivergentSeries(_) => "DivergentSeries",
            QError::NoConvergence { .. } => "NoConvergence",
            QError::PoleInDenominator { .. } => "PoleInDenominator",
            QError::QuadNoConvergence { .. } => "QuadNoConvergence",
            QError::ConstraintViolation(_) => "ConstraintViolation",
        }
    }
}

pub type QResult<T> = Result<T, QError>;
