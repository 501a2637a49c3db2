use crate::decomposition::ValidityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors produced anywhere in the crate.
///
/// The variants are grouped so that front ends can map them onto a small set
/// of exit statuses: see [`Error::kind`].
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    InvalidVertex { vertex: usize, vertex_count: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("structural error: {0}")]
    Structural(String),

    #[error("decomposition is not valid ({} property failure(s))", .0.property_failures.len())]
    InvalidDecomposition(Box<ValidityReport>),

    #[error("not a {class}: {reason}")]
    ClassValidation { class: &'static str, reason: String },

    #[error("a triangle has no decomposition; use the triangle extension of the estimator")]
    UseTriangleExtension,

    #[error("component containing vertex {component_root} matches no supported class")]
    UnsupportedClass { component_root: usize },

    #[error("unsupported template shape: {0}")]
    UnsupportedShape(String),

    #[error("{class} decomposition has width {width}, above its bound {bound}")]
    BoundExceeded { class: &'static str, width: usize, bound: usize },

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("theorem violated: {0}")]
    TheoremViolation(String),

    #[error("all {trials} pilot trials returned zero; rerun with more trials")]
    PilotFailure { trials: u64 },

    #[error("critical ratio undefined for a zero mean")]
    UndefinedRatio,

    #[error("arithmetic overflow while counting stage embeddings")]
    Overflow,

    #[error("internal logic error: {0}")]
    Logic(String),
}

/// Coarse classification of an [`Error`], used for process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Inconclusive,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::BudgetExhausted { .. } => ErrorKind::Inconclusive,
            Error::TheoremViolation(_) | Error::Logic(_) | Error::Overflow => ErrorKind::Internal,
            _ => ErrorKind::Validation,
        }
    }

    pub(crate) fn class(class: &'static str, reason: impl Into<String>) -> Self {
        Error::ClassValidation { class, reason: reason.into() }
    }
}
