use crate::diag::{Code, Diagnostic};
use crate::path::Path;
use crate::repr::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("path {0} does not address a subterm")]
    UndefinedPath(Path),

    #[error("not a term representation: {}", format_violations(.0))]
    InvalidRepr(Vec<Violation>),

    #[error("deletion sequence is not compatible with the congruence (witness {0} / {1})")]
    Incompatible(Path, Path),

    #[error("deletion result is not a term: {0}")]
    InvalidResult(String),

    #[error("path {0} lies outside the congruence universe")]
    OutOfUniverse(Path),

    #[error("search exceeded the state cap of {limit}")]
    ResourceExhausted { limit: usize },

    #[error("global congruence violated: {0}")]
    MonitorViolation(String),

    #[error("{}", format_diagnostics(.0))]
    Diagnostics(Vec<Diagnostic>),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

fn format_diagnostics(v: &[Diagnostic]) -> String {
    v.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

impl Error {
    pub fn code(&self) -> Code {
        match self {
            Error::UndefinedPath(_) => Code::UndefinedPath,
            Error::InvalidRepr(_) => Code::InvalidRepr,
            Error::Incompatible(..) => Code::Incompatible,
            Error::InvalidResult(_) => Code::InvalidResult,
            Error::OutOfUniverse(_) => Code::OutOfUniverse,
            Error::ResourceExhausted { .. } => Code::ResourceExhausted,
            Error::MonitorViolation(_) => Code::MonitorViolation,
            Error::Diagnostics(_) => Code::Syntax,
        }
    }

    /// One diagnostic per failure.
    pub fn into_diagnostics(self) -> Vec<Diagnostic> {
        match self {
            Error::Diagnostics(d) => d,
            other => vec![Diagnostic::error(other.code(), other.to_string())],
        }
    }

    pub fn is_exhausted(&self) -> bool {
        match self {
            Error::ResourceExhausted { .. } => true,
            Error::Diagnostics(d) => d.iter().any(|d| d.code == Code::ResourceExhausted),
            _ => false,
        }
    }
}
