use thiserror::Error;

/// Errors raised by the toric residue toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("not full-dimensional: {0}")]
    NotFullDimensional(String),

    #[error("cone is not pointed")]
    NotPointed,

    /// A named structural check on the input failed.
    #[error("{check}: {detail}")]
    Validation { check: &'static str, detail: String },

    /// A precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A runtime self-check that should hold by construction failed.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("work limit exceeded: {0}")]
    Limit(String),
}

impl Error {
    pub(crate) fn validation(check: &'static str, detail: impl Into<String>) -> Self {
        Error::Validation {
            check,
            detail: detail.into(),
        }
    }

    /// Name of the failing check, if this is a validation error.
    pub fn check_name(&self) -> Option<&'static str> {
        match self {
            Error::Validation { check, .. } => Some(check),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
