use thiserror::Error;

use crate::anyon::Charge;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("integer overflow evaluating {0}")]
    Overflow(String),

    #[error("negative eigenvalue {value:e} in sector {sector}")]
    NegativeEigenvalue { sector: Charge, value: f64 },

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("operator is not unitary (residual {0:e})")]
    NotUnitary(f64),

    #[error("gram condition violated: {0}")]
    GramViolation(String),

    #[error("message set invalid: {0}")]
    InvalidMessageSet(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("serialization error: {0}")]
    Serialization(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by user input rather than internal failure.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Serialization(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
