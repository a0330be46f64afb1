use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("repeated leg index {0}")]
    RepeatedLeg(usize),
    #[error("leg {leg} out of range for a shape with {legs} legs")]
    LegOutOfRange { leg: usize, legs: usize },
    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),
    #[error("empty generator list with no ambient dimension")]
    EmptySpan,
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("{what} failed: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    Check {
        what: String,
        residual: f64,
        tolerance: f64,
    },
    #[error("not an algebra: {0}")]
    NotAnAlgebra(String),
    #[error("linear algebra backend error: {0}")]
    Backend(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn check(what: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Error::Check {
            what: what.into(),
            residual,
            tolerance,
        }
    }
}

/// Fails with [`Error::Check`] unless `residual <= tolerance`.
pub fn ensure(what: &str, residual: f64, tolerance: f64) -> Result<()> {
    if residual.is_finite() && residual <= tolerance {
        Ok(())
    } else {
        Err(Error::check(what, residual, tolerance))
    }
}
