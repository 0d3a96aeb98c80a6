use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by constructors, channel evolution and the separability tests.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("{name} must be nonnegative, got {value}")]
    Negative { name: &'static str, value: f64 },

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} = {value} lies outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("variance matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },

    #[error("variance matrix is unphysical (smallest symplectic eigenvalue {min_nu})")]
    Unphysical { min_nu: f64 },

    #[error("correlation magnitudes differ: |c1| = {c1}, |c2| = {c2}")]
    UnequalCorrelations { c1: f64, c2: f64 },

    #[error("scenario outside the supported restriction: {0}")]
    Restriction(&'static str),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for errors caused by a caller-supplied value failing validation.
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            Error::NonFinite { .. }
                | Error::Negative { .. }
                | Error::NonPositive { .. }
                | Error::OutOfRange { .. }
                | Error::InvalidGrid(_)
        )
    }
}

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}

pub(crate) fn nonnegative(name: &'static str, value: f64) -> Result<f64> {
    finite(name, value)?;
    if value < 0.0 {
        Err(Error::Negative { name, value })
    } else {
        Ok(value)
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    finite(name, value)?;
    if value <= 0.0 {
        Err(Error::NonPositive { name, value })
    } else {
        Ok(value)
    }
}
