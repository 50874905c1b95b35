//! Error taxonomy shared by the whole crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the domain of a profile or grid.
    #[error("x = {x} outside domain ({lo}, {hi})")]
    Domain { x: f64, lo: f64, hi: f64 },

    /// A parameter violates a documented constraint.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A catalog entry cannot be hosted by the requested profile/window.
    #[error("admissibility: {0}")]
    Admissibility(String),

    /// A quadrature or iteration failed to reach its tolerance.
    #[error("numeric: {0}")]
    Numeric(String),

    /// A closed-form branch hit a pole inside the working range.
    #[error("singularity near mu = {location}: {context}")]
    Singularity { location: f64, context: String },

    /// The requested state is not square integrable on the grid.
    #[error("non-normalizable state: {0}")]
    Normalizability(String),

    /// Expression parsing failed; `position` is a byte offset in the input.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    pub fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub fn admissibility(msg: impl Into<String>) -> Self {
        Error::Admissibility(msg.into())
    }
}
