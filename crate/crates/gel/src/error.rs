use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared across the library.
///
/// Precondition violations (`Domain`, `Coverage`, `Region`, …) are distinct
/// from I/O and dataset problems so the CLI can map them to exit code 2
/// versus 1.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An evaluation point exceeds the coverage of a built dataset.
    #[error("coverage error: x = {x} exceeds covered bound {x_max}")]
    Coverage { x: f64, x_max: f64 },

    /// A renormalizer tag was applied outside its admissible region.
    #[error("region mismatch: renormalizer `{tag}` does not admit s = {s}")]
    RegionMismatch { tag: &'static str, s: String },

    /// A build would exceed a configured resource cap.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// A dataset file failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A dataset or structure violated one of its invariants.
    #[error("validation error: {0}")]
    Validation(String),

    /// A trace has too few checkpoints for the requested tail statistics.
    #[error("insufficient checkpoints: have {have}, need {need}")]
    InsufficientCheckpoints { have: usize, need: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// True for errors caused by invalid inputs rather than by the
    /// environment; the CLI reports these with exit code 2.
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}
