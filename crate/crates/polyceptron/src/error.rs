//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong at module boundaries.
///
/// Dimension checks inside hot numeric kernels are debug assertions or
/// documented panics instead; `Error` is reserved for conditions a caller
/// can reasonably hit with untrusted input (files, configs, degenerate
/// datasets).
#[derive(Debug, Error)]
pub enum Error {
    #[error("dataset is empty")]
    EmptyDataset,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("stratification failed: {0}")]
    Stratification(String),

    #[error(
        "enumeration budget exceeded: {k}^{negatives} assignments is more than 10^7; \
         this instance is too large for the exhaustive oracle"
    )]
    EnumerationBudget { k: usize, negatives: usize },

    #[error("failed to generate a margin-respecting sample after {attempts} attempts")]
    Generation { attempts: usize },
}
