//! Error type shared by the exact and numeric layers.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CheckError {
    /// Input outside a function's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameters violate a contract precondition (uniqueness condition,
    /// convergence window, integer-exponent requirement, ...).
    #[error("contract error: {0}")]
    Contract(String),

    /// A recurrence denominator vanished.
    #[error("pole at k={k}: {detail}")]
    Pole { k: usize, detail: String },

    /// Matrix shape or ring mismatch.
    #[error("shape error: {0}")]
    Shape(String),

    /// Weyl elements from different variable spaces were combined.
    #[error("variable-space mismatch: {0}")]
    SpaceMismatch(String),

    /// A structural expectation failed (singular system, wrong nullspace
    /// dimension, no convention satisfying a defining relation).
    #[error("structural error: {0}")]
    Structural(String),

    /// Operation not supported in the exact layer.
    #[error("unsupported: {0}")]
    Unsupported(String),
}
