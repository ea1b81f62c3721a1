use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Core(#[from] dcp_core::Error),

    /// A structural statement failed on this instance; this is a
    /// falsification witness, never repaired silently.
    #[error("assertion {name} failed: {witness}")]
    Assertion { name: String, witness: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, AnalysisError>;
