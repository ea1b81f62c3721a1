use thiserror::Error;

/// Errors produced by polytope construction, orientation generation and the
/// pivot engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A linear functional produced equal values on two adjacent vertices.
    /// The caller should draw a fresh functional.
    #[error("functional is not generic: vertices {0} and {1} tie")]
    Genericity(usize, usize),

    /// Two large faces force opposite directions on a shared edge.
    #[error("skeleton conflict on edge ({u},{v}): face {face_a} wants {dir_a:?}, face {face_b} wants {dir_b:?}")]
    SkeletonConflict {
        u: usize,
        v: usize,
        face_a: usize,
        face_b: usize,
        dir_a: (usize, usize),
        dir_b: (usize, usize),
    },

    #[error("orientation is not an AUSO: {0}")]
    NotAuso(String),

    #[error("operation requires a {0} polytope")]
    UnsupportedKind(&'static str),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
