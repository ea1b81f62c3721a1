//! Structural certificates for AUSOs on dual cyclic 4-polytopes: large-face
//! profiles, the twelve-part partition with effectively decreasing
//! functions, fence embeddings, and the random-facet lower-bound family.

pub mod certificate;
pub mod checks;
pub mod error;
pub mod fence;
pub mod lowerbound;
pub mod partition;
pub mod profile;
pub mod reach;
pub mod sign;

pub use certificate::{assemble_certificate, assemble_certificate_with_anchors, PartitionCertificate};
pub use checks::{Assertion, Checks};
pub use error::{AnalysisError, Result};
