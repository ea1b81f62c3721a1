//! Combinatorics of dual cyclic 4-polytopes and polygon products, acyclic
//! unique sink orientations, and exact pivot-rule analysis for the random
//! edge and random facet rules.

pub mod error;
pub mod oracles;
pub mod orientation;
pub mod pivot;
pub mod polytope;

pub use error::{Error, Result};
