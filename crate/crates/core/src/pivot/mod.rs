//! Exact and simulated pivot-rule analysis on AUSOs.

mod monte_carlo;
mod random_edge;
mod random_facet;

pub use monte_carlo::{random_edge_monte_carlo, random_facet_monte_carlo, TrajectoryStats};
pub use random_edge::{
    directed_height, random_edge_all_starts, random_edge_expected, verify_flow, RandomPathFlow,
};
pub use random_facet::{random_facet_expected, random_facet_min_steps, FacetEngine};
