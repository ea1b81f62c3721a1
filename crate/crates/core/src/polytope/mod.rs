//! Combinatorics of dual cyclic 4-polytopes and polygon products.

mod gale;
mod graph;
mod lattice;
mod realization;

pub use gale::{enumerate_gale_sets, gale_is_vertex};
pub use graph::{
    build_dual_cyclic, build_polygon_product, parse_polytope_spec, LargeTwoFace, PolytopeGraph,
    PolytopeKind, Vertex,
};
pub use lattice::{face_lattice, FaceHandle, FaceLattice};
pub use realization::{rat, realize_dual_cyclic, realize_polygon_product, solve4, Rat, Realization};
