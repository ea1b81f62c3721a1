//! Inversion and dihedral relabeling of orientations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::orientation::Orientation;
use crate::polytope::PolytopeKind;

/// Reverse every arc. The reverse of an AUSO is again an AUSO.
pub fn invert(o: &Orientation) -> Orientation {
    let forward: Vec<bool> = o.forward_bits().iter().map(|&b| !b).collect();
    Orientation::new(Arc::clone(&o.graph), forward).expect("same edge count")
}

/// Apply the dihedral facet relabeling f_i -> f_{i+rotation mod n} (or
/// f_{rotation - i mod n} when `reverse`) to a dual cyclic orientation.
/// The result is the same abstract digraph with vertices renamed by the
/// induced combinatorial automorphism.
pub fn relabel(o: &Orientation, rotation: u16, reverse: bool) -> Result<Orientation> {
    relabel_with_map(o, rotation, reverse).map(|(o, _)| o)
}

/// Like `relabel`, also returning the vertex map: map[v] is the image of v.
pub fn relabel_with_map(
    o: &Orientation,
    rotation: u16,
    reverse: bool,
) -> Result<(Orientation, Vec<usize>)> {
    let n = match o.graph.kind {
        PolytopeKind::DualCyclic { n } => n,
        _ => return Err(Error::UnsupportedKind("dual-cyclic")),
    };
    if rotation >= n {
        return Err(Error::InvalidInput(format!(
            "rotation {rotation} out of range [0,{n})"
        )));
    }
    let t = |i: u16| -> u16 {
        if reverse {
            (rotation + n - i % n) % n
        } else {
            (i + rotation) % n
        }
    };
    let graph = &o.graph;
    let mut vertex_map = vec![usize::MAX; graph.vertex_count()];
    for v in &graph.vertices {
        let mut fs = v.facet_set.map(t);
        fs.sort_unstable();
        let image = graph.vertex_by_facets(&fs).ok_or_else(|| {
            Error::Internal(format!(
                "facet relabeling does not preserve Gale validity on {:?}",
                v.facet_set
            ))
        })?;
        vertex_map[v.id] = image;
    }
    let mut forward = vec![false; graph.edge_count()];
    for (u, v) in o.arcs() {
        let (iu, iv) = (vertex_map[u], vertex_map[v]);
        let e = graph
            .edge_id(iu, iv)
            .ok_or_else(|| Error::Internal("automorphism does not preserve edges".into()))?;
        forward[e] = graph.edges[e].0 == iu;
    }
    Ok((Orientation::new(Arc::clone(graph), forward)?, vertex_map))
}

/// Rotation parameter that carries large face `face` to label 0 under
/// `relabel(o, rotation, reverse)`.
///
/// F_a is incident to facets {a, a+1}; with `reverse` the pair maps to
/// {r-a, r-a-1}, i.e. to face r-a-1, so r = a+1 anchors it at 0.
pub fn relabel_rotation_for_anchor(face: u16, reverse: bool, n: u16) -> u16 {
    if reverse {
        (face + 1) % n
    } else {
        (n - face % n) % n
    }
}
