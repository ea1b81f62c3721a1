//! Orientations determined by per-large-face source/sink designations.
//!
//! Every edge lies on at least one large face, so designating the source and
//! sink of each large face fixes the direction of every edge; edges on two
//! large faces must receive consistent directions.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orientation::Orientation;
use crate::polytope::PolytopeGraph;

/// Designated (source, sink) per large face, by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationSkeleton {
    pub per_face: Vec<(usize, usize)>,
}

impl OrientationSkeleton {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "per_face": self.per_face })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidInput(format!("bad skeleton JSON: {e}")))
    }
}

/// Orient every large face's boundary as the two source-to-sink arcs.
/// Returns a `SkeletonConflict` if two faces disagree on a shared edge.
pub fn orient_from_skeleton(
    graph: &Arc<PolytopeGraph>,
    skeleton: &OrientationSkeleton,
) -> Result<Orientation> {
    if skeleton.per_face.len() != graph.large_face_count() {
        return Err(Error::InvalidInput(format!(
            "skeleton covers {} faces, graph has {}",
            skeleton.per_face.len(),
            graph.large_face_count()
        )));
    }
    // assignment[e] = (arc tail, arc head, face that forced it)
    let mut assignment: Vec<Option<(usize, usize, usize)>> = vec![None; graph.edge_count()];
    for (fi, &(src, snk)) in skeleton.per_face.iter().enumerate() {
        let face = &graph.large_faces[fi];
        let m = face.cycle.len();
        let ps = graph.cycle_position(fi as u16, src).ok_or_else(|| {
            Error::InvalidInput(format!("skeleton source {src} not on face {fi}"))
        })?;
        let pk = graph.cycle_position(fi as u16, snk).ok_or_else(|| {
            Error::InvalidInput(format!("skeleton sink {snk} not on face {fi}"))
        })?;
        if src == snk {
            return Err(Error::InvalidInput(format!(
                "face {fi} has source == sink == {src}"
            )));
        }
        let fwd_len = (pk + m - ps) % m;
        for p in 0..m {
            let u = face.cycle[p];
            let v = face.cycle[(p + 1) % m];
            // Edge from walk position p to p+1 lies on the forward arc iff
            // starting from the source we pass it before reaching the sink.
            let off = (p + m - ps) % m;
            let (tail, head) = if off < fwd_len { (u, v) } else { (v, u) };
            let e = graph.edge_id(u, v).expect("face edge");
            match assignment[e] {
                None => assignment[e] = Some((tail, head, fi)),
                Some((t0, h0, f0)) => {
                    if (t0, h0) != (tail, head) {
                        return Err(Error::SkeletonConflict {
                            u,
                            v,
                            face_a: f0,
                            face_b: fi,
                            dir_a: (t0, h0),
                            dir_b: (tail, head),
                        });
                    }
                }
            }
        }
    }
    let mut forward = Vec::with_capacity(graph.edge_count());
    for (e, a) in assignment.iter().enumerate() {
        let (tail, _head, _) = a.ok_or_else(|| {
            Error::Internal(format!(
                "edge {:?} not covered by any large face",
                graph.edges[e]
            ))
        })?;
        forward.push(graph.edges[e].0 == tail);
    }
    Orientation::new(Arc::clone(graph), forward)
}

/// Read the per-large-face source and sink off an orientation.
pub fn extract_skeleton(o: &Orientation) -> Result<OrientationSkeleton> {
    let mut per_face = Vec::with_capacity(o.graph.large_face_count());
    for face in &o.graph.large_faces {
        let m = face.cycle.len();
        let mut source = None;
        let mut sink = None;
        for p in 0..m {
            let v = face.cycle[p];
            let prev = face.cycle[(p + m - 1) % m];
            let next = face.cycle[(p + 1) % m];
            let in_prev = o.arc(prev, v);
            let in_next = o.arc(next, v);
            if in_prev && in_next {
                if sink.replace(v).is_some() {
                    return Err(Error::NotAuso(format!(
                        "large face {} has two sinks",
                        face.index
                    )));
                }
            } else if !in_prev && !in_next {
                if source.replace(v).is_some() {
                    return Err(Error::NotAuso(format!(
                        "large face {} has two sources",
                        face.index
                    )));
                }
            }
        }
        match (source, sink) {
            (Some(s), Some(k)) => per_face.push((s, k)),
            _ => {
                return Err(Error::NotAuso(format!(
                    "large face {} is a directed cycle",
                    face.index
                )))
            }
        }
    }
    Ok(OrientationSkeleton { per_face })
}
