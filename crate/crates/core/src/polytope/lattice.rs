//! Face lattice of a simple 4-polytope, keyed by facet subsets.
//!
//! In a simple polytope every nonempty intersection of j facets is a face of
//! dimension 4 - j, so the faces of dimension 1..3 are exactly the nonempty
//! facet subsets of size 3..1, plus the whole polytope with the empty key.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::polytope::PolytopeGraph;

/// One face, identified by the facets whose intersection it is.
#[derive(Debug, Clone)]
pub struct FaceHandle {
    /// Sorted facet subset; empty for the whole polytope.
    pub key: Vec<u16>,
    pub dim: u8,
    /// All vertices whose facet set contains `key`.
    pub vertices: Vec<usize>,
    /// Indices (into `FaceLattice::faces`) of the sub-facets, i.e. the faces
    /// of one dimension lower contained in this face.
    pub children: Vec<usize>,
}

/// The faces of dimension 1, 2, 3 plus the whole polytope (dim 4).
#[derive(Debug, Clone)]
pub struct FaceLattice {
    pub faces: Vec<FaceHandle>,
    index: HashMap<Vec<u16>, usize>,
    /// Index of the dim-4 pseudo-face (empty key).
    pub top: usize,
}

impl FaceLattice {
    pub fn face_id(&self, key: &[u16]) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn face(&self, id: usize) -> &FaceHandle {
        &self.faces[id]
    }

    /// Faces of a given dimension.
    pub fn by_dim(&self, dim: u8) -> impl Iterator<Item = &FaceHandle> {
        self.faces.iter().filter(move |f| f.dim == dim)
    }

    /// Sub-facets of `face` containing vertex `v`. For a simple 4-polytope a
    /// vertex of a dim-d face lies in exactly d of them.
    pub fn children_at(&self, face: usize, v: usize) -> Vec<usize> {
        self.faces[face]
            .children
            .iter()
            .copied()
            .filter(|&c| self.faces[c].vertices.binary_search(&v).is_ok())
            .collect()
    }
}

/// Build the full lattice from the vertex facet sets.
pub fn face_lattice(graph: &PolytopeGraph) -> Result<FaceLattice> {
    let mut buckets: HashMap<Vec<u16>, Vec<usize>> = HashMap::new();
    for v in &graph.vertices {
        let fs = v.facet_set;
        // all subsets of size 1, 2, 3
        for mask in 1u8..15 {
            let size = mask.count_ones();
            if size == 4 {
                continue;
            }
            let key: Vec<u16> = (0..4).filter(|i| mask & (1 << i) != 0).map(|i| fs[i]).collect();
            buckets.entry(key).or_default().push(v.id);
        }
    }
    let mut keys: Vec<Vec<u16>> = buckets.keys().cloned().collect();
    keys.push(Vec::new());
    // Order: by dimension descending (key length ascending), then key.
    keys.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));

    let mut faces = Vec::with_capacity(keys.len());
    let mut index = HashMap::with_capacity(keys.len());
    for key in keys {
        let dim = 4 - key.len() as u8;
        let mut vertices = if key.is_empty() {
            (0..graph.vertex_count()).collect::<Vec<_>>()
        } else {
            buckets[&key].clone()
        };
        vertices.sort_unstable();
        if dim == 1 && vertices.len() != 2 {
            return Err(Error::Internal(format!(
                "edge {key:?} has {} vertices",
                vertices.len()
            )));
        }
        index.insert(key.clone(), faces.len());
        faces.push(FaceHandle {
            key,
            dim,
            vertices,
            children: Vec::new(),
        });
    }

    // Children: face of dim d -> faces of dim d-1 whose key extends it by one
    // facet and whose vertex set is a subset.
    let ids: Vec<usize> = (0..faces.len()).collect();
    for &id in &ids {
        let key = faces[id].key.clone();
        if faces[id].dim == 1 {
            continue;
        }
        let mut children = Vec::new();
        if key.is_empty() {
            // the facets
            for (other_key, &cid) in index.iter() {
                if other_key.len() == 1 {
                    children.push(cid);
                }
            }
        } else {
            // extend by any facet appearing in this face's vertices
            let mut cands: Vec<u16> = Vec::new();
            for &v in &faces[id].vertices {
                for &f in &graph.vertices[v].facet_set {
                    if !key.contains(&f) {
                        cands.push(f);
                    }
                }
            }
            cands.sort_unstable();
            cands.dedup();
            for f in cands {
                let mut child_key = key.clone();
                child_key.push(f);
                child_key.sort_unstable();
                if let Some(&cid) = index.get(&child_key) {
                    children.push(cid);
                }
            }
        }
        children.sort_unstable();
        children.dedup();
        faces[id].children = children;
    }

    let top = index[&Vec::new()];
    Ok(FaceLattice { faces, index, top })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::build_dual_cyclic;

    #[test]
    fn simplex_lattice() {
        // DualCyclic(5) is the 4-simplex: 5 facets, each a tetrahedron with 4
        // triangular 2-faces.
        let g = build_dual_cyclic(5).unwrap();
        let lat = face_lattice(&g).unwrap();
        let facets: Vec<_> = lat.by_dim(3).collect();
        assert_eq!(facets.len(), 5);
        for f in facets {
            assert_eq!(f.vertices.len(), 4);
            assert_eq!(f.children.len(), 4);
            for &c in &f.children {
                assert_eq!(lat.face(c).dim, 2);
                assert_eq!(lat.face(c).vertices.len(), 3);
            }
        }
    }

    #[test]
    fn two_face_count_is_pair_count() {
        // 2-faces of the dual correspond to edges of the 2-neighborly cyclic
        // polytope: all pairs.
        let g = build_dual_cyclic(7).unwrap();
        let lat = face_lattice(&g).unwrap();
        assert_eq!(lat.by_dim(2).count(), 21);
    }

    #[test]
    fn facets_are_wedges() {
        // Facet f_i is spanned by F_{i-1} and F_i: every vertex of f_i lies
        // on one of the two.
        let g = build_dual_cyclic(9).unwrap();
        let lat = face_lattice(&g).unwrap();
        for i in 0..9u16 {
            let f = lat.face(lat.face_id(&[i]).unwrap());
            assert_eq!(f.vertices.len(), 2 * (9 - 2) - 2);
            let prev = (i + 9 - 1) % 9;
            for &v in &f.vertices {
                let m = &g.vertices[v].large_face_memberships;
                assert!(m.contains(&prev) || m.contains(&i));
            }
        }
    }

    #[test]
    fn vertex_lies_in_dim_many_children() {
        let g = build_dual_cyclic(8).unwrap();
        let lat = face_lattice(&g).unwrap();
        for f in lat.faces.iter() {
            if f.dim < 2 {
                continue;
            }
            let fid = lat.face_id(&f.key).unwrap();
            for &v in &f.vertices {
                assert_eq!(
                    lat.children_at(fid, v).len(),
                    f.dim as usize,
                    "face {:?} vertex {v}",
                    f.key
                );
            }
        }
    }
}
