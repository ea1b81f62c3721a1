//! The 1-skeleton plus large-2-face structure of dual cyclic 4-polytopes and
//! products of two polygons.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::gale::enumerate_gale_sets;

/// Which polytope family a graph was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolytopeKind {
    /// Dual of the cyclic 4-polytope with `n` points on the moment curve.
    DualCyclic { n: u16 },
    /// Product of a k-gon and an l-gon.
    PolygonProduct { k: u16, l: u16 },
}

impl fmt::Display for PolytopeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeKind::DualCyclic { n } => write!(f, "dual-cyclic:{n}"),
            PolytopeKind::PolygonProduct { k, l } => write!(f, "product:{k}x{l}"),
        }
    }
}

/// Parse a polytope spec string: `dual-cyclic:<n>` or `product:<k>x<l>`.
pub fn parse_polytope_spec(s: &str) -> Result<PolytopeKind> {
    let bad = || Error::InvalidInput(format!("cannot parse polytope spec `{s}`"));
    if let Some(rest) = s.strip_prefix("dual-cyclic:") {
        let n: u16 = rest.parse().map_err(|_| bad())?;
        return Ok(PolytopeKind::DualCyclic { n });
    }
    if let Some(rest) = s.strip_prefix("product:") {
        let (k, l) = rest.split_once('x').ok_or_else(bad)?;
        return Ok(PolytopeKind::PolygonProduct {
            k: k.parse().map_err(|_| bad())?,
            l: l.parse().map_err(|_| bad())?,
        });
    }
    Err(bad())
}

/// A vertex of the polytope, identified by the 4 facets through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    /// Sorted facet indices (size 4; a simple 4-polytope).
    pub facet_set: [u16; 4],
    /// Indices of the large 2-faces through this vertex (2 or 3 of them).
    pub large_face_memberships: Vec<u16>,
    /// Smallest large-face index through this vertex.
    pub min_coord: u16,
    /// Largest large-face index through this vertex.
    pub max_coord: u16,
}

/// One of the distinguished large 2-faces covering all vertices and edges.
#[derive(Debug, Clone)]
pub struct LargeTwoFace {
    /// Global index into `PolytopeGraph::large_faces`.
    pub index: u16,
    /// 0 for dual cyclic; 0/1 for the two families of a polygon product.
    pub family: u8,
    /// The two facets whose intersection is this face.
    pub facet_pair: (u16, u16),
    /// Boundary cycle in canonical forward order (see `forward` below).
    pub cycle: Vec<usize>,
    /// Vertices v on this face with max(v) = index.
    pub vertical_part: Vec<usize>,
    /// Vertices v on this face with min(v) = index.
    pub horizontal_part: Vec<usize>,
}

impl LargeTwoFace {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }
}

/// Immutable graph + large-face structure of a simple 4-polytope.
#[derive(Debug, Clone)]
pub struct PolytopeGraph {
    pub kind: PolytopeKind,
    /// Number of facets (n for dual cyclic, k+l for products).
    pub facet_count: u16,
    pub vertices: Vec<Vertex>,
    /// Exactly four neighbors per vertex, sorted.
    pub adjacency: Vec<[usize; 4]>,
    /// Undirected edges as (u, v) with u < v, sorted lexicographically.
    pub edges: Vec<(usize, usize)>,
    pub large_faces: Vec<LargeTwoFace>,
    edge_lookup: HashMap<(usize, usize), usize>,
    facet_set_lookup: HashMap<[u16; 4], usize>,
    /// cycle_pos[face][vertex id] = Some(position in face.cycle)
    cycle_pos: Vec<HashMap<usize, usize>>,
}

impl PolytopeGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edge_lookup.get(&key).copied()
    }

    pub fn vertex_by_facets(&self, facets: &[u16; 4]) -> Option<usize> {
        self.facet_set_lookup.get(facets).copied()
    }

    /// Number of large faces (n, or k+l for products).
    pub fn large_face_count(&self) -> usize {
        self.large_faces.len()
    }

    /// Position of `v` in the canonical boundary walk of large face `face`.
    pub fn cycle_position(&self, face: u16, v: usize) -> Option<usize> {
        self.cycle_pos[face as usize].get(&v).copied()
    }

    /// True if vertex `v` lies on large face `face`.
    pub fn on_large_face(&self, face: u16, v: usize) -> bool {
        self.cycle_position(face, v).is_some()
    }

    /// The two neighbors of `v` along the boundary of large face `face`.
    pub fn face_neighbors(&self, face: u16, v: usize) -> Option<(usize, usize)> {
        let f = &self.large_faces[face as usize];
        let p = self.cycle_position(face, v)?;
        let m = f.cycle.len();
        Some((f.cycle[(p + m - 1) % m], f.cycle[(p + 1) % m]))
    }

    /// Large-face indices of the edge (u, v): every edge lies on 1 or 2.
    pub fn edge_large_faces(&self, u: usize, v: usize) -> Vec<u16> {
        let a = &self.vertices[u].large_face_memberships;
        let b = &self.vertices[v].large_face_memberships;
        let mut out: Vec<u16> = a
            .iter()
            .copied()
            .filter(|f| b.contains(f))
            .filter(|&f| {
                // Both endpoints on the face does not yet make the edge a
                // face edge; they must be consecutive on the boundary walk.
                let (p, q) = self.face_neighbors(f, u).unwrap();
                p == v || q == v
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// All 2-faces as (facet pair, vertex list), large and small.
    /// Vertex lists are in boundary-cycle order.
    pub fn all_two_faces(&self) -> Vec<((u16, u16), Vec<usize>)> {
        let mut buckets: HashMap<(u16, u16), Vec<usize>> = HashMap::new();
        for v in &self.vertices {
            let fs = v.facet_set;
            for a in 0..4 {
                for b in (a + 1)..4 {
                    buckets.entry((fs[a], fs[b])).or_default().push(v.id);
                }
            }
        }
        let mut keys: Vec<(u16, u16)> = buckets.keys().copied().collect();
        keys.sort_unstable();
        keys.into_iter()
            .filter(|k| buckets[k].len() >= 3)
            .map(|k| {
                let verts = &buckets[&k];
                (k, self.polygon_cycle(verts))
            })
            .collect()
    }

    /// Order the vertices of a 2-face into its boundary cycle.
    pub(crate) fn polygon_cycle(&self, verts: &[usize]) -> Vec<usize> {
        let inside: std::collections::HashSet<usize> = verts.iter().copied().collect();
        let start = *verts.iter().min().unwrap();
        let mut cycle = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = self.adjacency[cur]
                .iter()
                .copied()
                .find(|&w| w != prev && inside.contains(&w) && (cycle.len() > 1 || w != start))
                .unwrap_or(start);
            if next == start {
                break;
            }
            cycle.push(next);
            prev = cur;
            cur = next;
        }
        debug_assert_eq!(cycle.len(), verts.len());
        cycle
    }

    /// JSON dump of the graph per the external interface.
    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .map(|v| {
                serde_json::json!({
                    "id": v.id,
                    "facets": v.facet_set.to_vec(),
                    "min": v.min_coord,
                    "max": v.max_coord,
                })
            })
            .collect();
        let edges: Vec<[usize; 2]> = self.edges.iter().map(|&(u, v)| [u, v]).collect();
        let large_faces: Vec<Vec<usize>> =
            self.large_faces.iter().map(|f| f.cycle.clone()).collect();
        let mut obj = serde_json::json!({
            "kind": match self.kind {
                PolytopeKind::DualCyclic { .. } => "dual-cyclic",
                PolytopeKind::PolygonProduct { .. } => "product",
            },
            "n": self.facet_count,
            "vertices": vertices,
            "edges": edges,
            "large_faces": large_faces,
        });
        if let PolytopeKind::PolygonProduct { k, l } = self.kind {
            obj["k"] = serde_json::json!(k);
            obj["l"] = serde_json::json!(l);
        }
        obj
    }
}

/// Shared finishing pass: derive edges, adjacency and large-face cycles from
/// vertex facet sets.
struct Builder {
    kind: PolytopeKind,
    facet_count: u16,
    facet_sets: Vec<[u16; 4]>,
}

impl Builder {
    fn finish(
        self,
        membership_fn: impl Fn(&[u16; 4]) -> Vec<u16>,
        face_meta: Vec<(u8, (u16, u16))>,
    ) -> Result<PolytopeGraph> {
        let nv = self.facet_sets.len();
        let mut facet_set_lookup = HashMap::with_capacity(nv);
        let mut vertices = Vec::with_capacity(nv);
        for (id, fs) in self.facet_sets.iter().enumerate() {
            let memberships = membership_fn(fs);
            debug_assert!(!memberships.is_empty());
            let min_coord = *memberships.iter().min().unwrap();
            let max_coord = *memberships.iter().max().unwrap();
            facet_set_lookup.insert(*fs, id);
            vertices.push(Vertex {
                id,
                facet_set: *fs,
                large_face_memberships: memberships,
                min_coord,
                max_coord,
            });
        }

        // Edges: two vertices are adjacent iff they share exactly 3 facets,
        // i.e. a common 3-subset. Each 3-subset of a vertex's facet set is an
        // edge of the polytope with exactly two endpoints.
        let mut triple_buckets: HashMap<[u16; 3], Vec<usize>> = HashMap::new();
        for v in &vertices {
            let fs = v.facet_set;
            for skip in 0..4 {
                let mut t = [0u16; 3];
                let mut w = 0;
                for (i, &f) in fs.iter().enumerate() {
                    if i != skip {
                        t[w] = f;
                        w += 1;
                    }
                }
                triple_buckets.entry(t).or_default().push(v.id);
            }
        }
        let mut edges = Vec::with_capacity(nv * 2);
        for (t, bucket) in &triple_buckets {
            if bucket.len() != 2 {
                return Err(Error::Internal(format!(
                    "facet triple {t:?} lies on {} vertices, expected 2",
                    bucket.len()
                )));
            }
            let (u, v) = (bucket[0].min(bucket[1]), bucket[0].max(bucket[1]));
            edges.push((u, v));
        }
        edges.sort_unstable();
        edges.dedup();

        let mut adjacency_raw: Vec<Vec<usize>> = vec![Vec::with_capacity(4); nv];
        for &(u, v) in &edges {
            adjacency_raw[u].push(v);
            adjacency_raw[v].push(u);
        }
        let mut adjacency = Vec::with_capacity(nv);
        for (id, mut nbrs) in adjacency_raw.into_iter().enumerate() {
            nbrs.sort_unstable();
            nbrs.dedup();
            if nbrs.len() != 4 {
                return Err(Error::Internal(format!(
                    "vertex {id} has degree {}, expected 4",
                    nbrs.len()
                )));
            }
            adjacency.push([nbrs[0], nbrs[1], nbrs[2], nbrs[3]]);
        }

        let edge_lookup: HashMap<(usize, usize), usize> = edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();

        let mut graph = PolytopeGraph {
            kind: self.kind,
            facet_count: self.facet_count,
            vertices,
            adjacency,
            edges,
            large_faces: Vec::new(),
            edge_lookup,
            facet_set_lookup,
            cycle_pos: Vec::new(),
        };

        // Large faces: gather members, order the boundary walk, canonicalize
        // the direction so edge labels increase modulo facet_count (the label
        // of a face edge is its third facet).
        let face_count = face_meta.len();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); face_count];
        for v in &graph.vertices {
            for &m in &v.large_face_memberships {
                members[m as usize].push(v.id);
            }
        }
        let mut large_faces = Vec::with_capacity(face_count);
        for (idx, ((family, facet_pair), verts)) in
            face_meta.into_iter().zip(members.into_iter()).enumerate()
        {
            let mut cycle = graph.polygon_cycle(&verts);
            orient_cycle_forward(&graph, facet_pair, &mut cycle, self.facet_count);
            let vertical_part = cycle
                .iter()
                .copied()
                .filter(|&v| graph.vertices[v].max_coord == idx as u16)
                .collect();
            let horizontal_part = cycle
                .iter()
                .copied()
                .filter(|&v| graph.vertices[v].min_coord == idx as u16)
                .collect();
            large_faces.push(LargeTwoFace {
                index: idx as u16,
                family,
                facet_pair,
                cycle,
                vertical_part,
                horizontal_part,
            });
        }
        graph.cycle_pos = large_faces
            .iter()
            .map(|f| {
                f.cycle
                    .iter()
                    .enumerate()
                    .map(|(p, &v)| (v, p))
                    .collect()
            })
            .collect();
        graph.large_faces = large_faces;
        Ok(graph)
    }
}

/// Rotate/flip a boundary cycle into the canonical forward direction: the
/// third-facet labels of consecutive edges follow the circular order of the
/// labels present on the face. The walk starts at the vertex after the label
/// gap, so the first edge carries the smallest label.
fn orient_cycle_forward(
    graph: &PolytopeGraph,
    facet_pair: (u16, u16),
    cycle: &mut Vec<usize>,
    _n_facets: u16,
) {
    let m = cycle.len();
    let label = |u: usize, v: usize| -> u16 {
        let a = graph.vertices[u].facet_set;
        let b = graph.vertices[v].facet_set;
        *a.iter()
            .find(|&&f| b.contains(&f) && f != facet_pair.0 && f != facet_pair.1)
            .expect("face edge must share a third facet")
    };
    let walk_labels = |cycle: &[usize]| -> Vec<u16> {
        (0..m).map(|i| label(cycle[i], cycle[(i + 1) % m])).collect()
    };
    let mut present: Vec<u16> = walk_labels(cycle);
    present.sort_unstable();
    let next_label = |d: u16| -> u16 {
        let pos = present.binary_search(&d).expect("label present on face");
        present[(pos + 1) % present.len()]
    };
    let l01 = label(cycle[0], cycle[1]);
    let l12 = label(cycle[1], cycle[2 % m]);
    if next_label(l01) != l12 {
        cycle.reverse();
    }
    let labels = walk_labels(cycle);
    let min_pos = labels
        .iter()
        .enumerate()
        .min_by_key(|&(_, l)| l)
        .map(|(i, _)| i)
        .unwrap();
    cycle.rotate_left(min_pos);
    debug_assert!({
        let l = walk_labels(cycle);
        l.windows(2).all(|w| next_label(w[0]) == w[1])
    });
}

/// Build the graph of the dual cyclic 4-polytope C*(n).
pub fn build_dual_cyclic(n: u16) -> Result<PolytopeGraph> {
    if n < 5 {
        return Err(Error::InvalidInput(format!("dual-cyclic requires n >= 5, got {n}")));
    }
    let facet_sets = enumerate_gale_sets(n)?;
    let builder = Builder {
        kind: PolytopeKind::DualCyclic { n },
        facet_count: n,
        facet_sets,
    };
    // v lies on F_i iff {i, i+1 mod n} is contained in its facet set.
    let membership = move |fs: &[u16; 4]| -> Vec<u16> {
        (0..n)
            .filter(|&i| fs.contains(&i) && fs.contains(&((i + 1) % n)))
            .collect()
    };
    let face_meta: Vec<(u8, (u16, u16))> = (0..n).map(|i| (0u8, (i, (i + 1) % n))).collect();
    builder.finish(membership, face_meta)
}

/// Build the graph of the product of a k-gon and an l-gon.
///
/// Facets 0..k are the edge-of-first-polygon prisms, facets k..k+l the
/// edge-of-second-polygon prisms. Large faces 0..k are the l-gon copies
/// {a} x C_l, large faces k..k+l the k-gon copies C_k x {b}.
pub fn build_polygon_product(k: u16, l: u16) -> Result<PolytopeGraph> {
    if k < 3 || l < 3 {
        return Err(Error::InvalidInput(format!(
            "polygon product requires k, l >= 3, got {k}x{l}"
        )));
    }
    let mut facet_sets = Vec::with_capacity(k as usize * l as usize);
    for a in 0..k {
        for b in 0..l {
            let mut fs = [
                (a + k - 1) % k,
                a,
                k + (b + l - 1) % l,
                k + b,
            ];
            fs.sort_unstable();
            facet_sets.push(fs);
        }
    }
    facet_sets.sort_unstable();
    let builder = Builder {
        kind: PolytopeKind::PolygonProduct { k, l },
        facet_count: k + l,
        facet_sets,
    };
    let membership = move |fs: &[u16; 4]| -> Vec<u16> {
        // The two facets below k are consecutive k-gon edges meeting in a
        // k-gon vertex a = the larger edge index in circular order; same for
        // the second polygon.
        let ks: Vec<u16> = fs.iter().copied().filter(|&f| f < k).collect();
        let ls: Vec<u16> = fs.iter().copied().filter(|&f| f >= k).map(|f| f - k).collect();
        let a = circular_meet(ks[0], ks[1], k);
        let b = circular_meet(ls[0], ls[1], l);
        vec![a, k + b]
    };
    let mut face_meta = Vec::with_capacity((k + l) as usize);
    for a in 0..k {
        face_meta.push((0u8, ((a + k - 1) % k, a)));
    }
    for b in 0..l {
        face_meta.push((1u8, (k + (b + l - 1) % l, k + b)));
    }
    builder.finish(membership, face_meta)
}

/// The polygon vertex where circular edges e1 and e2 meet (edge i joins
/// polygon vertices i and i+1 mod m).
fn circular_meet(e1: u16, e2: u16, m: u16) -> u16 {
    if (e1 + 1) % m == e2 {
        e2
    } else {
        debug_assert!((e2 + 1) % m == e1);
        e1
    }
}
