//! Edge orientations of polytope graphs and the AUSO property.

mod linear;
mod skeleton;
mod transform;

pub use linear::{orient_linear, random_generic_orientation, LinearFunctional};
pub use skeleton::{extract_skeleton, orient_from_skeleton, OrientationSkeleton};
pub use transform::{invert, relabel, relabel_rotation_for_anchor, relabel_with_map};

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::polytope::{face_lattice, PolytopeGraph};

/// Why an orientation failed AUSO validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AusoViolation {
    /// A directed cycle, listed as the vertex sequence v0 -> v1 -> ... -> v0.
    DirectedCycle(Vec<usize>),
    /// A 2-face (given by its facet pair) with the wrong number of sinks.
    TwoFaceSinks { facet_pair: (u16, u16), sinks: Vec<usize> },
}

/// Result of AUSO validation.
#[derive(Debug, Clone)]
pub struct AusoVerdict {
    pub is_auso: bool,
    pub witness: Option<AusoViolation>,
}

#[derive(Debug)]
struct AusoCache {
    verdict: AusoVerdict,
    /// Present iff the orientation is acyclic.
    topo_order: Option<Vec<usize>>,
    /// Present iff the orientation is an AUSO.
    source: Option<usize>,
    sink: Option<usize>,
}

/// A direction for every edge of a `PolytopeGraph`.
///
/// Immutable after construction; validation results are cached.
#[derive(Clone)]
pub struct Orientation {
    pub graph: Arc<PolytopeGraph>,
    /// forward[e] == true means the arc runs edges[e].0 -> edges[e].1.
    forward: Vec<bool>,
    cache: Arc<OnceLock<AusoCache>>,
}

impl std::fmt::Debug for Orientation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Orientation({} on {} vertices)",
            self.graph.kind,
            self.graph.vertex_count()
        )
    }
}

impl Orientation {
    pub fn new(graph: Arc<PolytopeGraph>, forward: Vec<bool>) -> Result<Self> {
        if forward.len() != graph.edge_count() {
            return Err(Error::InvalidInput(format!(
                "direction vector has length {}, graph has {} edges",
                forward.len(),
                graph.edge_count()
            )));
        }
        Ok(Orientation {
            graph,
            forward,
            cache: Arc::new(OnceLock::new()),
        })
    }

    pub fn forward_bits(&self) -> &[bool] {
        &self.forward
    }

    /// True if the directed arc (u, v) exists.
    pub fn arc(&self, u: usize, v: usize) -> bool {
        match self.graph.edge_id(u, v) {
            None => false,
            Some(e) => {
                let (a, _) = self.graph.edges[e];
                self.forward[e] == (a == u)
            }
        }
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.adjacency[v]
            .iter()
            .copied()
            .filter(move |&w| self.arc(v, w))
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.adjacency[v]
            .iter()
            .copied()
            .filter(move |&w| self.arc(w, v))
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_neighbors(v).count()
    }

    /// All arcs as (tail, head) pairs in edge order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.graph
            .edges
            .iter()
            .zip(self.forward.iter())
            .map(|(&(u, v), &fwd)| if fwd { (u, v) } else { (v, u) })
    }

    fn cache(&self) -> &AusoCache {
        self.cache.get_or_init(|| self.compute_cache())
    }

    fn compute_cache(&self) -> AusoCache {
        let topo = self.topological_sort();
        match topo {
            Err(cycle) => AusoCache {
                verdict: AusoVerdict {
                    is_auso: false,
                    witness: Some(AusoViolation::DirectedCycle(cycle)),
                },
                topo_order: None,
                source: None,
                sink: None,
            },
            Ok(order) => {
                // acyclic: check unique sinks on every 2-face, large and small
                for (facet_pair, cycle) in self.graph.all_two_faces() {
                    let sinks = self.face_cycle_sinks(&cycle);
                    if sinks.len() != 1 {
                        return AusoCache {
                            verdict: AusoVerdict {
                                is_auso: false,
                                witness: Some(AusoViolation::TwoFaceSinks { facet_pair, sinks }),
                            },
                            topo_order: Some(order),
                            source: None,
                            sink: None,
                        };
                    }
                }
                let source = order[0];
                let sink = order[order.len() - 1];
                debug_assert_eq!(self.out_degree(sink), 0);
                debug_assert_eq!(self.in_neighbors(source).count(), 0);
                AusoCache {
                    verdict: AusoVerdict {
                        is_auso: true,
                        witness: None,
                    },
                    topo_order: Some(order),
                    source: Some(source),
                    sink: Some(sink),
                }
            }
        }
    }

    /// Sinks of a 2-face given its boundary cycle: both boundary edges in.
    fn face_cycle_sinks(&self, cycle: &[usize]) -> Vec<usize> {
        let m = cycle.len();
        (0..m)
            .filter(|&p| {
                let v = cycle[p];
                let prev = cycle[(p + m - 1) % m];
                let next = cycle[(p + 1) % m];
                self.arc(prev, v) && self.arc(next, v)
            })
            .map(|p| cycle[p])
            .collect()
    }

    fn topological_sort(&self) -> std::result::Result<Vec<usize>, Vec<usize>> {
        let n = self.graph.vertex_count();
        let mut indeg = vec![0usize; n];
        for (_, head) in self.arcs() {
            indeg[head] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        stack.sort_unstable_by(|a, b| b.cmp(a));
        let mut order = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for w in self.out_neighbors(v) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err(self.find_cycle())
        }
    }

    /// DFS back-edge cycle extraction; only called when a cycle exists.
    fn find_cycle(&self) -> Vec<usize> {
        let n = self.graph.vertex_count();
        let mut color = vec![0u8; n]; // 0 white, 1 gray, 2 black
        let mut parent = vec![usize::MAX; n];
        for start in 0..n {
            if color[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            color[start] = 1;
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                let nbrs: Vec<usize> = self.out_neighbors(v).collect();
                if *i < nbrs.len() {
                    let w = nbrs[*i];
                    *i += 1;
                    match color[w] {
                        0 => {
                            color[w] = 1;
                            parent[w] = v;
                            stack.push((w, 0));
                        }
                        1 => {
                            // back edge v -> w: cycle w ..parent.. v -> w
                            let mut cyc = vec![v];
                            let mut x = v;
                            while x != w {
                                x = parent[x];
                                cyc.push(x);
                            }
                            cyc.reverse();
                            return cyc;
                        }
                        _ => {}
                    }
                } else {
                    color[v] = 2;
                    stack.pop();
                }
            }
        }
        unreachable!("find_cycle called on acyclic orientation")
    }

    /// AUSO verdict: acyclic plus a unique sink on every 2-face.
    pub fn validate_auso(&self) -> &AusoVerdict {
        &self.cache().verdict
    }

    pub fn is_auso(&self) -> bool {
        self.validate_auso().is_auso
    }

    /// Topological order (sources first). Errors if cyclic.
    pub fn topo_order(&self) -> Result<&[usize]> {
        self.cache()
            .topo_order
            .as_deref()
            .ok_or_else(|| Error::NotAuso("directed cycle".into()))
    }

    pub fn global_source(&self) -> Result<usize> {
        self.cache()
            .source
            .ok_or_else(|| Error::NotAuso("no unique global source".into()))
    }

    pub fn global_sink(&self) -> Result<usize> {
        self.cache()
            .sink
            .ok_or_else(|| Error::NotAuso("no unique global sink".into()))
    }

    /// Unique sink of the induced orientation on an arbitrary vertex set
    /// (used by the face-lattice recursion). Any polytope edge between two
    /// face vertices lies on the face, so induced adjacency is just
    /// restriction.
    pub fn induced_sink(&self, face_vertices: &[usize]) -> Result<usize> {
        let inside: std::collections::HashSet<usize> = face_vertices.iter().copied().collect();
        let mut sinks = face_vertices.iter().copied().filter(|&v| {
            !self
                .out_neighbors(v)
                .any(|w| inside.contains(&w))
        });
        let s = sinks
            .next()
            .ok_or_else(|| Error::NotAuso("face has no sink".into()))?;
        if let Some(s2) = sinks.next() {
            return Err(Error::NotAuso(format!("face has two sinks {s} and {s2}")));
        }
        Ok(s)
    }

    /// Unique source of the induced orientation on a vertex set.
    pub fn induced_source(&self, face_vertices: &[usize]) -> Result<usize> {
        let inside: std::collections::HashSet<usize> = face_vertices.iter().copied().collect();
        let mut sources = face_vertices.iter().copied().filter(|&v| {
            !self
                .in_neighbors(v)
                .any(|w| inside.contains(&w))
        });
        let s = sources
            .next()
            .ok_or_else(|| Error::NotAuso("face has no source".into()))?;
        if let Some(s2) = sources.next() {
            return Err(Error::NotAuso(format!("face has two sources {s} and {s2}")));
        }
        Ok(s)
    }

    /// Full-lattice AUSO definition (unique sink in every face of dim 1..4).
    /// Used as the debug cross-check for the 2-face reduction.
    pub fn full_lattice_unique_sinks(&self) -> Result<bool> {
        let lat = face_lattice(&self.graph)?;
        for f in &lat.faces {
            if self.induced_sink(&f.vertices).is_err() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Serialize per the external interface.
    pub fn to_json(&self, generator: &str, seed: Option<u64>) -> serde_json::Value {
        let arcs: Vec<[usize; 2]> = self.arcs().map(|(u, v)| [u, v]).collect();
        serde_json::json!({
            "polytope": self.graph.kind.to_string(),
            "arcs": arcs,
            "meta": { "generator": generator, "seed": seed },
        })
    }

    /// Rebuild from JSON produced by `to_json` against a given graph.
    pub fn from_json(graph: Arc<PolytopeGraph>, value: &serde_json::Value) -> Result<Self> {
        let spec = value["polytope"]
            .as_str()
            .ok_or_else(|| Error::InvalidInput("missing polytope field".into()))?;
        if spec != graph.kind.to_string() {
            return Err(Error::InvalidInput(format!(
                "orientation is for {spec}, graph is {}",
                graph.kind
            )));
        }
        let arcs = value["arcs"]
            .as_array()
            .ok_or_else(|| Error::InvalidInput("missing arcs".into()))?;
        if arcs.len() != graph.edge_count() {
            return Err(Error::InvalidInput(format!(
                "expected {} arcs, got {}",
                graph.edge_count(),
                arcs.len()
            )));
        }
        let mut forward = vec![false; graph.edge_count()];
        let mut seen: HashMap<usize, ()> = HashMap::new();
        for arc in arcs {
            let u = arc[0].as_u64().ok_or_else(|| Error::InvalidInput("bad arc".into()))? as usize;
            let v = arc[1].as_u64().ok_or_else(|| Error::InvalidInput("bad arc".into()))? as usize;
            let e = graph
                .edge_id(u, v)
                .ok_or_else(|| Error::InvalidInput(format!("({u},{v}) is not an edge")))?;
            if seen.insert(e, ()).is_some() {
                return Err(Error::InvalidInput(format!("edge ({u},{v}) listed twice")));
            }
            forward[e] = graph.edges[e].0 == u;
        }
        Orientation::new(graph, forward)
    }
}
