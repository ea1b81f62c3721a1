//! Large-face source/sink profiles: the gamma paths between neighboring
//! faces, the cycles through all sources and all sinks, and their extreme
//! vertices mqa/mqb and msa/msb.

use std::collections::HashMap;

use dcp_core::orientation::{invert, Orientation};
use dcp_core::polytope::{PolytopeGraph, PolytopeKind};

use crate::checks::Checks;
use crate::error::{AnalysisError, Result};
use crate::reach::predecessors;

/// Classification of a vertex with respect to an incident large face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceClass {
    Vertical,
    Horizontal,
    Intermediate,
}

/// vertical iff max(v) = i, horizontal iff min(v) = i, else intermediate.
///
/// The face indices of a vertex on three large faces form a circular run;
/// when that run wraps past n-1 the literal min/max are read along the run
/// (start = horizontal, end = vertical), which is what the definition means
/// away from the seam.
pub fn classify_vertex(graph: &PolytopeGraph, v: usize, face: u16) -> Result<FaceClass> {
    let vert = &graph.vertices[v];
    if !vert.large_face_memberships.contains(&face) {
        return Err(AnalysisError::Unsupported(format!(
            "vertex {v} is not on large face {face}"
        )));
    }
    let m = &vert.large_face_memberships;
    if m.len() == 3 {
        let n = graph.facet_count;
        let run_start = *m
            .iter()
            .find(|&&x| !m.contains(&((x + n - 1) % n)))
            .unwrap_or(&vert.min_coord);
        let run_end = (run_start + 2) % n;
        return Ok(if face == run_start {
            FaceClass::Horizontal
        } else if face == run_end {
            FaceClass::Vertical
        } else {
            FaceClass::Intermediate
        });
    }
    Ok(if vert.max_coord == face {
        FaceClass::Vertical
    } else if vert.min_coord == face {
        FaceClass::Horizontal
    } else {
        FaceClass::Intermediate
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    /// directed from q_i towards q_{i+1}
    Forward,
    /// directed from q_{i+1} towards q_i
    Backward,
    /// q_i == q_{i+1}
    Coincident,
}

/// The directed path between the sources of two neighboring faces, stored
/// tail first.
#[derive(Debug, Clone)]
pub struct GammaPath {
    pub dir: Dir,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OccKind {
    Source,
    Sink,
    PassThrough,
}

/// A maximal run of consecutive face positions sharing one source vertex.
#[derive(Debug, Clone, Copy)]
pub struct Occurrence {
    pub run_lo: usize,
    pub run_hi: usize,
    pub vertex: usize,
    pub kind: OccKind,
}

/// The source-side cycle data of one neighbor family.
#[derive(Debug, Clone)]
pub struct SourceCycle {
    /// per neighboring position pair (i, i+1 mod len): the gamma path
    pub gammas: Vec<GammaPath>,
    pub occurrences: Vec<Occurrence>,
    /// distinct sink vertices of the cycle (1 or 2)
    pub cycle_sinks: Vec<usize>,
    /// distinct source vertices (must be exactly the global source)
    pub cycle_sources: Vec<usize>,
    /// mqa: the cycle sink not preceding the other; mqb: the other sink, or
    /// the global source when the cycle has a single sink vertex.
    pub mqa: usize,
    pub mqb: usize,
}

/// Profile of one neighbor family (dual cyclic has one; products have two).
#[derive(Debug, Clone)]
pub struct FamilyProfile {
    pub family: u8,
    /// global large-face indices in cyclic neighbor order
    pub faces: Vec<u16>,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub q_side: SourceCycle,
    /// the sink cycle, stated in original-orientation terms: gamma paths
    /// between sinks; its sources msa/msb.
    pub s_side: SourceCycle,
}

#[derive(Debug, Clone)]
pub struct LargeFaceProfile {
    pub families: Vec<FamilyProfile>,
}

impl LargeFaceProfile {
    /// The unique family of a dual cyclic polytope.
    pub fn single(&self) -> &FamilyProfile {
        &self.families[0]
    }
}

/// Vertices of each facet, computed once.
pub fn facet_vertex_map(graph: &PolytopeGraph) -> HashMap<u16, Vec<usize>> {
    let mut map: HashMap<u16, Vec<usize>> = HashMap::new();
    for v in &graph.vertices {
        for &f in &v.facet_set {
            map.entry(f).or_default().push(v.id);
        }
    }
    map
}

fn shared_facet(a: (u16, u16), b: (u16, u16)) -> Result<u16> {
    let mut common = Vec::new();
    for x in [a.0, a.1] {
        if x == b.0 || x == b.1 {
            common.push(x);
        }
    }
    if common.len() != 1 {
        return Err(AnalysisError::Internal(format!(
            "neighboring faces {a:?} and {b:?} share {} facets",
            common.len()
        )));
    }
    Ok(common[0])
}

/// BFS shortest directed path from src to dst within a vertex set.
fn shortest_directed_path_within(
    o: &Orientation,
    within: &[usize],
    src: usize,
    dst: usize,
) -> Option<Vec<usize>> {
    let inside: std::collections::HashSet<usize> = within.iter().copied().collect();
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = std::collections::VecDeque::from([src]);
    let mut seen: std::collections::HashSet<usize> = [src].into();
    while let Some(v) = queue.pop_front() {
        if v == dst {
            let mut path = vec![dst];
            let mut cur = dst;
            while cur != src {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in o.out_neighbors(v) {
            if inside.contains(&w) && seen.insert(w) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    None
}

/// Construct the unique directed path between the sources of neighboring
/// faces inside the facet they span, following the uniqueness proof: enter
/// the destination source through its unique in-edge within the facet, and
/// approach that entry vertex along the boundary of the start face.
#[allow(clippy::too_many_arguments)]
fn gamma_between(
    o: &Orientation,
    graph: &PolytopeGraph,
    facet_vertices: &HashMap<u16, Vec<usize>>,
    face_a: u16,
    face_b: u16,
    q_a: usize,
    q_b: usize,
    sink_a: usize,
    sink_b: usize,
    checks: &mut Checks,
) -> Result<GammaPath> {
    if q_a == q_b {
        return Ok(GammaPath {
            dir: Dir::Coincident,
            vertices: vec![q_a],
        });
    }
    let fshared = shared_facet(
        graph.large_faces[face_a as usize].facet_pair,
        graph.large_faces[face_b as usize].facet_pair,
    )?;
    let fverts = &facet_vertices[&fshared];
    let facet_source = o.induced_source(fverts).map_err(AnalysisError::Core)?;
    let (dir, src, dst, src_face, src_sink) = if facet_source == q_a {
        (Dir::Forward, q_a, q_b, face_a, sink_a)
    } else if facet_source == q_b {
        (Dir::Backward, q_b, q_a, face_b, sink_b)
    } else {
        return Err(AnalysisError::Assertion {
            name: format!("prop_2_7_facet_source[{face_a},{face_b}]"),
            witness: format!(
                "source {facet_source} of the spanned facet is neither face source ({q_a}, {q_b})"
            ),
        });
    };
    // unique in-edge of dst within the facet
    let inside: std::collections::HashSet<usize> = fverts.iter().copied().collect();
    let entries: Vec<usize> = o
        .in_neighbors(dst)
        .filter(|w| inside.contains(w))
        .collect();
    if entries.len() != 1 {
        return Err(AnalysisError::Assertion {
            name: format!("prop_2_7_unique_in_edge[{face_a},{face_b}]"),
            witness: format!("destination source {dst} has {} in-edges in the facet", entries.len()),
        });
    }
    let entry = entries[0];
    // the shared edge F_a cap F_b, when the faces intersect (dual cyclic)
    let shared_vertices: Vec<usize> = graph.large_faces[face_a as usize]
        .cycle
        .iter()
        .copied()
        .filter(|&v| graph.on_large_face(face_b, v))
        .collect();
    let path = if entry == src {
        vec![src, dst]
    } else {
        // walk the boundary of the start face from src to the entry vertex,
        // on the directed side of the polygon that reaches it; if the entry
        // is the face sink both sides are directed and the side avoiding the
        // shared edge (shorter side for products) is the gamma path
        let fi = src_face;
        let cyc = &graph.large_faces[fi as usize].cycle;
        let m = cyc.len();
        let ps = graph.cycle_position(fi, src).ok_or_else(|| {
            AnalysisError::Internal(format!("source {src} not on its face {fi}"))
        })?;
        let pv = graph.cycle_position(fi, entry).ok_or_else(|| {
            AnalysisError::Assertion {
                name: format!("prop_2_7_entry_on_face[{face_a},{face_b}]"),
                witness: format!("entry vertex {entry} is not on face {fi}"),
            }
        })?;
        let pk = graph.cycle_position(fi, src_sink).unwrap();
        let off_v = (pv + m - ps) % m;
        let off_sink = (pk + m - ps) % m;
        let forward_walk = || -> Vec<usize> {
            (0..=off_v).map(|step| cyc[(ps + step) % m]).collect()
        };
        let backward_walk = || -> Vec<usize> {
            (0..=(m - off_v)).map(|step| cyc[(ps + m - step) % m]).collect()
        };
        let mut body = if off_v < off_sink {
            forward_walk()
        } else if off_v > off_sink {
            backward_walk()
        } else {
            // entry is the face sink: choose the side not traversing the
            // shared edge, falling back to the shorter side
            let fwd = forward_walk();
            let bwd = backward_walk();
            let traverses = |p: &[usize]| -> bool {
                shared_vertices.len() == 2
                    && p.windows(2).any(|w| {
                        (w[0] == shared_vertices[0] && w[1] == shared_vertices[1])
                            || (w[0] == shared_vertices[1] && w[1] == shared_vertices[0])
                    })
            };
            match (traverses(&fwd), traverses(&bwd)) {
                (false, true) => fwd,
                (true, false) => bwd,
                _ => {
                    if fwd.len() <= bwd.len() {
                        fwd
                    } else {
                        bwd
                    }
                }
            }
        };
        body.push(dst);
        body
    };
    // the path must be a directed path
    for w in path.windows(2) {
        if !o.arc(w[0], w[1]) {
            return Err(AnalysisError::Assertion {
                name: format!("prop_2_7_directed[{face_a},{face_b}]"),
                witness: format!("constructed gamma uses non-arc ({}, {})", w[0], w[1]),
            });
        }
    }
    // cross-check against a generic shortest directed path search: exact
    // equality on dual cyclic (the directed path is unique), equal length on
    // products (an even polygon can offer two shortest sides)
    let bfs = shortest_directed_path_within(o, fverts, src, dst);
    let exact = matches!(graph.kind, PolytopeKind::DualCyclic { .. });
    checks.record(
        format!("prop_2_7_bfs_agrees[{face_a},{face_b}]"),
        match bfs.as_deref() {
            None => false,
            Some(b) => {
                if exact {
                    b == path
                } else {
                    b.len() == path.len()
                }
            }
        },
        || format!("constructive path {path:?}, bfs {bfs:?}"),
    );
    // gamma touches the destination face only at its source
    let dst_face = if dir == Dir::Forward { face_b } else { face_a };
    let touches: Vec<usize> = path
        .iter()
        .copied()
        .filter(|&v| graph.on_large_face(dst_face, v))
        .collect();
    checks.record(
        format!("prop_2_7_dest_face_once[{face_a},{face_b}]"),
        touches == vec![dst],
        || format!("gamma meets face {dst_face} at {touches:?}"),
    );
    // gamma does not traverse the shared edge F_a cap F_b (when it exists)
    if shared_vertices.len() == 2 {
        let (e0, e1) = (shared_vertices[0], shared_vertices[1]);
        let traverses = path
            .windows(2)
            .any(|w| (w[0] == e0 && w[1] == e1) || (w[0] == e1 && w[1] == e0));
        checks.record(
            format!("prop_2_7_avoids_shared_edge[{face_a},{face_b}]"),
            !traverses,
            || format!("gamma traverses the edge ({e0},{e1}) = F_{face_a} cap F_{face_b}"),
        );
    }
    // E(gamma cap F_src, F_dst) consists of out-edges of F_src
    let mut ok = true;
    let mut bad = String::new();
    for &x in &path {
        if !graph.on_large_face(src_face, x) {
            continue;
        }
        for y in graph.adjacency[x] {
            if graph.on_large_face(dst_face, y) && o.arc(y, x) && y != x {
                // an arc from the destination face into the gamma would close
                // a directed cycle
                ok = false;
                bad = format!("arc ({y},{x}) enters gamma on face {src_face}");
                break;
            }
        }
    }
    checks.record(
        format!("prop_2_7_outcut[{face_a},{face_b}]"),
        ok,
        || bad.clone(),
    );
    Ok(GammaPath {
        dir,
        vertices: path,
    })
}

/// Occurrence scan over one family's gamma directions. Positions p and p+1
/// belong to the same occurrence run iff segment p is coincident; the run's
/// kind is read off the directions of its two boundary segments.
fn occurrences(sources: &[usize], gammas: &[GammaPath]) -> Vec<Occurrence> {
    let n = sources.len();
    // run starts: positions whose left segment is non-coincident
    let starts: Vec<usize> = (0..n)
        .filter(|&p| gammas[(p + n - 1) % n].dir != Dir::Coincident)
        .collect();
    debug_assert!(!starts.is_empty());
    let mut occs = Vec::new();
    for &lo in &starts {
        let mut hi = lo;
        while gammas[hi % n].dir == Dir::Coincident {
            debug_assert_eq!(sources[(hi + 1) % n], sources[lo]);
            hi += 1;
        }
        let left = gammas[(lo + n - 1) % n].dir;
        let right = gammas[hi % n].dir;
        let kind = match (left, right) {
            (Dir::Forward, Dir::Backward) => OccKind::Sink,
            (Dir::Backward, Dir::Forward) => OccKind::Source,
            _ => OccKind::PassThrough,
        };
        occs.push(Occurrence {
            run_lo: lo,
            run_hi: hi % n,
            vertex: sources[lo],
            kind,
        });
    }
    occs.sort_by_key(|o| o.run_lo);
    occs
}

fn build_source_cycle(
    o: &Orientation,
    graph: &PolytopeGraph,
    facet_vertices: &HashMap<u16, Vec<usize>>,
    faces: &[u16],
    sources: &[usize],
    sinks: &[usize],
    checks: &mut Checks,
) -> Result<SourceCycle> {
    let n = faces.len();
    let mut gammas = Vec::with_capacity(n);
    for i in 0..n {
        let j = (i + 1) % n;
        gammas.push(gamma_between(
            o,
            graph,
            facet_vertices,
            faces[i],
            faces[j],
            sources[i],
            sources[j],
            sinks[i],
            sinks[j],
            checks,
        )?);
    }
    if gammas.iter().all(|g| g.dir == Dir::Coincident) {
        return Err(AnalysisError::Internal(
            "all face sources coincide".into(),
        ));
    }
    let occs = occurrences(sources, &gammas);
    let mut cycle_sinks: Vec<usize> = occs
        .iter()
        .filter(|oc| oc.kind == OccKind::Sink)
        .map(|oc| oc.vertex)
        .collect();
    cycle_sinks.sort_unstable();
    cycle_sinks.dedup();
    let mut cycle_sources: Vec<usize> = occs
        .iter()
        .filter(|oc| oc.kind == OccKind::Source)
        .map(|oc| oc.vertex)
        .collect();
    cycle_sources.sort_unstable();
    cycle_sources.dedup();

    let global_source = o.global_source().map_err(AnalysisError::Core)?;
    checks.record(
        "prop_2_9_sink_count",
        !cycle_sinks.is_empty() && cycle_sinks.len() <= 2,
        || format!("source cycle has sinks {cycle_sinks:?}"),
    );
    checks.record(
        "prop_2_9_only_source_is_global",
        cycle_sources == vec![global_source],
        || format!("source cycle has sources {cycle_sources:?}, global source {global_source}"),
    );

    // mqa/mqb disambiguation. With two sinks, mqa is the one not preceding
    // the other; ties break lexicographically on (min, max). With one sink
    // vertex, mqb is defined as the global source.
    let (mqa, mqb) = match cycle_sinks.len() {
        1 => (cycle_sinks[0], global_source),
        2 => {
            let (x, y) = (cycle_sinks[0], cycle_sinks[1]);
            let px = predecessors(o, x);
            if px[y] {
                // y precedes x, so x does not precede y (acyclic): mqa := x
                (x, y)
            } else {
                let py = predecessors(o, y);
                if py[x] {
                    (y, x)
                } else {
                    let key = |v: usize| {
                        (graph.vertices[v].min_coord, graph.vertices[v].max_coord)
                    };
                    if key(x) <= key(y) {
                        (x, y)
                    } else {
                        (y, x)
                    }
                }
            }
        }
        _ => {
            return Err(AnalysisError::Assertion {
                name: "prop_2_9_sink_count".into(),
                witness: format!("{} distinct cycle sinks", cycle_sinks.len()),
            })
        }
    };

    // Not both cycle sinks can be sinks of large faces; and a cycle sink
    // that is a large-face sink is preceded by the other.
    let is_face_sink = |v: usize| sinks.contains(&v);
    if cycle_sinks.len() == 2 {
        let (x, y) = (cycle_sinks[0], cycle_sinks[1]);
        checks.record(
            "prop_2_9_not_both_face_sinks",
            !(is_face_sink(x) && is_face_sink(y)),
            || format!("both cycle sinks {x},{y} are large-face sinks"),
        );
        for (a, b) in [(x, y), (y, x)] {
            if is_face_sink(a) {
                let pa = predecessors(o, a);
                checks.record(
                    "prop_2_9_face_sink_preceded",
                    pa[b],
                    || format!("cycle sink {a} is a face sink but {b} does not precede it"),
                );
            }
        }
    }

    // Prop 2.10: intermediate sources lie in {mqa, mqb, global source}.
    for (pos, &face) in faces.iter().enumerate() {
        let q = sources[pos];
        if classify_vertex(graph, q, face)? == FaceClass::Intermediate {
            checks.record(
                format!("prop_2_10_intermediate[{face}]"),
                q == mqa || q == mqb || q == global_source,
                || format!("intermediate source {q} of face {face} not in {{mqa={mqa}, mqb={mqb}, q={global_source}}}"),
            );
        }
    }

    Ok(SourceCycle {
        gammas,
        occurrences: occs,
        cycle_sinks,
        cycle_sources,
        mqa,
        mqb,
    })
}

/// Compute the full profile: per neighbor family, sources/sinks, gamma
/// paths, both cycles and their extremes. The sink side is obtained by
/// running the source-side construction on the inverted orientation.
pub fn compute_profile(o: &Orientation) -> Result<(LargeFaceProfile, Checks)> {
    let graph = &o.graph;
    if !o.is_auso() {
        return Err(AnalysisError::Core(dcp_core::Error::NotAuso(
            "profile needs an AUSO".into(),
        )));
    }
    let facet_vertices = facet_vertex_map(graph);
    let mut checks = Checks::default();
    let inv = invert(o);

    let families: Vec<u8> = match graph.kind {
        PolytopeKind::DualCyclic { .. } => vec![0],
        PolytopeKind::PolygonProduct { .. } => vec![0, 1],
    };
    let mut out = Vec::new();
    for fam in families {
        let faces: Vec<u16> = graph
            .large_faces
            .iter()
            .filter(|f| f.family == fam)
            .map(|f| f.index)
            .collect();
        let mut sources = Vec::with_capacity(faces.len());
        let mut sinks = Vec::with_capacity(faces.len());
        for &f in &faces {
            let cyc = &graph.large_faces[f as usize].cycle;
            sources.push(o.induced_source(cyc).map_err(AnalysisError::Core)?);
            sinks.push(o.induced_sink(cyc).map_err(AnalysisError::Core)?);
        }
        let q_side = build_source_cycle(
            o,
            graph,
            &facet_vertices,
            &faces,
            &sources,
            &sinks,
            &mut checks,
        )?;
        // sink side: sources of the inverted orientation are the sinks here
        let mut s_checks = Checks::default();
        let s_side = build_source_cycle(
            &inv,
            graph,
            &facet_vertices,
            &faces,
            &sinks,
            &sources,
            &mut s_checks,
        )?;
        checks.merge_prefixed("s_side_", s_checks);

        // Prop 2.8: the source gamma and sink gamma of each neighboring pair
        // are vertex-disjoint.
        for (i, (gq, gs)) in q_side.gammas.iter().zip(s_side.gammas.iter()).enumerate() {
            let j = (i + 1) % faces.len();
            let inter: Vec<usize> = gq
                .vertices
                .iter()
                .copied()
                .filter(|v| gs.vertices.contains(v))
                .collect();
            checks.record(
                format!("prop_2_8_disjoint[{},{}]", faces[i], faces[j]),
                inter.is_empty(),
                || format!("gamma_q and gamma_s share {inter:?}"),
            );
        }

        out.push(FamilyProfile {
            family: fam,
            faces,
            sources,
            sinks,
            q_side,
            s_side,
        });
    }
    Ok((LargeFaceProfile { families: out }, checks))
}
