//! Dev harness: the insertion recurrence P_k -> P_{k+1} with seeded repair,
//! evaluated end to end.

use std::sync::Arc;

use dcp_core::orientation::{orient_from_skeleton, OrientationSkeleton};
use dcp_core::pivot::FacetEngine;
use dcp_core::polytope::{build_dual_cyclic, face_lattice, FaceLattice, PolytopeGraph};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn v2(graph: &PolytopeGraph, n: u16, a: u16, b: u16) -> Option<usize> {
    let mut fs = [a % n, (a + 1) % n, b % n, (b + 1) % n];
    fs.sort_unstable();
    if fs.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    graph.vertex_by_facets(&fs)
}

/// The two facet-pair anchors of a vertex: {a, a+1} u {b, b+1} mod n.
/// Equals (min, max) except on wrap vertices, where the anchors follow the
/// circular run.
fn coords(graph: &PolytopeGraph, v: usize) -> (u16, u16) {
    let n = graph.facet_count;
    let m = &graph.vertices[v].large_face_memberships;
    if m.len() == 3 {
        let start = *m
            .iter()
            .find(|&&x| !m.contains(&((x + n - 1) % n)))
            .unwrap();
        (start, (start + 2) % n)
    } else {
        (graph.vertices[v].min_coord, graph.vertices[v].max_coord)
    }
}

/// Insert 12 faces in the middle: old designations map by face-index
/// coordinates (indices >= cut shift by 12), the two cut-adjacent sinks
/// shift ten to the left, and the fresh middle faces replicate the
/// designations of the preceding twelve faces translated one block up the
/// diagonal.
fn insert_block(
    old_graph: &PolytopeGraph,
    new_graph: &PolytopeGraph,
    sk: &OrientationSkeleton,
    n_old: u16,
) -> Option<OrientationSkeleton> {
    let cut = n_old / 2; // faces >= cut move up by 12
    let n_new = n_old + 12;
    let phi = |i: u16| if i < cut { i } else { i + 12 };
    let map_vertex = |v: usize| -> Option<usize> {
        // facet-level image when it stays Gale-valid (covers the wrap
        // vertices); coordinate re-expression for cut straddlers
        let mut fs = old_graph.vertices[v].facet_set.map(phi);
        fs.sort_unstable();
        if let Some(img) = new_graph.vertex_by_facets(&fs) {
            return Some(img);
        }
        let (mn, mx) = coords(old_graph, v);
        v2(new_graph, n_new, phi(mn), phi(mx))
    };
    let mut per_face: Vec<Option<(usize, usize)>> = vec![None; n_new as usize];
    for i in 0..n_old {
        let (src, snk) = sk.per_face[i as usize];
        let new_face = if i < cut - 1 {
            i
        } else if i >= cut {
            i + 12
        } else {
            continue; // the stretched face cut-1 is re-designated below
        };
        let Some(ms) = map_vertex(src) else {
            eprintln!("insert: face {i} src {:?} unmappable", coords(old_graph, src));
            return None;
        };
        let Some(mk) = map_vertex(snk) else {
            eprintln!("insert: face {i} snk {:?} unmappable", coords(old_graph, snk));
            return None;
        };
        per_face[new_face as usize] = Some((ms, mk));
    }
    // fresh faces cut-1 .. cut+11: repeat the block pattern. A fresh face f
    // still in the old index range copies old face f at its own
    // coordinates; past the old range it copies face f-12 translated one
    // block up the diagonal.
    for j in 0..13u16 {
        let new_face = cut - 1 + j;
        if per_face[new_face as usize].is_some() {
            continue;
        }
        // try pattern offsets in a fixed order until the copied designation
        // lands on the target face
        let mut found = None;
        for off in [0u16, 12, 1, 11, 2, 10, 3, 9, 4, 8, 5, 7, 6] {
            if off > new_face || new_face - off >= n_old {
                continue;
            }
            let old_face = new_face - off;
            let (src, snk) = sk.per_face[old_face as usize];
            let (smn, smx) = coords(old_graph, src);
            let (tmn, tmx) = coords(old_graph, snk);
            let (Some(s_new), Some(t_new)) = (
                v2(new_graph, n_new, smn + off, smx + off),
                v2(new_graph, n_new, tmn + off, tmx + off),
            ) else {
                continue;
            };
            if s_new != t_new
                && new_graph.cycle_position(new_face, s_new).is_some()
                && new_graph.cycle_position(new_face, t_new).is_some()
            {
                found = Some((s_new, t_new));
                break;
            }
        }
        let Some(d) = found else {
            eprintln!("insert: fresh face {new_face}: no pattern offset fits");
            return None;
        };
        per_face[new_face as usize] = Some(d);
    }
    // every designation must lie on its face
    for (f, d) in per_face.iter().enumerate() {
        let &Some((src, snk)) = d else {
            eprintln!("insert: face {f} undesignated");
            return None;
        };
        if new_graph.cycle_position(f as u16, src).is_none() {
            eprintln!("insert: face {f} source {:?} off-face", coords(new_graph, src));
            return None;
        }
        if new_graph.cycle_position(f as u16, snk).is_none() {
            eprintln!("insert: face {f} sink {:?} off-face", coords(new_graph, snk));
            return None;
        }
        if src == snk {
            eprintln!("insert: face {f} source == sink");
            return None;
        }
    }
    // ten-left shift of the sinks of faces cut-2 and cut-1
    for f in [cut - 2, cut - 1] {
        let (src, snk) = per_face[f as usize]?;
        let (mn, mx) = coords(new_graph, snk);
        if mx >= 10 && mx - 10 > mn + 1 {
            if let Some(s2) = v2(new_graph, n_new, mn, mx - 10) {
                per_face[f as usize] = Some((src, s2));
            }
        }
    }
    Some(OrientationSkeleton {
        per_face: per_face.into_iter().collect::<Option<Vec<_>>>()?,
    })
}

/// Number of consecutive-face pairs whose skeletons force opposite
/// directions on their shared edge.
fn conflict_count(graph: &PolytopeGraph, sk: &OrientationSkeleton) -> usize {
    let n = graph.large_face_count();
    let dir_on = |f: usize, u: usize, v: usize| -> Option<bool> {
        // true if face f's boundary orientation runs u -> v
        let cyc = &graph.large_faces[f].cycle;
        let m = cyc.len();
        let (src, snk) = sk.per_face[f];
        let ps = graph.cycle_position(f as u16, src)?;
        let pk = graph.cycle_position(f as u16, snk)?;
        let pu = graph.cycle_position(f as u16, u)?;
        let fwd_len = (pk + m - ps) % m;
        // edge from position pu to pu+1 or pu-1
        if cyc[(pu + 1) % m] == v {
            let off = (pu + m - ps) % m;
            Some(off < fwd_len)
        } else if cyc[(pu + m - 1) % m] == v {
            let p = (pu + m - 1) % m;
            let off = (p + m - ps) % m;
            Some(!(off < fwd_len))
        } else {
            None
        }
    };
    let mut conflicts = 0;
    for i in 0..n {
        let j = (i + 1) % n;
        // shared edge: the two vertices on both faces, consecutive on both
        let shared: Vec<usize> = graph.large_faces[i]
            .cycle
            .iter()
            .copied()
            .filter(|&v| graph.on_large_face(j as u16, v))
            .collect();
        if shared.len() != 2 {
            continue;
        }
        let (u, v) = (shared[0], shared[1]);
        match (dir_on(i, u, v), dir_on(j, u, v)) {
            (Some(a), Some(b)) if a != b => conflicts += 1,
            _ => {}
        }
    }
    conflicts
}

fn min_steps(graph: &Arc<PolytopeGraph>, lat: &FaceLattice, sk: &OrientationSkeleton) -> Option<u64> {
    let o = orient_from_skeleton(graph, sk).ok()?;
    if !o.is_auso() {
        return None;
    }
    let q = o.global_source().ok()?;
    let mut eng = FacetEngine::new(&o, lat).ok()?;
    eng.min_steps(q, true).ok()
}

/// Seeded annealing repair: restore validity with minimal designation churn,
/// then push min-steps up to at least `target`.
fn repair_and_improve(
    graph: &Arc<PolytopeGraph>,
    lat: &FaceLattice,
    start: &OrientationSkeleton,
    target: u64,
    budget: u64,
    seed: u64,
) -> Option<(OrientationSkeleton, u64)> {
    let n = graph.large_face_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let score = |sk: &OrientationSkeleton| -> (f64, Vec<usize>) {
        match orient_from_skeleton(graph, sk) {
            Err(e) => {
                let mut blame = Vec::new();
                if let dcp_core::Error::SkeletonConflict { face_a, face_b, .. } = e {
                    blame.push(face_a);
                    blame.push(face_b);
                }
                (-200.0 * conflict_count(graph, sk) as f64, blame)
            }
            Ok(o) => {
                let mut bad = 0usize;
                let mut blame = Vec::new();
                for (_, cyc) in graph.all_two_faces() {
                    let m = cyc.len();
                    let sinks = (0..m)
                        .filter(|&p| {
                            let v = cyc[p];
                            o.arc(cyc[(p + m - 1) % m], v) && o.arc(cyc[(p + 1) % m], v)
                        })
                        .count();
                    if sinks != 1 {
                        bad += 1;
                        for p in 0..m {
                            let (u, v) = (cyc[p], cyc[(p + 1) % m]);
                            for f in graph.edge_large_faces(u, v) {
                                blame.push(f as usize);
                            }
                        }
                    }
                }
                if bad > 0 {
                    return (-(bad as f64) * 5.0, blame);
                }
                if !o.is_auso() {
                    let mut blame = Vec::new();
                    if let Some(dcp_core::orientation::AusoViolation::DirectedCycle(cyc)) =
                        o.validate_auso().witness.as_ref()
                    {
                        for w in cyc.windows(2) {
                            for f in graph.edge_large_faces(w[0], w[1]) {
                                blame.push(f as usize);
                            }
                        }
                    }
                    return (-3.0, blame);
                }
                let q = o.global_source().unwrap();
                let mut eng = FacetEngine::new(&o, lat).unwrap();
                (eng.min_steps(q, true).unwrap() as f64, Vec::new())
            }
        }
    };
    let mut cur_sk = start.clone();
    let (mut cur, mut cur_blame) = score(&cur_sk);
    let mut best_valid: Option<(OrientationSkeleton, u64)> = min_steps(graph, lat, &cur_sk)
        .map(|ms| (cur_sk.clone(), ms));
    for e in 0..budget {
        let temp = 2.0 * (1.0 - e as f64 / budget as f64);
        // attack a blamed face when there is one
        let f = if !cur_blame.is_empty() && rng.random_bool(0.7) {
            cur_blame[rng.random_range(0..cur_blame.len())]
        } else {
            rng.random_range(0..n)
        };
        let cyc = &graph.large_faces[f].cycle;
        let m = cyc.len();
        let mut cand = cur_sk.clone();
        if rng.random_bool(0.8) {
            let p = graph.cycle_position(f as u16, cand.per_face[f].1).unwrap();
            let np = if rng.random_bool(0.7) {
                (p + if rng.random_bool(0.5) { 1 } else { m - 1 }) % m
            } else {
                rng.random_range(0..m)
            };
            if cyc[np] == cand.per_face[f].0 {
                continue;
            }
            cand.per_face[f].1 = cyc[np];
        } else {
            let p = graph.cycle_position(f as u16, cand.per_face[f].0).unwrap();
            let np = (p + if rng.random_bool(0.5) { 1 } else { m - 1 }) % m;
            if cyc[np] == cand.per_face[f].1 {
                continue;
            }
            cand.per_face[f].0 = cyc[np];
        }
        let (sc, blame) = score(&cand);
        if e % 2000 == 0 {
            eprintln!("  repair e={e} cur={cur:.1}");
        }
        let accept = sc >= cur
            || (temp > 0.0 && rng.random_bool(((sc - cur) / temp.max(0.05)).exp().min(1.0)));
        if accept {
            cur = sc;
            cur_blame = blame;
            cur_sk = cand;
            if let Some(ms) = min_steps(graph, lat, &cur_sk) {
                if best_valid.as_ref().map_or(true, |(_, b)| ms > *b) {
                    best_valid = Some((cur_sk.clone(), ms));
                    if ms >= target {
                        break;
                    }
                }
            }
        }
    }
    best_valid
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let budget: u64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(4000);
    // P_1: the annealed n=13 skeleton with min-steps 14
    let p1_json: serde_json::Value = serde_json::from_str(
        r#"{"per_face":[[1,6],[1,24],[0,29],[2,37],[3,48],[14,52],[5,56],[16,55],[17,55],[18,47],[19,48],[19,64],[1,10]]}"#,
    )
    .unwrap();
    let mut sk = OrientationSkeleton::from_json(&p1_json).unwrap();
    let mut graph = Arc::new(build_dual_cyclic(13).unwrap());
    let mut lat = face_lattice(&graph).unwrap();
    let mut prev = min_steps(&graph, &lat, &sk).unwrap();
    println!("k=1: min-steps {prev}");
    for k in 2..=5u16 {
        let n_old = 12 * (k - 1) + 1;
        let n = 12 * k + 1;
        let new_graph = Arc::new(build_dual_cyclic(n).unwrap());
        let new_lat = face_lattice(&new_graph).unwrap();
        let inserted = insert_block(&graph, &new_graph, &sk, n_old).expect("insertion");
        let direct = min_steps(&new_graph, &new_lat, &inserted);
        match orient_from_skeleton(&new_graph, &inserted) {
            Err(e) => println!("k={k}: insertion conflict: {e}"),
            Ok(o) => {
                let bad: usize = new_graph
                    .all_two_faces()
                    .iter()
                    .map(|(_, cyc)| {
                        let m = cyc.len();
                        let sinks = (0..m)
                            .filter(|&p| {
                                let v = cyc[p];
                                o.arc(cyc[(p + m - 1) % m], v) && o.arc(cyc[(p + 1) % m], v)
                            })
                            .count();
                        usize::from(sinks != 1)
                    })
                    .sum();
                println!("k={k}: insertion: {bad} bad 2-faces, auso={}", o.is_auso());
            }
        }
        println!("k={k}: after insertion valid={:?}", direct);
        let target = prev + 12;
        let repaired = repair_and_improve(&new_graph, &new_lat, &inserted, target, budget, 1000 + k as u64);
        match repaired {
            None => {
                println!("k={k}: repair failed");
                return;
            }
            Some((sk2, ms)) => {
                println!("k={k}: min-steps {ms} (target {target})");
                sk = sk2;
                graph = new_graph;
                lat = new_lat;
                prev = ms;
            }
        }
    }
}
