//! Dev harness: anneal the sink designations with corner sources fixed,
//! optionally seeding sinks from a stagger pattern, printing the best sink
//! vector per size.

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

fn corner_sources(graph: &PolytopeGraph, n: u16) -> Vec<usize> {
    (0..n)
        .map(|i| {
            if i == 0 {
                v2(graph, n, 0, n - 3).unwrap()
            } else if i == n - 2 || i == n - 1 {
                v2(graph, n, 0, n - 2).unwrap()
            } else {
                v2(graph, n, i, n - 1).unwrap()
            }
        })
        .collect()
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

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: u16 = args.first().and_then(|s| s.parse().ok()).unwrap_or(13);
    let budget: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(20000);
    let restarts: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(10);
    let graph = Arc::new(build_dual_cyclic(n).unwrap());
    let lat = face_lattice(&graph).unwrap();
    let _sources = corner_sources(&graph, n);

    // seed skeleton from file when given
    let seed_sk: Option<OrientationSkeleton> = args.get(3).map(|path| {
        let txt = std::fs::read_to_string(path).unwrap();
        OrientationSkeleton::from_json(&serde_json::from_str(&txt).unwrap()).unwrap()
    });

    let mut best_global: Option<(u64, OrientationSkeleton)> = None;
    for restart in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + restart);
        let mut sk = match &seed_sk {
            Some(s0) => s0.clone(),
            None => {
                // start from a random linear AUSO's skeleton
                let real = dcp_core::polytope::realize_dual_cyclic(&graph).unwrap();
                let (o, _) = dcp_core::orientation::random_generic_orientation(
                    &graph,
                    &real,
                    5000 + restart,
                )
                .unwrap();
                dcp_core::orientation::extract_skeleton(&o).unwrap()
            }
        };
        let mut cur = min_steps(&graph, &lat, &sk).unwrap();
        let mut best = cur;
        let mut best_sk = sk.clone();
        for e in 0..budget {
            let temp = 2.5 * (1.0 - e as f64 / budget as f64);
            let f = rng.random_range(0..n as usize);
            let cyc = &graph.large_faces[f].cycle;
            let m = cyc.len();
            let mut cand = sk.clone();
            if rng.random_bool(0.8) {
                // move the sink: one step or jump
                let snk = cand.per_face[f].1;
                let p = graph.cycle_position(f as u16, snk).unwrap();
                let new_snk = if rng.random_bool(0.7) {
                    let d = if rng.random_bool(0.5) { 1 } else { m - 1 };
                    cyc[(p + d) % m]
                } else {
                    cyc[rng.random_range(0..m)]
                };
                if new_snk == cand.per_face[f].0 {
                    continue;
                }
                cand.per_face[f].1 = new_snk;
            } else {
                let src = cand.per_face[f].0;
                let p = graph.cycle_position(f as u16, src).unwrap();
                let d = if rng.random_bool(0.5) { 1 } else { m - 1 };
                let new_src = cyc[(p + d) % m];
                if new_src == cand.per_face[f].1 {
                    continue;
                }
                cand.per_face[f].0 = new_src;
            }
            let Some(ms) = min_steps(&graph, &lat, &cand) else {
                continue;
            };
            let accept = ms >= cur || {
                let delta = cur as f64 - ms as f64;
                temp > 0.0 && rng.random_bool((-delta / temp.max(0.05)).exp().min(1.0))
            };
            if accept {
                cur = ms;
                sk = cand;
                if cur > best {
                    best = cur;
                    best_sk = sk.clone();
                }
            }
        }
        println!("restart {restart}: {best}");
        if best_global.as_ref().map_or(true, |(b, _)| best > *b) {
            best_global = Some((best, best_sk));
        }
    }
    let (best, sk) = best_global.unwrap();
    println!("=== n={n} best {best} ===");
    for (i, &(src, snk)) in sk.per_face.iter().enumerate() {
        let s = &graph.vertices[src];
        let t = &graph.vertices[snk];
        println!(
            "F{:<2} src({:>2},{:>2}) snk({:>2},{:>2})",
            i, s.min_coord, s.max_coord, t.min_coord, t.max_coord
        );
    }
    println!("{}", serde_json::to_string(&sk.to_json()).unwrap());
}
