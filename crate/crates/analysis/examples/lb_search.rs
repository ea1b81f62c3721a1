//! Dev harness for the lower-bound family: baseline statistics and a
//! hill-climbing search over orientation skeletons maximizing the best-case
//! random facet step count from the global source.

use std::sync::Arc;

use dcp_core::orientation::{
    extract_skeleton, orient_from_skeleton, random_generic_orientation, Orientation,
    OrientationSkeleton,
};
use dcp_core::pivot::FacetEngine;
use dcp_core::polytope::{build_dual_cyclic, face_lattice, realize_dual_cyclic, FaceLattice, PolytopeGraph};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn min_steps_from_source(o: &Orientation, lat: &FaceLattice) -> Option<u64> {
    if !o.is_auso() {
        return None;
    }
    let q = o.global_source().ok()?;
    let mut eng = FacetEngine::new(o, lat).ok()?;
    eng.min_steps(q, true).ok()
}

fn describe(graph: &PolytopeGraph, o: &Orientation) {
    let sk = extract_skeleton(o).unwrap();
    println!("  face: (source coords) -> (sink coords)");
    for (i, &(src, snk)) in sk.per_face.iter().enumerate() {
        let s = &graph.vertices[src];
        let t = &graph.vertices[snk];
        println!(
            "  F{:<2} ({:>2},{:>2}) -> ({:>2},{:>2})",
            i, s.min_coord, s.max_coord, t.min_coord, t.max_coord
        );
    }
    let q = o.global_source().unwrap();
    let s = o.global_sink().unwrap();
    println!(
        "  q=({},{})  sink=({},{})",
        graph.vertices[q].min_coord,
        graph.vertices[q].max_coord,
        graph.vertices[s].min_coord,
        graph.vertices[s].max_coord
    );
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: u16 = args.first().and_then(|s| s.parse().ok()).unwrap_or(13);
    let budget: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let graph = Arc::new(build_dual_cyclic(n).unwrap());
    let lat = face_lattice(&graph).unwrap();
    let real = realize_dual_cyclic(&graph).unwrap();

    // baseline: random linear AUSOs
    let mut best_random = 0;
    let mut sum = 0u64;
    let trials = 60;
    for seed in 0..trials {
        let (o, _) = random_generic_orientation(&graph, &real, seed).unwrap();
        let ms = min_steps_from_source(&o, &lat).unwrap();
        best_random = best_random.max(ms);
        sum += ms;
    }
    println!(
        "baseline n={n}: random linear AUSOs min-steps avg {:.2}, max {best_random}",
        sum as f64 / trials as f64
    );

    // simulated annealing from several random starts
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut global_best: Option<(u64, OrientationSkeleton)> = None;
    for restart in 0..10 {
        let (o, _) = random_generic_orientation(&graph, &real, 1000 + restart).unwrap();
        let mut cur_sk = extract_skeleton(&o).unwrap();
        let mut cur = min_steps_from_source(&o, &lat).unwrap();
        let mut best = cur;
        let mut best_sk = cur_sk.clone();
        let mut evals = 0u64;
        while evals < budget {
            evals += 1;
            let temp = 2.0 * (1.0 - evals as f64 / budget as f64);
            let f = rng.random_range(0..graph.large_face_count());
            let cyc = &graph.large_faces[f].cycle;
            let m = cyc.len();
            let (src, snk) = cur_sk.per_face[f];
            // local move: shift source or sink by one boundary step, or jump
            let mut cand_pair = (src, snk);
            match rng.random_range(0..6) {
                0 | 1 => {
                    let p = graph.cycle_position(f as u16, snk).unwrap();
                    let d = if rng.random_bool(0.5) { 1 } else { m - 1 };
                    cand_pair.1 = cyc[(p + d) % m];
                }
                2 | 3 => {
                    let p = graph.cycle_position(f as u16, src).unwrap();
                    let d = if rng.random_bool(0.5) { 1 } else { m - 1 };
                    cand_pair.0 = cyc[(p + d) % m];
                }
                4 => cand_pair.1 = cyc[rng.random_range(0..m)],
                _ => cand_pair.0 = cyc[rng.random_range(0..m)],
            }
            if cand_pair.0 == cand_pair.1 {
                continue;
            }
            let mut cand = cur_sk.clone();
            cand.per_face[f] = cand_pair;
            let Ok(o2) = orient_from_skeleton(&graph, &cand) else {
                continue;
            };
            let Some(ms) = min_steps_from_source(&o2, &lat) else {
                continue;
            };
            let accept = ms >= cur || {
                let delta = cur as f64 - ms as f64;
                temp > 0.0 && rng.random_bool((-delta / temp.max(0.05)).exp().min(1.0))
            };
            if accept {
                cur = ms;
                cur_sk = cand;
                if cur > best {
                    best = cur;
                    best_sk = cur_sk.clone();
                }
            }
        }
        println!("restart {restart}: best min-steps {best}");
        if global_best.as_ref().map_or(true, |(b, _)| best > *b) {
            global_best = Some((best, best_sk));
        }
    }
    let (best, sk) = global_best.unwrap();
    println!("=== best over restarts: {best} ===");
    let o = orient_from_skeleton(&graph, &sk).unwrap();
    describe(&graph, &o);
    println!("{}", serde_json::to_string(&sk.to_json()).unwrap());
}
