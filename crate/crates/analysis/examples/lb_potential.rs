//! Dev harness: orientations induced by injective vertex potentials over the
//! (min, max) triangle; serpentine designs aiming at quadratic random facet
//! cost.

use std::sync::Arc;

use dcp_core::orientation::Orientation;
use dcp_core::pivot::FacetEngine;
use dcp_core::polytope::{build_dual_cyclic, face_lattice, PolytopeGraph};

/// Orient every edge from higher to lower potential. Ties are broken by
/// vertex id (still acyclic).
fn orient_by_potential(
    graph: &Arc<PolytopeGraph>,
    psi: impl Fn(&PolytopeGraph, usize) -> i64,
) -> Orientation {
    let vals: Vec<(i64, usize)> = (0..graph.vertex_count())
        .map(|v| (psi(graph, v), v))
        .collect();
    let forward: Vec<bool> = graph
        .edges
        .iter()
        .map(|&(u, v)| vals[u] > vals[v])
        .collect();
    Orientation::new(Arc::clone(graph), forward).unwrap()
}

fn report(name: &str, psi: impl Fn(&PolytopeGraph, usize) -> i64 + Copy) {
    print!("{name:30}");
    for k in 1..=5u16 {
        let n = 12 * k + 1;
        let graph = Arc::new(build_dual_cyclic(n).unwrap());
        let o = orient_by_potential(&graph, psi);
        if !o.is_auso() {
            print!("  k={k}: not-auso");
            continue;
        }
        let lat = face_lattice(&graph).unwrap();
        let q = o.global_source().unwrap();
        let mut eng = FacetEngine::new(&o, &lat).unwrap();
        let ms = eng.min_steps(q, true).unwrap();
        print!("  k={k}: {ms:3}");
    }
    println!();
}

fn main() {
    let a = 1_000_000i64;

    // plain serpentine over rows (max = row)
    report("serpentine rows", move |g, v| {
        let (mn, mx) = (g.vertices[v].min_coord as i64, g.vertices[v].max_coord as i64);
        a * mx + if mx % 2 == 0 { mn } else { -mn }
    });

    // serpentine over columns (min = column)
    report("serpentine cols", move |g, v| {
        let (mn, mx) = (g.vertices[v].min_coord as i64, g.vertices[v].max_coord as i64);
        -(a * mn) + if mn % 2 == 0 { mx } else { -mx }
    });

    // block serpentine: rows grouped in blocks of 12; within a block rows
    // alternate; blocks descend
    report("block serpentine", move |g, v| {
        let (mn, mx) = (g.vertices[v].min_coord as i64, g.vertices[v].max_coord as i64);
        let block = mx / 12;
        let within = mx % 12;
        a * a * block + a * within + if within % 2 == 0 { mn } else { -mn }
    });

    // anti-diagonal serpentine: levels by (max - min), snake along levels
    report("antidiag serpentine", move |g, v| {
        let (mn, mx) = (g.vertices[v].min_coord as i64, g.vertices[v].max_coord as i64);
        let lev = mx - mn;
        a * lev + if lev % 2 == 0 { mn } else { -mn }
    });

    // diagonal-distance serpentine: levels by min+max
    report("sum serpentine", move |g, v| {
        let (mn, mx) = (g.vertices[v].min_coord as i64, g.vertices[v].max_coord as i64);
        let lev = mn + mx;
        a * lev + if lev % 2 == 0 { mn } else { -mn }
    });
}
