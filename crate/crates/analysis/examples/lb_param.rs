//! Dev harness: closed-form skeleton rules for the hard family, evaluated
//! over k = 1..K.

use std::sync::Arc;

use dcp_core::orientation::{orient_from_skeleton, OrientationSkeleton};
use dcp_core::pivot::FacetEngine;
use dcp_core::polytope::{build_dual_cyclic, face_lattice, PolytopeGraph};

/// vertex (a, b) as a facet 4-set {a, a+1, b, b+1 mod n}
fn v2(graph: &PolytopeGraph, n: u16, a: u16, b: u16) -> Option<usize> {
    let mut fs = [a % n, (a + 1) % n, b % n, (b + 1) % n];
    fs.sort_unstable();
    if fs.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    graph.vertex_by_facets(&fs)
}

/// the diagonal vertex with facet run {a, a+1, a+2, a+3}
fn diag(graph: &PolytopeGraph, n: u16, a: u16) -> Option<usize> {
    v2(graph, n, a, a + 2)
}

fn eval(name: &str, rule: impl Fn(&PolytopeGraph, u16, u16) -> Option<OrientationSkeleton>) {
    print!("{name:24}");
    for k in 1..=4u16 {
        let n = 12 * k + 1;
        let graph = Arc::new(build_dual_cyclic(n).unwrap());
        let Some(sk) = rule(&graph, n, k) else {
            print!("  k={k}: rule-fail");
            continue;
        };
        match orient_from_skeleton(&graph, &sk) {
            Err(_) => print!("  k={k}: conflict"),
            Ok(o) => {
                if !o.is_auso() {
                    print!("  k={k}: not-auso");
                } else {
                    let lat = face_lattice(&graph).unwrap();
                    let q = o.global_source().unwrap();
                    let mut eng = FacetEngine::new(&o, &lat).unwrap();
                    let ms = eng.min_steps(q, true).unwrap();
                    print!("  k={k}: {ms}");
                }
            }
        }
    }
    println!();
}

fn main() {
    // Rule family A: sources at the far corner (i, n-1)-ish; sinks at
    // (i, sigma(i)) for i below the center, (tau(i), i) above.
    // sigma/tau staggered by blocks of 12.
    for stride in [4u16, 6, 8, 10, 12] {
        eval(&format!("stagger stride={stride}"), move |g, n, _k| {
            let c = n / 2; // center face
            let mut per_face = Vec::new();
            for i in 0..n {
                let src = if i == 0 {
                    v2(g, n, 0, n - 3)?
                } else if i == n - 2 || i == n - 1 {
                    v2(g, n, 0, n - 2)? // the wrap vertex {0,1,n-2,n-1}
                } else {
                    // far corner of F_i: pairs {i,i+1} and {n-1,0}
                    v2(g, n, i, n - 1)?
                };
                let snk = if i + 2 <= c + 1 {
                    // sink on the horizontal run, stride past the diagonal
                    let b = (i + stride).min(c);
                    if b >= i + 2 {
                        v2(g, n, i, b)?
                    } else {
                        diag(g, n, i)?
                    }
                } else if i >= c + 2 {
                    let a = i.saturating_sub(stride).max(c);
                    if a + 2 <= i {
                        v2(g, n, a, i)?
                    } else {
                        diag(g, n, i - 2)?
                    }
                } else {
                    diag(g, n, c - 1)?
                };
                if src == snk {
                    return None;
                }
                per_face.push((src, snk));
            }
            Some(OrientationSkeleton { per_face })
        });
    }
}
