//! Dev harness: how slow can random facet be on *linear* orientations, over
//! random and structured functionals?

use std::sync::Arc;

use dcp_core::orientation::{orient_linear, LinearFunctional};
use dcp_core::pivot::FacetEngine;
use dcp_core::polytope::{build_dual_cyclic, face_lattice, realize_dual_cyclic};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let trials: u64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(300);
    for n in [13u16, 25, 37] {
        let graph = Arc::new(build_dual_cyclic(n).unwrap());
        let lat = face_lattice(&graph).unwrap();
        let real = realize_dual_cyclic(&graph).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut best = 0u64;
        let mut best_c = [0i64; 4];
        for _ in 0..trials {
            let mag = [
                10i64.pow(rng.random_range(0..6)),
                10i64.pow(rng.random_range(0..6)),
                10i64.pow(rng.random_range(0..6)),
                10i64.pow(rng.random_range(0..6)),
            ];
            let c: [i64; 4] = std::array::from_fn(|i| {
                mag[i] * if rng.random_bool(0.5) { 1 } else { -1 }
                    * rng.random_range(1..10)
            });
            let f = LinearFunctional::from_ints(c);
            let Ok(o) = orient_linear(&graph, &real, &f) else {
                continue;
            };
            if !o.is_auso() {
                continue;
            }
            let q = o.global_source().unwrap();
            let mut eng = FacetEngine::new(&o, &lat).unwrap();
            let ms = eng.min_steps(q, true).unwrap();
            if ms > best {
                best = ms;
                best_c = c;
            }
        }
        println!("n={n}: best linear min-steps {best} at c={best_c:?}");
    }
}
