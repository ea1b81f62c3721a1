//! Orientations induced by generic linear functionals on a realization.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::orientation::Orientation;
use crate::polytope::{rat, PolytopeGraph, Rat, Realization};

/// A rational linear functional, generic on a given realization: no two
/// adjacent vertices share a value.
#[derive(Debug, Clone)]
pub struct LinearFunctional {
    pub coeffs: [Rat; 4],
}

impl LinearFunctional {
    pub fn from_ints(c: [i64; 4]) -> Self {
        LinearFunctional {
            coeffs: [rat(c[0]), rat(c[1]), rat(c[2]), rat(c[3])],
        }
    }

    pub fn negated(&self) -> Self {
        LinearFunctional {
            coeffs: std::array::from_fn(|i| -self.coeffs[i].clone()),
        }
    }
}

/// Orient every edge from the higher to the lower functional value.
/// A tie on any edge is a genericity failure; the caller should re-draw.
pub fn orient_linear(
    graph: &Arc<PolytopeGraph>,
    realization: &Realization,
    functional: &LinearFunctional,
) -> Result<Orientation> {
    let values: Vec<Rat> = (0..graph.vertex_count())
        .map(|v| realization.functional_value(&functional.coeffs, v))
        .collect();
    let mut forward = Vec::with_capacity(graph.edge_count());
    for &(u, v) in &graph.edges {
        match values[u].cmp(&values[v]) {
            std::cmp::Ordering::Greater => forward.push(true),
            std::cmp::Ordering::Less => forward.push(false),
            std::cmp::Ordering::Equal => return Err(Error::Genericity(u, v)),
        }
    }
    Orientation::new(Arc::clone(graph), forward)
}

/// Draw seeded random integer functionals until one is generic, and return
/// the induced orientation. Deterministic in (seed).
pub fn random_generic_orientation(
    graph: &Arc<PolytopeGraph>,
    realization: &Realization,
    seed: u64,
) -> Result<(Orientation, LinearFunctional)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let c: [i64; 4] = std::array::from_fn(|_| rng.random_range(-1_000_000..=1_000_000));
        if c == [0, 0, 0, 0] {
            continue;
        }
        let functional = LinearFunctional::from_ints(c);
        match orient_linear(graph, realization, &functional) {
            Ok(o) => return Ok((o, functional)),
            Err(Error::Genericity(_, _)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Internal(
        "no generic functional found in 64 draws".into(),
    ))
}
