//! Seeded Monte Carlo simulation of both pivot rules, used as a statistical
//! oracle against the exact engines.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::orientation::Orientation;
use crate::polytope::FaceLattice;

/// Summary statistics of simulated trajectories.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryStats {
    pub samples: u64,
    pub mean: f64,
    pub variance: f64,
    pub min: u64,
    pub max: u64,
    pub seed: u64,
}

fn stats_from_counts(counts: &[u64], seed: u64) -> TrajectoryStats {
    let n = counts.len() as u64;
    let sum: u128 = counts.iter().map(|&c| c as u128).sum();
    let sumsq: u128 = counts.iter().map(|&c| (c as u128) * (c as u128)).sum();
    let mean = sum as f64 / n as f64;
    let variance = if n > 1 {
        (sumsq as f64 - (sum as f64) * mean) / (n as f64 - 1.0)
    } else {
        0.0
    };
    TrajectoryStats {
        samples: n,
        mean,
        variance,
        min: counts.iter().copied().min().unwrap_or(0),
        max: counts.iter().copied().max().unwrap_or(0),
        seed,
    }
}

/// Simulate random edge walks: choose an out-arc uniformly at every step
/// until the global sink. Reproducible from the seed.
pub fn random_edge_monte_carlo(
    o: &Orientation,
    start: usize,
    samples: u64,
    seed: u64,
) -> Result<TrajectoryStats> {
    if samples == 0 {
        return Err(Error::InvalidInput("samples must be >= 1".into()));
    }
    if !o.is_auso() {
        return Err(Error::NotAuso("monte carlo needs an AUSO".into()));
    }
    let sink = o.global_sink()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = Vec::with_capacity(samples as usize);
    for _ in 0..samples {
        let mut v = start;
        let mut steps = 0u64;
        while v != sink {
            let outs: Vec<usize> = o.out_neighbors(v).collect();
            v = outs[rng.random_range(0..outs.len())];
            steps += 1;
        }
        counts.push(steps);
    }
    Ok(stats_from_counts(&counts, seed))
}

/// Simulate the actual recursive random facet process with an explicit stack
/// of nested faces. Counts one step per arc traversal; facet choices are
/// free.
pub fn random_facet_monte_carlo(
    o: &Orientation,
    lat: &FaceLattice,
    start: usize,
    samples: u64,
    seed: u64,
) -> Result<TrajectoryStats> {
    if samples == 0 {
        return Err(Error::InvalidInput("samples must be >= 1".into()));
    }
    if !o.is_auso() {
        return Err(Error::NotAuso("monte carlo needs an AUSO".into()));
    }
    let mut sinks: Vec<Option<usize>> = vec![None; lat.faces.len()];
    let mut face_sink = |faces: &FaceLattice, o: &Orientation, f: usize| -> usize {
        if let Some(s) = sinks[f] {
            return s;
        }
        let s = o.induced_sink(&faces.faces[f].vertices).expect("AUSO face sink");
        sinks[f] = Some(s);
        s
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = Vec::with_capacity(samples as usize);
    for _ in 0..samples {
        let mut steps = 0u64;
        let mut v = start;
        // stack of faces we are solving, innermost last
        let mut stack = vec![lat.top];
        while let Some(&face) = stack.last() {
            if face_sink(lat, o, face) == v {
                stack.pop();
                continue;
            }
            let verts = &lat.faces[face].vertices;
            let within: Vec<usize> = o
                .out_neighbors(v)
                .filter(|w| verts.binary_search(w).is_ok())
                .collect();
            if lat.faces[face].dim == 1 || within.len() == 1 {
                v = within[0];
                steps += 1;
            } else {
                let children = lat.children_at(face, v);
                let g = children[rng.random_range(0..children.len())];
                stack.push(g);
            }
        }
        counts.push(steps);
    }
    Ok(stats_from_counts(&counts, seed))
}
