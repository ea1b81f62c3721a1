//! Exact expected pivot counts for the random edge rule.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::orientation::Orientation;
use crate::polytope::{rat, Rat};

/// The trajectory distribution of random edge from a fixed start: a value-1
/// flow from the start to the global sink splitting inflow uniformly over
/// the out-arcs of every vertex.
#[derive(Debug, Clone)]
pub struct RandomPathFlow {
    pub start: usize,
    /// Probability mass per arc (tail, head); absent arcs carry 0.
    pub arc_mass: HashMap<(usize, usize), Rat>,
    /// Sum of all arc masses = exact expected number of pivot steps.
    pub expected_length: Rat,
}

/// Push one unit of mass from `start` through the DAG in topological order.
pub fn random_edge_expected(o: &Orientation, start: usize) -> Result<RandomPathFlow> {
    if start >= o.graph.vertex_count() {
        return Err(Error::InvalidInput(format!("start {start} is not a vertex")));
    }
    if !o.is_auso() {
        return Err(Error::NotAuso("random edge needs an AUSO".into()));
    }
    let order = o.topo_order()?;
    let mut inflow: Vec<Rat> = vec![Rat::zero(); o.graph.vertex_count()];
    inflow[start] = Rat::one();
    let mut arc_mass = HashMap::new();
    let mut expected_length = Rat::zero();
    let sink = o.global_sink()?;
    for &v in order {
        if inflow[v].is_zero() || v == sink {
            continue;
        }
        let outs: Vec<usize> = o.out_neighbors(v).collect();
        let share = &inflow[v] / rat(outs.len() as i64);
        for w in outs {
            inflow[w] += &share;
            expected_length += &share;
            arc_mass.insert((v, w), share.clone());
        }
    }
    Ok(RandomPathFlow {
        start,
        arc_mass,
        expected_length,
    })
}

/// E(v) for every start in one reverse-topological sweep:
/// E(sink) = 0, otherwise E(v) = 1 + mean of E over out-neighbors.
pub fn random_edge_all_starts(o: &Orientation) -> Result<Vec<Rat>> {
    if !o.is_auso() {
        return Err(Error::NotAuso("random edge needs an AUSO".into()));
    }
    let order = o.topo_order()?;
    let mut e: Vec<Rat> = vec![Rat::zero(); o.graph.vertex_count()];
    for &v in order.iter().rev() {
        let outs: Vec<usize> = o.out_neighbors(v).collect();
        if outs.is_empty() {
            continue; // the global sink
        }
        let mut sum = Rat::zero();
        for &w in &outs {
            sum += &e[w];
        }
        e[v] = BigRational::one() + sum / rat(outs.len() as i64);
    }
    Ok(e)
}

/// Check the flow invariants arc by arc: conservation at every vertex except
/// the start (+1) and the global sink (-1), equal split of inflow over
/// out-arcs, all masses in [0, 1].
pub fn verify_flow(o: &Orientation, flow: &RandomPathFlow) -> Result<()> {
    let nv = o.graph.vertex_count();
    let sink = o.global_sink()?;
    let one = Rat::one();
    let zero = Rat::zero();
    let mut influx: Vec<Rat> = vec![Rat::zero(); nv];
    let mut outflux: Vec<Rat> = vec![Rat::zero(); nv];
    for (&(u, v), mass) in &flow.arc_mass {
        if !o.arc(u, v) {
            return Err(Error::Internal(format!("flow uses non-arc ({u},{v})")));
        }
        if mass < &zero || mass > &one {
            return Err(Error::Internal(format!("mass {mass} outside [0,1]")));
        }
        influx[v] += mass;
        outflux[u] += mass;
    }
    for v in 0..nv {
        let balance = &outflux[v] - &influx[v];
        let expected = if v == flow.start && v == sink {
            zero.clone()
        } else if v == flow.start {
            one.clone()
        } else if v == sink {
            -one.clone()
        } else {
            zero.clone()
        };
        if balance != expected {
            return Err(Error::Internal(format!(
                "conservation fails at {v}: balance {balance}"
            )));
        }
        // equal split over out-arcs
        let outs: Vec<usize> = o.out_neighbors(v).collect();
        if !outs.is_empty() && !outflux[v].is_zero() {
            let share = &outflux[v] / rat(outs.len() as i64);
            for &w in &outs {
                let m = flow.arc_mass.get(&(v, w)).cloned().unwrap_or_else(Rat::zero);
                if m != share {
                    return Err(Error::Internal(format!(
                        "non-uniform split at {v}: arc to {w} carries {m}, share is {share}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Length of the shortest directed path from `start` to the global sink.
pub fn directed_height(o: &Orientation, start: usize) -> Result<u64> {
    if !o.is_auso() {
        return Err(Error::NotAuso("height needs an AUSO".into()));
    }
    let sink = o.global_sink()?;
    let mut dist: Vec<Option<u64>> = vec![None; o.graph.vertex_count()];
    dist[start] = Some(0);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        if v == sink {
            return Ok(dist[v].unwrap());
        }
        for w in o.out_neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(dist[v].unwrap() + 1);
                queue.push_back(w);
            }
        }
    }
    Err(Error::Internal(
        "global sink unreachable; not an AUSO".into(),
    ))
}
