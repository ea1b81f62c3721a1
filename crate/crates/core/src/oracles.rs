//! Independent reference implementations used as test oracles.
//!
//! These deliberately avoid the data structures and shortcuts of the
//! production engines: trajectory enumeration instead of flows, plain
//! recursion instead of memo tables. They are exponential and only meant for
//! small instances.

use num_traits::Zero;

use crate::error::Result;
use crate::orientation::Orientation;
use crate::polytope::{rat, FaceLattice, Rat};

/// Expected random edge length by enumerating every trajectory with its
/// probability.
pub fn random_edge_brute_force(o: &Orientation, start: usize) -> Result<Rat> {
    let sink = o.global_sink()?;
    fn walk(o: &Orientation, v: usize, sink: usize, prob: Rat, len: u64, acc: &mut Rat) {
        if v == sink {
            *acc += prob * rat(len as i64);
            return;
        }
        let outs: Vec<usize> = o.out_neighbors(v).collect();
        let share = prob / rat(outs.len() as i64);
        for w in outs {
            walk(o, w, sink, share.clone(), len + 1, acc);
        }
    }
    let mut acc = Rat::zero();
    walk(o, start, sink, rat(1), 0, &mut acc);
    Ok(acc)
}

/// Expected random facet steps by plain recursion over the rule, without
/// memoization. Choices whose sub-problem starts at its own sink loop back
/// to the same state at zero cost, so the average runs over the progressing
/// choices.
pub fn random_facet_brute_force(o: &Orientation, lat: &FaceLattice, start: usize) -> Result<Rat> {
    fn sink_of(o: &Orientation, lat: &FaceLattice, f: usize) -> usize {
        o.induced_sink(&lat.faces[f].vertices).expect("face sink")
    }
    fn eval(o: &Orientation, lat: &FaceLattice, v: usize, face: usize) -> Rat {
        if sink_of(o, lat, face) == v {
            return Rat::zero();
        }
        let verts = &lat.faces[face].vertices;
        let within: Vec<usize> = o
            .out_neighbors(v)
            .filter(|w| verts.binary_search(w).is_ok())
            .collect();
        if lat.faces[face].dim == 1 || within.len() == 1 {
            return rat(1) + eval(o, lat, within[0], face);
        }
        let mut sum = Rat::zero();
        let mut used = 0i64;
        for g in lat.children_at(face, v) {
            let sg = sink_of(o, lat, g);
            if sg == v {
                continue;
            }
            used += 1;
            sum += eval(o, lat, v, g) + eval(o, lat, sg, face);
        }
        sum / rat(used)
    }
    Ok(eval(o, lat, start, lat.top))
}
