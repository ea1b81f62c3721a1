//! The recursive random facet rule of Gärtner, Henk and Ziegler:
//! at a 1-vertex follow the unique outgoing edge of the current face,
//! otherwise recurse into a uniformly chosen sub-facet through the vertex.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::orientation::Orientation;
use crate::polytope::{rat, FaceLattice, Rat};

/// Memoized evaluator for expected and best-case pivot counts of random
/// facet. Memo tables are keyed by (vertex, face) and never shared between
/// computations.
pub struct FacetEngine<'a> {
    o: &'a Orientation,
    lat: &'a FaceLattice,
    memo_expected: HashMap<(usize, usize), Rat>,
    memo_min: HashMap<(usize, usize), u64>,
    sinks: Vec<Option<usize>>,
}

impl<'a> FacetEngine<'a> {
    pub fn new(o: &'a Orientation, lat: &'a FaceLattice) -> Result<Self> {
        if !o.is_auso() {
            return Err(Error::NotAuso("random facet needs an AUSO".into()));
        }
        Ok(FacetEngine {
            o,
            lat,
            memo_expected: HashMap::new(),
            memo_min: HashMap::new(),
            sinks: vec![None; lat.faces.len()],
        })
    }

    /// Unique sink of the induced orientation on a face, cached.
    pub fn face_sink(&mut self, face: usize) -> Result<usize> {
        if let Some(s) = self.sinks[face] {
            return Ok(s);
        }
        let s = self.o.induced_sink(&self.lat.faces[face].vertices)?;
        self.sinks[face] = Some(s);
        Ok(s)
    }

    fn out_degree_within(&self, v: usize, face: usize) -> usize {
        let verts = &self.lat.faces[face].vertices;
        self.o
            .out_neighbors(v)
            .filter(|w| verts.binary_search(w).is_ok())
            .count()
    }

    fn unique_out_within(&self, v: usize, face: usize) -> usize {
        let verts = &self.lat.faces[face].vertices;
        self.o
            .out_neighbors(v)
            .find(|w| verts.binary_search(w).is_ok())
            .expect("1-vertex has an out-arc")
    }

    /// Exact expected number of pivot steps of random facet started at
    /// `start` on the whole polytope.
    pub fn expected(&mut self, start: usize) -> Result<Rat> {
        self.expected_within(start, self.lat.top)
    }

    /// E(v, F): 0 at the face sink; 1 + E(w, F) at a 1-vertex of F; otherwise
    /// the uniform average over sub-facets g of F through v of
    /// E(v, g) + E(sink(g), F). A choice whose sub-problem starts at its own
    /// sink contributes 0 steps and returns control, which resolves to the
    /// renormalized average over the remaining choices.
    pub fn expected_within(&mut self, v: usize, face: usize) -> Result<Rat> {
        if let Some(r) = self.memo_expected.get(&(v, face)) {
            return Ok(r.clone());
        }
        let result = self.expected_uncached(v, face)?;
        self.memo_expected.insert((v, face), result.clone());
        Ok(result)
    }

    fn expected_uncached(&mut self, v: usize, face: usize) -> Result<Rat> {
        if self.face_sink(face)? == v {
            return Ok(Rat::zero());
        }
        let dim = self.lat.faces[face].dim;
        if dim == 1 || self.out_degree_within(v, face) == 1 {
            let w = self.unique_out_within(v, face);
            return Ok(rat(1) + self.expected_within(w, face)?);
        }
        let children = self.lat.children_at(face, v);
        debug_assert_eq!(children.len(), dim as usize);
        let mut skipped = 0usize;
        let mut sum = Rat::zero();
        for g in &children {
            let sg = self.face_sink(*g)?;
            if sg == v {
                // zero-step excursion back to the same state
                skipped += 1;
                continue;
            }
            sum += self.expected_within(v, *g)? + self.expected_within(sg, face)?;
        }
        let effective = children.len() - skipped;
        debug_assert!(effective > 0, "non-sink vertex must make progress");
        Ok(sum / rat(effective as i64))
    }

    /// Minimum number of pivot steps over all random choices; the quantity
    /// the lower-bound family controls. With `one_vertex_rule` disabled the
    /// recursion always chooses among sub-facets, which models any recursive
    /// pivot rule proceeding via incident facets.
    pub fn min_steps(&mut self, start: usize, one_vertex_rule: bool) -> Result<u64> {
        // Separate memo namespaces for the two rule variants.
        if one_vertex_rule {
            self.min_within(start, self.lat.top, true)
        } else {
            self.memo_min.clear();
            let r = self.min_within(start, self.lat.top, false);
            self.memo_min.clear();
            r
        }
    }

    /// Best-case steps of the sub-problem at `v` restricted to `face`,
    /// under the 1-vertex rule.
    pub fn min_steps_within(&mut self, v: usize, face: usize) -> Result<u64> {
        self.min_within(v, face, true)
    }

    fn min_within(&mut self, v: usize, face: usize, rule: bool) -> Result<u64> {
        if let Some(&r) = self.memo_min.get(&(v, face)) {
            return Ok(r);
        }
        let result = self.min_uncached(v, face, rule)?;
        self.memo_min.insert((v, face), result);
        Ok(result)
    }

    fn min_uncached(&mut self, v: usize, face: usize, rule: bool) -> Result<u64> {
        if self.face_sink(face)? == v {
            return Ok(0);
        }
        let dim = self.lat.faces[face].dim;
        if dim == 1 || (rule && self.out_degree_within(v, face) == 1) {
            let w = self.unique_out_within(v, face);
            return Ok(1 + self.min_within(w, face, rule)?);
        }
        let children = self.lat.children_at(face, v);
        let mut best: Option<u64> = None;
        for g in &children {
            let sg = self.face_sink(*g)?;
            if sg == v {
                continue; // free loop, never helps the minimum
            }
            let cost = self.min_within(v, *g, rule)? + self.min_within(sg, face, rule)?;
            best = Some(best.map_or(cost, |b| b.min(cost)));
        }
        best.ok_or_else(|| Error::Internal("non-sink vertex with no progressing choice".into()))
    }
}

/// Convenience wrapper: expected steps from `start` on the whole polytope.
pub fn random_facet_expected(o: &Orientation, lat: &FaceLattice, start: usize) -> Result<Rat> {
    FacetEngine::new(o, lat)?.expected(start)
}

/// Convenience wrapper: best-case steps from `start` on the whole polytope.
pub fn random_facet_min_steps(o: &Orientation, lat: &FaceLattice, start: usize) -> Result<u64> {
    FacetEngine::new(o, lat)?.min_steps(start, true)
}
