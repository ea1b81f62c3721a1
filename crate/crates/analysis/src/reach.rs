//! Reachability helpers on AUSO digraphs.

use dcp_core::orientation::Orientation;

/// succs(v): vertices reachable from v by a nonempty directed path.
pub fn successors(o: &Orientation, v: usize) -> Vec<bool> {
    let n = o.graph.vertex_count();
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = o.out_neighbors(v).collect();
    while let Some(w) = stack.pop() {
        if !seen[w] {
            seen[w] = true;
            stack.extend(o.out_neighbors(w));
        }
    }
    seen
}

/// preds(v): vertices with a nonempty directed path to v.
pub fn predecessors(o: &Orientation, v: usize) -> Vec<bool> {
    let n = o.graph.vertex_count();
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = o.in_neighbors(v).collect();
    while let Some(w) = stack.pop() {
        if !seen[w] {
            seen[w] = true;
            stack.extend(o.in_neighbors(w));
        }
    }
    seen
}

/// For every vertex, the set of distinguished vertices among its closed
/// predecessors, as bitmasks over `marked`. Runs one topological sweep.
pub fn closed_pred_marks(o: &Orientation, marked: &[usize]) -> Vec<MarkSet> {
    let n = o.graph.vertex_count();
    let words = marked.len().div_ceil(64);
    let mut mark_index = vec![usize::MAX; n];
    for (i, &m) in marked.iter().enumerate() {
        mark_index[m] = i;
    }
    let mut sets = vec![MarkSet(vec![0u64; words]); n];
    let order = o.topo_order().expect("acyclic");
    for &v in order {
        let mine = std::mem::take(&mut sets[v]);
        let mut acc = mine;
        if mark_index[v] != usize::MAX {
            acc.insert(mark_index[v]);
        }
        for w in o.out_neighbors(v) {
            sets[w].union_with(&acc);
        }
        sets[v] = acc;
    }
    sets
}

/// Small fixed bitmask over the distinguished vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MarkSet(Vec<u64>);

impl MarkSet {
    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn union_with(&mut self, other: &MarkSet) {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a |= b;
        }
    }

    pub fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }
}
