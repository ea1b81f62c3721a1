//! Fence embeddings of dual cyclic graphs, monotone source-paths, and the
//! path-intersection theorem on synthetic directed fences.

use std::collections::HashMap;

use dcp_core::orientation::Orientation;
use dcp_core::polytope::{PolytopeGraph, PolytopeKind};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::checks::Checks;
use crate::error::{AnalysisError, Result};

/// Coordinate recipe for embedding V \ F_removed into a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedVariant {
    /// (min, max)
    Phi1,
    /// (max, n - min + 1)
    Phi2,
    /// The per-path family: alpha selects the x recipe so the path gamma_alpha
    /// walks with non-increasing x; y_flip mirrors the y coordinate.
    Family { alpha: u8, y_flip: bool },
}

/// An injective map from a vertex subset into grid coordinates whose image
/// edges are axis steps or unit diagonals.
#[derive(Debug, Clone)]
pub struct FenceEmbedding {
    pub coords: HashMap<usize, (i64, i64)>,
}

impl FenceEmbedding {
    pub fn coord(&self, v: usize) -> Option<(i64, i64)> {
        self.coords.get(&v).copied()
    }
}

fn variant_coords(variant: EmbedVariant, n: i64, mn: i64, mx: i64) -> (i64, i64) {
    match variant {
        EmbedVariant::Phi1 => (mn, mx),
        EmbedVariant::Phi2 => (mx, n - mn + 1),
        EmbedVariant::Family { alpha, y_flip } => {
            let x = match alpha {
                1 => mn,
                3 => n - mn,
                2 => n - mx,
                4 => mx,
                _ => panic!("alpha out of range"),
            };
            let y_raw = if alpha == 1 || alpha == 3 { mx } else { mn };
            let y = if y_flip { n - y_raw } else { y_raw };
            (x, y)
        }
    }
}

/// Embed the vertices outside `removed_face` and verify injectivity plus the
/// fence edge shape: every image edge has coordinate deltas in
/// {(+-1,0),(0,+-1),(+-1,+-1)}.
pub fn fence_embed(
    graph: &PolytopeGraph,
    variant: EmbedVariant,
    removed_face: u16,
) -> Result<FenceEmbedding> {
    let n = match graph.kind {
        PolytopeKind::DualCyclic { n } => n as i64,
        _ => return Err(AnalysisError::Unsupported("fence embeddings are dual cyclic".into())),
    };
    let domain: Vec<usize> = graph
        .vertices
        .iter()
        .filter(|v| !v.large_face_memberships.contains(&removed_face))
        .map(|v| v.id)
        .collect();
    let mut coords = HashMap::with_capacity(domain.len());
    let mut seen: HashMap<(i64, i64), usize> = HashMap::new();
    for &v in &domain {
        let c = variant_coords(
            variant,
            n,
            graph.vertices[v].min_coord as i64,
            graph.vertices[v].max_coord as i64,
        );
        if let Some(prev) = seen.insert(c, v) {
            return Err(AnalysisError::Assertion {
                name: "fence_embedding_injective".into(),
                witness: format!("vertices {prev} and {v} both map to {c:?}"),
            });
        }
        coords.insert(v, c);
    }
    for &(u, v) in &graph.edges {
        let (Some(&cu), Some(&cv)) = (coords.get(&u), coords.get(&v)) else {
            continue;
        };
        let (dx, dy) = ((cu.0 - cv.0).abs(), (cu.1 - cv.1).abs());
        if dx > 1 || dy > 1 || (dx == 0 && dy == 0) {
            return Err(AnalysisError::Assertion {
                name: "fence_embedding_edge_shape".into(),
                witness: format!("edge ({u},{v}) maps to {cu:?}-{cv:?}"),
            });
        }
    }
    Ok(FenceEmbedding { coords })
}

/// Verdict of the monotone source-path conditions for a directed path under
/// an embedding, relative to a domain digraph.
#[derive(Debug, Clone, Default)]
pub struct MonotonePathVerdict {
    /// x(v_{i+1}) not in {x(v_i), x(v_i)-1}
    pub cond1_failures: Vec<usize>,
    /// non-unit step |dx|+|dy| != 1
    pub cond2_failures: Vec<usize>,
    /// an arc from column x-1 into a path vertex of column x
    pub cond3_failures: Vec<(usize, usize)>,
    /// a touched column whose line source is missing from the path
    pub source_failures: Vec<i64>,
}

impl MonotonePathVerdict {
    pub fn pass(&self) -> bool {
        self.cond1_failures.is_empty()
            && self.cond2_failures.is_empty()
            && self.cond3_failures.is_empty()
            && self.source_failures.is_empty()
    }
}

/// Check the horizontally monotone source-path conditions for `path` within
/// the induced digraph on `domain` (a single-vertex path passes trivially).
///
/// The column source is the unique vertex of the column's induced path with
/// no in-arc along the column.
pub fn check_monotone_source_path(
    o: &Orientation,
    emb: &FenceEmbedding,
    domain: &[usize],
    path: &[usize],
) -> Result<MonotonePathVerdict> {
    let mut verdict = MonotonePathVerdict::default();
    let coord = |v: usize| -> Result<(i64, i64)> {
        emb.coord(v).ok_or_else(|| {
            AnalysisError::Internal(format!("path vertex {v} outside embedding domain"))
        })
    };
    for (i, w) in path.windows(2).enumerate() {
        let a = coord(w[0])?;
        let b = coord(w[1])?;
        if !(b.0 == a.0 || b.0 == a.0 - 1) {
            verdict.cond1_failures.push(i);
        }
        if (a.0 - b.0).abs() + (a.1 - b.1).abs() != 1 {
            verdict.cond2_failures.push(i);
        }
    }
    let in_domain: std::collections::HashSet<usize> = domain.iter().copied().collect();
    let on_path: std::collections::HashSet<usize> = path.iter().copied().collect();
    for &v in path {
        let cv = coord(v)?;
        for u in o.in_neighbors(v) {
            if !in_domain.contains(&u) {
                continue;
            }
            if let Some(cu) = emb.coord(u) {
                if cu.0 == cv.0 - 1 {
                    verdict.cond3_failures.push((u, v));
                }
            }
        }
    }
    // source-path condition per touched column
    let mut columns: Vec<i64> = path.iter().map(|&v| coord(v).unwrap().0).collect();
    columns.sort_unstable();
    columns.dedup();
    for &col in &columns {
        match column_source(o, emb, domain, col) {
            Some(src) => {
                if !on_path.contains(&src) {
                    verdict.source_failures.push(col);
                }
            }
            None => verdict.source_failures.push(col),
        }
    }
    Ok(verdict)
}

/// The unique source of the induced orientation on a column (x = col) of the
/// embedded domain; None if the column has no vertices or several sources.
fn column_source(
    o: &Orientation,
    emb: &FenceEmbedding,
    domain: &[usize],
    col: i64,
) -> Option<usize> {
    let mut line: Vec<(i64, usize)> = domain
        .iter()
        .copied()
        .filter_map(|v| emb.coord(v).filter(|c| c.0 == col).map(|c| (c.1, v)))
        .collect();
    line.sort_unstable();
    let mut sources = Vec::new();
    for (i, &(y, v)) in line.iter().enumerate() {
        let in_from_below = i > 0 && line[i - 1].0 == y - 1 && o.arc(line[i - 1].1, v);
        let in_from_above = i + 1 < line.len() && line[i + 1].0 == y + 1 && o.arc(line[i + 1].1, v);
        if !in_from_below && !in_from_above {
            sources.push(v);
        }
    }
    (sources.len() == 1).then(|| sources[0])
}

/// Lemma 3.7-style line checks over the embedded domain: every x line and y
/// line of the image is a contiguous interval whose induced orientation has
/// no internal sink (so the image extends to a sink-free fence).
pub fn check_sink_free_lines(
    o: &Orientation,
    emb: &FenceEmbedding,
    domain: &[usize],
    checks: &mut Checks,
    tag: &str,
) {
    for axis in 0..2 {
        let mut lines: HashMap<i64, Vec<(i64, usize)>> = HashMap::new();
        for &v in domain {
            if let Some(c) = emb.coord(v) {
                let (key, other) = if axis == 0 { (c.0, c.1) } else { (c.1, c.0) };
                lines.entry(key).or_default().push((other, v));
            }
        }
        let mut keys: Vec<i64> = lines.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let line = &mut lines.get_mut(&key).unwrap();
            line.sort_unstable();
            let contiguous = line.windows(2).all(|w| w[1].0 == w[0].0 + 1);
            checks.record(
                format!("lemma_3_7_interval_{tag}[axis{axis},{key}]"),
                contiguous,
                || format!("line holds coordinates {:?}", line.iter().map(|p| p.0).collect::<Vec<_>>()),
            );
            if !contiguous {
                continue;
            }
            let mut internal_sinks = Vec::new();
            for i in 1..line.len().saturating_sub(1) {
                let v = line[i].1;
                if o.arc(line[i - 1].1, v) && o.arc(line[i + 1].1, v) {
                    internal_sinks.push(v);
                }
            }
            checks.record(
                format!("lemma_3_7_no_internal_sink_{tag}[axis{axis},{key}]"),
                internal_sinks.is_empty(),
                || format!("{internal_sinks:?}"),
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Synthetic directed fences and the path-intersection theorem
// ---------------------------------------------------------------------------

/// A fully materialized directed fence on an nx x ny grid: all axis and
/// diagonal edges carry an orientation, and no line has an internal sink.
#[derive(Debug, Clone)]
pub struct SynthFence {
    pub nx: usize,
    pub ny: usize,
    /// arcs as coordinate pairs
    pub arcs: std::collections::HashSet<((usize, usize), (usize, usize))>,
}

impl SynthFence {
    pub fn vertices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.nx).flat_map(move |x| (0..self.ny).map(move |y| (x, y)))
    }

    pub fn arc(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        self.arcs.contains(&(a, b))
    }

    pub fn out_neighbors(&self, a: (usize, usize)) -> Vec<(usize, usize)> {
        neighbor_cells(a, self.nx, self.ny)
            .into_iter()
            .filter(|&b| self.arc(a, b))
            .collect()
    }
}

fn neighbor_cells(a: (usize, usize), nx: usize, ny: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(8);
    let (x, y) = (a.0 as i64, a.1 as i64);
    for dx in -1..=1i64 {
        for dy in -1..=1i64 {
            if dx == 0 && dy == 0 {
                continue;
            }
            let (bx, by) = (x + dx, y + dy);
            if bx >= 0 && by >= 0 && (bx as usize) < nx && (by as usize) < ny {
                out.push((bx as usize, by as usize));
            }
        }
    }
    out
}

/// Generate a random sink-free directed fence: each line is oriented as two
/// runs away from a random source position, and diagonal edges are oriented
/// uniformly at random.
pub fn random_sink_free_fence(nx: usize, ny: usize, seed: u64) -> SynthFence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = std::collections::HashSet::new();
    // columns: vertical lines x = c
    for x in 0..nx {
        let src = rng.random_range(0..ny);
        for y in 0..ny.saturating_sub(1) {
            // edge (x,y)-(x,y+1): directed away from src
            if y >= src {
                arcs.insert(((x, y), (x, y + 1)));
            } else {
                arcs.insert(((x, y + 1), (x, y)));
            }
        }
    }
    // rows: horizontal lines y = c
    for y in 0..ny {
        let src = rng.random_range(0..nx);
        for x in 0..nx.saturating_sub(1) {
            if x >= src {
                arcs.insert(((x, y), (x + 1, y)));
            } else {
                arcs.insert(((x + 1, y), (x, y)));
            }
        }
    }
    // diagonals
    for x in 0..nx.saturating_sub(1) {
        for y in 0..ny.saturating_sub(1) {
            let (a, b) = ((x, y), (x + 1, y + 1));
            if rng.random_bool(0.5) {
                arcs.insert((a, b));
            } else {
                arcs.insert((b, a));
            }
            let (c, d) = ((x + 1, y), (x, y + 1));
            if rng.random_bool(0.5) {
                arcs.insert((c, d));
            } else {
                arcs.insert((d, c));
            }
        }
    }
    SynthFence { nx, ny, arcs }
}

/// Hypotheses and data of the path-intersection theorem on a synthetic
/// fence.
#[derive(Debug, Clone)]
pub struct IntersectionInstance {
    pub v: (usize, usize),
    pub w1: (usize, usize),
    pub w2: (usize, usize),
    pub q: (usize, usize),
    pub omega1: Vec<(usize, usize)>,
    pub omega2: Vec<(usize, usize)>,
}

/// Check the hypotheses of the theorem on a synthetic fence: coordinates,
/// monotone source-path conditions for both omegas, containment in the box
/// B, and the skew-edge out-direction condition on the two legs.
pub fn intersection_hypotheses_hold(f: &SynthFence, inst: &IntersectionInstance) -> bool {
    let (i, j) = (inst.v.0, inst.v.1);
    let (k, l) = (inst.w1.0, inst.w2.1);
    if inst.w1.1 != j || inst.w2.0 != i {
        return false;
    }
    let (r, s) = inst.q;
    if !(k > i && r > i && s > i && l > j && r > j && s > j) {
        return false;
    }
    let in_box = |p: (usize, usize)| p.0 >= i && p.1 >= j;
    if !inst.omega1.iter().all(|&p| in_box(p)) || !inst.omega2.iter().all(|&p| in_box(p)) {
        return false;
    }
    if inst.omega1.first() != Some(&inst.q)
        || inst.omega2.first() != Some(&inst.q)
        || inst.omega1.last() != Some(&inst.w1)
        || inst.omega2.last() != Some(&inst.w2)
    {
        return false;
    }
    let shared: Vec<_> = inst
        .omega1
        .iter()
        .filter(|p| inst.omega2.contains(p))
        .collect();
    if shared != vec![&inst.q] {
        return false;
    }
    // omega2 horizontally monotone source path, omega1 vertically monotone
    if !synth_monotone_source_path(f, &inst.omega2, false)
        || !synth_monotone_source_path(f, &inst.omega1, true)
    {
        return false;
    }
    // skew edges from outside B into the two boundary legs must leave B
    skew_condition_holds(f, inst)
}

/// The skew-edge hypothesis in isolation.
pub fn skew_condition_holds(f: &SynthFence, inst: &IntersectionInstance) -> bool {
    let (i, j) = (inst.v.0, inst.v.1);
    let (k, l) = (inst.w1.0, inst.w2.1);
    let in_box = |p: (usize, usize)| p.0 >= i && p.1 >= j;
    let mut legs: Vec<(usize, usize)> = Vec::new();
    for x in i..=k {
        legs.push((x, j));
    }
    for y in j..=l {
        legs.push((i, y));
    }
    for &p in &legs {
        for nb in neighbor_cells(p, f.nx, f.ny) {
            let skew = nb.0 != p.0 && nb.1 != p.1;
            if !skew || in_box(nb) {
                continue;
            }
            if f.arc(nb, p) {
                return false;
            }
        }
    }
    true
}

/// Monotone source-path check on a synthetic fence. `vertical` selects the
/// vertically monotone variant (y non-increasing, row sources on the path).
fn synth_monotone_source_path(f: &SynthFence, path: &[(usize, usize)], vertical: bool) -> bool {
    let get = |p: (usize, usize)| if vertical { (p.1, p.0) } else { (p.0, p.1) };
    for w in path.windows(2) {
        let a = get(w[0]);
        let b = get(w[1]);
        if !(b.0 == a.0 || b.0 + 1 == a.0) {
            return false;
        }
        let d = (a.0 as i64 - b.0 as i64).abs() + (a.1 as i64 - b.1 as i64).abs();
        if d != 1 {
            return false;
        }
        if !f.arc(w[0], w[1]) {
            return false;
        }
    }
    // condition 3: no arcs from the previous line into path vertices
    for &p in path {
        let (c, _) = get(p);
        if c == 0 {
            continue;
        }
        for nb in neighbor_cells(p, f.nx, f.ny) {
            let (cn, _) = get(nb);
            if cn + 1 == c && f.arc(nb, p) {
                return false;
            }
        }
    }
    // source-path condition
    let mut lines: Vec<usize> = path.iter().map(|&p| get(p).0).collect();
    lines.sort_unstable();
    lines.dedup();
    for line in lines {
        let src = synth_line_source(f, line, vertical);
        match src {
            Some(sv) if path.contains(&sv) => {}
            _ => return false,
        }
    }
    true
}

/// Unique source of a grid line (column when `vertical` is false).
fn synth_line_source(f: &SynthFence, line: usize, vertical: bool) -> Option<(usize, usize)> {
    let len = if vertical { f.nx } else { f.ny };
    let cell = |t: usize| if vertical { (t, line) } else { (line, t) };
    let mut sources = Vec::new();
    for t in 0..len {
        let p = cell(t);
        let before = t > 0 && f.arc(cell(t - 1), p);
        let after = t + 1 < len && f.arc(cell(t + 1), p);
        if !before && !after {
            sources.push(p);
        }
    }
    (sources.len() == 1).then(|| sources[0])
}

/// The conclusion of the theorem: every directed path from outside B to v
/// meets omega1 u omega2. Checked by reachability in the fence with the
/// omega vertices removed, and cross-checked by exhaustive path enumeration
/// on small grids.
pub fn intersection_conclusion_holds(f: &SynthFence, inst: &IntersectionInstance) -> bool {
    let (i, j) = (inst.v.0, inst.v.1);
    let blocked: std::collections::HashSet<(usize, usize)> = inst
        .omega1
        .iter()
        .chain(inst.omega2.iter())
        .copied()
        .collect();
    if blocked.contains(&inst.v) {
        return true;
    }
    // reachability to v avoiding blocked vertices, from any start outside B
    let mut reach_v = std::collections::HashSet::from([inst.v]);
    let mut changed = true;
    while changed {
        changed = false;
        for a in f.vertices() {
            if reach_v.contains(&a) || blocked.contains(&a) {
                continue;
            }
            if f.out_neighbors(a).iter().any(|b| reach_v.contains(b)) {
                reach_v.insert(a);
                changed = true;
            }
        }
    }
    !f.vertices()
        .filter(|p| !(p.0 >= i && p.1 >= j))
        .any(|p| reach_v.contains(&p))
}

/// Exhaustive DFS over all directed paths from `start` to `v`, checking each
/// against omega1 u omega2. Exponential; used as the oracle on small grids.
pub fn intersection_conclusion_by_enumeration(
    f: &SynthFence,
    inst: &IntersectionInstance,
    start: (usize, usize),
) -> bool {
    let blocked: std::collections::HashSet<(usize, usize)> = inst
        .omega1
        .iter()
        .chain(inst.omega2.iter())
        .copied()
        .collect();
    fn dfs(
        f: &SynthFence,
        cur: (usize, usize),
        target: (usize, usize),
        blocked: &std::collections::HashSet<(usize, usize)>,
        hit: bool,
        seen: &mut Vec<(usize, usize)>,
    ) -> bool {
        let hit = hit || blocked.contains(&cur);
        if cur == target {
            return hit; // false = found a path missing both omegas
        }
        for nb in f.out_neighbors(cur) {
            if seen.contains(&nb) {
                continue;
            }
            seen.push(nb);
            let ok = dfs(f, nb, target, blocked, hit, seen);
            seen.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let mut seen = vec![start];
    dfs(f, start, inst.v, &blocked, false, &mut seen)
}

/// Grow a monotone source-path from q (which must be the source of its own
/// line) down to `target_line`, entering every intermediate line at its
/// source: within a line the arcs point away from the source, so the path
/// walks from the source to the position of the next line's source and
/// steps across. Returns None when some required arc is missing.
pub fn grow_monotone_source_path(
    f: &SynthFence,
    q: (usize, usize),
    target_line: usize,
    vertical: bool,
) -> Option<Vec<(usize, usize)>> {
    let get = |p: (usize, usize)| if vertical { (p.1, p.0) } else { (p.0, p.1) };
    let cell = |line: usize, t: usize| if vertical { (t, line) } else { (line, t) };
    let (mut line, _) = get(q);
    if synth_line_source(f, line, vertical) != Some(q) || target_line > line {
        return None;
    }
    let mut path = vec![q];
    while line > target_line {
        let s_prev = synth_line_source(f, line - 1, vertical)?;
        let (_, t_prev) = get(s_prev);
        // walk within the current line to the crossing position
        loop {
            let (_, t) = get(*path.last().unwrap());
            if t == t_prev {
                break;
            }
            let next_t = if t_prev > t { t + 1 } else { t - 1 };
            let nb = cell(line, next_t);
            if !f.arc(*path.last().unwrap(), nb) {
                return None;
            }
            path.push(nb);
        }
        // step across to the previous line's source
        if !f.arc(*path.last().unwrap(), s_prev) {
            return None;
        }
        path.push(s_prev);
        line -= 1;
    }
    Some(path)
}

/// Deterministically search a fence for a theorem instance: a vertex q that
/// is simultaneously the source of its column and its row, monotone source
/// paths to a lower column and row, and a box corner v below both.
pub fn generate_intersection_instance(f: &SynthFence) -> Option<IntersectionInstance> {
    for q in f.vertices() {
        if synth_line_source(f, q.0, false) != Some(q)
            || synth_line_source(f, q.1, true) != Some(q)
        {
            continue;
        }
        for i in (0..q.0).rev() {
            let Some(omega2) = grow_monotone_source_path(f, q, i, false) else {
                continue;
            };
            let w2 = *omega2.last().unwrap();
            for j in (0..q.1).rev() {
                let Some(omega1) = grow_monotone_source_path(f, q, j, true) else {
                    continue;
                };
                let w1 = *omega1.last().unwrap();
                let v = (i, j);
                if !(w1.0 > i && w2.1 > j && q.0 > i && q.1 > j) {
                    continue;
                }
                let inst = IntersectionInstance {
                    v,
                    w1,
                    w2,
                    q,
                    omega1,
                    omega2: omega2.clone(),
                };
                if intersection_hypotheses_hold(f, &inst) {
                    return Some(inst);
                }
            }
        }
    }
    None
}
