//! The source-side partition machinery: anchoring, the W windows, the parts
//! Q1..Q4 with their monotone functions, and the per-vertex effectively
//! decreasing verdicts.

use std::collections::HashMap;

use dcp_core::orientation::{relabel_rotation_for_anchor, relabel_with_map, Orientation};
use dcp_core::polytope::PolytopeKind;

use crate::checks::Checks;
use crate::error::{AnalysisError, Result};
use crate::profile::{compute_profile, Dir, FamilyProfile, GammaPath, LargeFaceProfile, OccKind};
use crate::reach::{closed_pred_marks, predecessors, successors};

/// An integer function on a vertex part, monotone along the part's internal
/// arcs (checked, not assumed).
#[derive(Debug, Clone)]
pub struct MonotoneFunction {
    pub label: String,
    /// value per vertex of the part, keyed by vertex id
    pub values: HashMap<usize, i64>,
}

impl MonotoneFunction {
    pub fn image_size(&self) -> usize {
        let mut vals: Vec<i64> = self.values.values().copied().collect();
        vals.sort_unstable();
        vals.dedup();
        vals.len()
    }
}

/// One part of the final partition.
#[derive(Debug, Clone)]
pub struct Part {
    pub label: String,
    pub vertices: Vec<usize>,
    pub lambda: MonotoneFunction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EffMode {
    Successor,
    SuccessorAndPredecessor,
}

/// Per-vertex effectively-decreasing verdicts for a part.
#[derive(Debug, Clone, Default)]
pub struct EffVerdict {
    /// vertices with no decreasing direct successor (and not the global sink)
    pub succ_failures: Vec<usize>,
    /// vertices with no increasing direct predecessor (two-sided mode only)
    pub pred_failures: Vec<usize>,
    /// part-internal arcs along which lambda increases
    pub monotone_failures: Vec<(usize, usize)>,
}

impl EffVerdict {
    pub fn pass(&self) -> bool {
        self.succ_failures.is_empty()
            && self.pred_failures.is_empty()
            && self.monotone_failures.is_empty()
    }
}

/// Check that `lambda` is monotone along the part's internal arcs and that
/// every part vertex has a decreasing direct successor: an out-arc that
/// strictly decreases lambda or leaves the part. In the two-sided mode the
/// mirrored condition on predecessors is checked as well (an in-arc that
/// strictly increases lambda, leaves the part, or comes from the global
/// source). The global sink (resp. source) is exempt from its condition.
pub fn check_effectively_decreasing(
    o: &Orientation,
    part: &[usize],
    lambda: &MonotoneFunction,
    mode: EffMode,
) -> Result<EffVerdict> {
    let nv = o.graph.vertex_count();
    let mut inside = vec![false; nv];
    for &v in part {
        inside[v] = true;
    }
    let global_sink = o.global_sink().map_err(AnalysisError::Core)?;
    let global_source = o.global_source().map_err(AnalysisError::Core)?;
    let mut verdict = EffVerdict::default();
    for &v in part {
        let lv = lambda.values[&v];
        for w in o.out_neighbors(v) {
            if inside[w] && lambda.values[&w] > lv {
                verdict.monotone_failures.push((v, w));
            }
        }
        if v != global_sink {
            let ok = o
                .out_neighbors(v)
                .any(|w| !inside[w] || lambda.values[&w] < lv);
            if !ok {
                verdict.succ_failures.push(v);
            }
        }
        if mode == EffMode::SuccessorAndPredecessor && v != global_source {
            let ok = o
                .in_neighbors(v)
                .any(|w| !inside[w] || w == global_source || lambda.values[&w] > lv);
            if !ok {
                verdict.pred_failures.push(v);
            }
        }
    }
    Ok(verdict)
}

/// - the number of distinct large-face source vertices in preds[v],
/// negated: the paper's lambda_Q, monotone decreasing on the whole digraph.
pub fn lambda_q_values(o: &Orientation, fam: &FamilyProfile) -> Vec<i64> {
    let mut marked: Vec<usize> = fam.sources.clone();
    marked.sort_unstable();
    marked.dedup();
    let sets = closed_pred_marks(o, &marked);
    sets.iter().map(|s| -(s.count() as i64)).collect()
}

/// Anchoring data: the relabeling carrying one admissible mqa occurrence to
/// face 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anchor {
    pub rotation: u16,
    pub reverse: bool,
}

/// All admissible anchors: one per sink occurrence run of mqa, in both
/// numbering directions.
pub fn admissible_anchors(profile: &LargeFaceProfile, n: u16) -> Vec<Anchor> {
    let fam = profile.single();
    let mut anchors = Vec::new();
    for occ in &fam.q_side.occurrences {
        if occ.kind != OccKind::Sink || occ.vertex != fam.q_side.mqa {
            continue;
        }
        anchors.push(Anchor {
            rotation: relabel_rotation_for_anchor(fam.faces[occ.run_lo] % n, false, n),
            reverse: false,
        });
        anchors.push(Anchor {
            rotation: relabel_rotation_for_anchor(fam.faces[occ.run_hi] % n, true, n),
            reverse: true,
        });
    }
    anchors
}

/// Indices of the anchored picture: the global source coordinates k and l,
/// the mqb position m, and the first gamma_1/gamma_2 sources s and t inside
/// succs(mqb). t = n encodes "only the final mqa qualifies".
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct QIndices {
    pub k: u16,
    pub l: u16,
    pub m: u16,
    pub s: u16,
    pub t: u16,
}

/// The anchored source-side analysis. All vertex ids below are in the
/// anchored labeling; `to_original` maps them back.
pub struct QSide {
    pub anchor: Anchor,
    pub anchored: Orientation,
    /// anchored id -> original id
    pub to_original: Vec<usize>,
    /// original id -> anchored id
    pub from_original: Vec<usize>,
    pub profile: LargeFaceProfile,
    pub mqa: usize,
    pub mqb: usize,
    pub case2: bool,
    pub indices: Option<QIndices>,
    /// parts in anchored ids, labels Q1..Q4 (case 2) or Qab/Qa/Qb (case 1)
    pub parts: Vec<Part>,
    /// preds(mqa) in anchored ids
    pub preds_mqa: Vec<bool>,
    /// the four directed source paths gamma_1..gamma_4 (case 2 only)
    pub gammas: Option<[Vec<usize>; 4]>,
    pub checks: Checks,
}

fn set_eq(a: &[usize], b: &[usize]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// Build the source-side partition for a dual cyclic AUSO, using the given
/// anchor.
pub fn build_q_side(o: &Orientation, profile: &LargeFaceProfile, anchor: Anchor) -> Result<QSide> {
    let n = match o.graph.kind {
        PolytopeKind::DualCyclic { n } => n,
        _ => {
            return Err(AnalysisError::Unsupported(
                "partition certificates apply to dual cyclic polytopes".into(),
            ))
        }
    };
    let fam = profile.single();
    let (anchored, from_original) =
        relabel_with_map(o, anchor.rotation, anchor.reverse).map_err(AnalysisError::Core)?;
    let mut to_original = vec![usize::MAX; from_original.len()];
    for (orig, &img) in from_original.iter().enumerate() {
        to_original[img] = orig;
    }
    let mqa = from_original[fam.q_side.mqa];
    let mqb = from_original[fam.q_side.mqb];

    let (aprofile, mut checks) = compute_profile(&anchored)?;
    let afam = aprofile.single();
    checks.record(
        "anchor_mqa_is_q0",
        afam.sources[0] == mqa,
        || format!("anchored source of F_0 is {}, mqa is {mqa}", afam.sources[0]),
    );

    let graph = &anchored.graph;
    let preds_mqa = predecessors(&anchored, mqa);
    let preds_mqb = predecessors(&anchored, mqb);
    let succs_mqb = successors(&anchored, mqb);
    let global_source = anchored.global_source().map_err(AnalysisError::Core)?;

    // F_0 cap preds(mqa) is empty: every vertex of F_0 is reachable from its
    // source mqa within the face.
    {
        let bad: Vec<usize> = graph.large_faces[0]
            .cycle
            .iter()
            .copied()
            .filter(|&v| preds_mqa[v])
            .collect();
        checks.record("f0_disjoint_from_preds_mqa", bad.is_empty(), || {
            format!("F_0 vertices {bad:?} precede mqa")
        });
    }
    // No large-face sinks precede mqa (or mqb): the sink of F_i is reachable
    // from F_i cap F_0.
    {
        let bad: Vec<usize> = afam
            .sinks
            .iter()
            .copied()
            .filter(|&s| preds_mqa[s] || preds_mqb[s])
            .collect();
        checks.record("no_face_sinks_in_q", bad.is_empty(), || {
            format!("face sinks {bad:?} inside preds(mqa) u preds(mqb)")
        });
    }

    let case2 = preds_mqa[mqb];
    let lambda_q = lambda_q_values(&anchored, afam);
    // lambda_Q is monotone on the whole digraph by construction; verified.
    {
        let bad: Vec<(usize, usize)> = anchored
            .arcs()
            .filter(|&(u, v)| lambda_q[u] < lambda_q[v])
            .collect();
        checks.record("lambda_q_globally_monotone", bad.is_empty(), || {
            format!("lambda_Q increases along arcs {bad:?}")
        });
    }

    let lam = |label: &str, verts: &[usize], f: &dyn Fn(usize) -> i64| MonotoneFunction {
        label: label.to_string(),
        values: verts.iter().map(|&v| (v, f(v))).collect(),
    };

    let mut parts: Vec<Part> = Vec::new();
    let mut indices = None;
    let mut gammas = None;

    if !case2 {
        // Case 1 of the main source-side proposition: mqb does not precede
        // mqa, the three reachability cells each carry lambda_Q.
        let both: Vec<usize> = (0..graph.vertex_count())
            .filter(|&v| preds_mqa[v] && preds_mqb[v])
            .collect();
        let mut only_a: Vec<usize> = (0..graph.vertex_count())
            .filter(|&v| preds_mqa[v] && !preds_mqb[v])
            .collect();
        only_a.push(mqa);
        let mut only_b: Vec<usize> = (0..graph.vertex_count())
            .filter(|&v| preds_mqb[v] && !preds_mqa[v])
            .collect();
        only_b.push(mqb);
        // no arcs may join the two difference cells in either direction
        {
            let mut bad = Vec::new();
            for (u, v) in anchored.arcs() {
                let u_a = only_a.contains(&u);
                let u_b = only_b.contains(&u);
                let v_a = only_a.contains(&v);
                let v_b = only_b.contains(&v);
                if (u_a && v_b) || (u_b && v_a) {
                    bad.push((u, v));
                }
            }
            checks.record("case1_no_cross_arcs", bad.is_empty(), || format!("{bad:?}"));
        }
        for (label, verts) in [("Qab", both), ("Qa", only_a), ("Qb", only_b)] {
            if verts.is_empty() {
                continue;
            }
            let lambda = lam("lambda_Q", &verts, &|v| lambda_q[v]);
            parts.push(Part {
                label: label.to_string(),
                vertices: verts,
                lambda,
            });
        }
    } else {
        // Case 2: mqb precedes mqa. Anchored indices.
        let q = global_source;
        let k = graph.vertices[q].min_coord;
        let l = graph.vertices[q].max_coord;
        // The cut: mqb's occurrence run restricted to the open arc (k, l).
        // A single face for the generic mqb, two faces when mqb is the
        // source of two consecutive faces, and the middle position when
        // mqb = q.
        let (cut_lo, cut_hi) = cut_bounds(afam, mqb, k, l)?;
        let m = cut_lo;

        // s: first gamma_1 source in succs(mqb), walking positions k-1..0
        let mut s_idx = None;
        for p in (0..k).rev() {
            if succs_mqb[afam.sources[p as usize]] {
                s_idx = Some(p);
                break;
            }
        }
        // t: first gamma_2 source in succs(mqb), walking positions l+1..n-1
        // and finally the mqa occurrence encoded as n
        let mut t_idx = None;
        for p in (l + 1)..n {
            if succs_mqb[afam.sources[p as usize]] {
                t_idx = Some(p);
                break;
            }
        }
        // mqa = q_0 is in succs(mqb) in case 2, so the gamma_1 scan always
        // terminates by position 0; on gamma_2 the final mqa occurrence is
        // encoded as t = n.
        checks.record("s_exists", s_idx.is_some(), || {
            "no gamma_1 source lies in succs(mqb)".to_string()
        });
        let s = s_idx.unwrap_or(0);
        let t = t_idx.unwrap_or(n);
        indices = Some(QIndices { k, l, m, s, t });

        // gamma paths
        let g = assemble_gammas(afam, k, l, m, n, &mut checks);
        checks.record("gamma_1_ends_at_mqa", g[0].last() == Some(&mqa), || {
            format!("gamma_1 ends at {:?}", g[0].last())
        });
        checks.record("gamma_2_ends_at_mqa", g[1].last() == Some(&mqa), || {
            format!("gamma_2 ends at {:?}", g[1].last())
        });
        checks.record("gamma_3_ends_at_mqb", g[2].last() == Some(&mqb), || {
            format!("gamma_3 ends at {:?}", g[2].last())
        });
        checks.record("gamma_4_ends_at_mqb", g[3].last() == Some(&mqb), || {
            format!("gamma_4 ends at {:?}", g[3].last())
        });

        // Lemma 3.1: interior gamma sources are horizontal on gamma_1 and
        // gamma_3, vertical on gamma_2 and gamma_4.
        {
            let mut bad = Vec::new();
            for p in 0..n {
                let qp = afam.sources[p as usize];
                if !preds_mqa[qp] || qp == mqa || qp == mqb {
                    continue;
                }
                let vert = &graph.vertices[qp];
                if p <= cut_lo && vert.min_coord != p {
                    bad.push((p, qp, "horizontal"));
                }
                if p >= cut_hi && p <= l && vert.max_coord != p {
                    bad.push((p, qp, "vertical"));
                }
                if p > l && vert.max_coord != p {
                    bad.push((p, qp, "vertical"));
                }
            }
            checks.record("lemma_3_1_gamma_sources", bad.is_empty(), || format!("{bad:?}"));
        }

        // Lemma 3.2: predecessors of mqa inside the doubled-horizontal or
        // doubled-vertical cells are successors of mqb.
        {
            let mut bad = Vec::new();
            for v in 0..graph.vertex_count() {
                if !preds_mqa[v] || v == mqb {
                    continue;
                }
                let (mn, mx) = (graph.vertices[v].min_coord, graph.vertices[v].max_coord);
                let both_h = mn <= cut_hi && mx <= cut_hi;
                let both_v = mn >= cut_lo && mx >= cut_lo;
                if (both_h || both_v) && !succs_mqb[v] {
                    bad.push(v);
                }
            }
            checks.record("lemma_3_2_mqb_reach", bad.is_empty(), || format!("{bad:?}"));
        }

        // Reachability-primary parts. Q1 is the predecessors of mqa that are
        // not successors of mqb (mqb itself included); Q4 those successors
        // of mqb past q_s or q_t, plus mqa, whose in-arcs range over all of
        // Q while its out-arcs leave Q; the rest splits along the cut.
        let nv = graph.vertex_count();
        let succs_qs: Vec<bool> = if s_idx.is_some() {
            let mut m0 = successors(&anchored, afam.sources[s as usize]);
            m0[afam.sources[s as usize]] = true;
            m0
        } else {
            vec![false; nv]
        };
        let succs_qt: Vec<bool> = if t == n {
            let mut m0 = successors(&anchored, mqa);
            m0[mqa] = true;
            m0
        } else {
            let mut m0 = successors(&anchored, afam.sources[t as usize]);
            m0[afam.sources[t as usize]] = true;
            m0
        };
        let mut q_sets: [Vec<usize>; 4] = Default::default();
        let mut rest_unsplit: Vec<usize> = Vec::new();
        for v in 0..nv {
            if !preds_mqa[v] {
                continue;
            }
            if !succs_mqb[v] {
                q_sets[0].push(v); // includes mqb
            } else if succs_qs[v] || succs_qt[v] {
                q_sets[3].push(v);
            } else {
                let (mn, mx) = (graph.vertices[v].min_coord, graph.vertices[v].max_coord);
                let h_side = mx <= cut_hi;
                let v_side = mn >= cut_lo;
                match (h_side, v_side) {
                    (true, false) => q_sets[1].push(v),
                    (false, true) => q_sets[2].push(v),
                    _ => rest_unsplit.push(v),
                }
            }
        }
        q_sets[3].push(mqa);
        q_sets[3].sort_unstable();
        checks.record("lemma_3_3_q23_split", rest_unsplit.is_empty(), || {
            format!(
                "vertices {rest_unsplit:?} in preds(mqa) cap succs(mqb) straddle the cut [{cut_lo},{cut_hi}] without reaching past q_s or q_t"
            )
        });

        // W window characterizations of the parts.
        {
            let w1: Vec<usize> = (0..nv)
                .filter(|&v| {
                    let (mn, mx) = (graph.vertices[v].min_coord, graph.vertices[v].max_coord);
                    v != mqb && preds_mqa[v] && mn >= s + 1 && mn < cut_lo && mx > cut_hi && mx < t
                })
                .collect();
            let q1_no_mqb: Vec<usize> = q_sets[0].iter().copied().filter(|&v| v != mqb).collect();
            checks.record("lemma_3_3_w1_window", set_eq(&w1, &q1_no_mqb), || {
                format!("W1 cap preds(mqa) = {w1:?}, Q1 minus mqb = {q1_no_mqb:?}")
            });
            let w4: Vec<usize> = (0..nv)
                .filter(|&v| {
                    let (mn, mx) = (graph.vertices[v].min_coord, graph.vertices[v].max_coord);
                    preds_mqa[v] && (mn <= s || mx >= t)
                })
                .collect();
            let in_q4: std::collections::HashSet<usize> = q_sets[3].iter().copied().collect();
            let stray: Vec<usize> = w4.iter().copied().filter(|v| !in_q4.contains(v)).collect();
            checks.record("lemma_3_3_w4_subset", stray.is_empty(), || {
                format!("W4 cap preds(mqa) vertices {stray:?} missing from Q4")
            });
        }
        {
            // no direct arcs between Q2 and Q3
            let in2: Vec<bool> = {
                let mut m0 = vec![false; nv];
                for &v in &q_sets[1] {
                    m0[v] = true;
                }
                m0
            };
            let in3: Vec<bool> = {
                let mut m0 = vec![false; nv];
                for &v in &q_sets[2] {
                    m0[v] = true;
                }
                m0
            };
            let bad: Vec<(usize, usize)> = anchored
                .arcs()
                .filter(|&(u, v)| (in2[u] && in3[v]) || (in3[u] && in2[v]))
                .collect();
            checks.record("lemma_3_3_no_q2_q3_edges", bad.is_empty(), || format!("{bad:?}"));
        }
        {
            // Q1 is closed under predecessors inside the digraph
            let q1_mask: Vec<bool> = {
                let mut m0 = vec![false; nv];
                for &v in &q_sets[0] {
                    m0[v] = true;
                }
                m0
            };
            let bad: Vec<(usize, usize)> = anchored
                .arcs()
                .filter(|&(u, v)| q1_mask[v] && !q1_mask[u])
                .collect();
            checks.record("lemma_3_3_q1_in_closed", bad.is_empty(), || format!("{bad:?}"));
        }

        let labels = ["Q1", "Q2", "Q3", "Q4"];
        for (i, verts) in q_sets.iter().enumerate() {
            if verts.is_empty() {
                continue;
            }
            let lambda = match i {
                0 | 3 => lam("lambda_Q", verts, &|v| lambda_q[v]),
                1 => lam("min", verts, &|v| graph.vertices[v].min_coord as i64),
                2 => lam("-max", verts, &|v| -(graph.vertices[v].max_coord as i64)),
                _ => unreachable!(),
            };
            parts.push(Part {
                label: labels[i].to_string(),
                vertices: verts.clone(),
                lambda,
            });
        }
        gammas = Some(g);
    }

    // Parts partition preds(mqa) u preds(mqb) u {mqa, mqb}.
    {
        let mut covered = vec![0u8; anchored.graph.vertex_count()];
        for p in &parts {
            for &v in &p.vertices {
                covered[v] += 1;
            }
        }
        let mut expect: Vec<usize> = (0..anchored.graph.vertex_count())
            .filter(|&v| preds_mqa[v] || preds_mqb[v])
            .collect();
        expect.push(mqa);
        if !expect.contains(&mqb) {
            expect.push(mqb);
        }
        let got: Vec<usize> = covered
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, _)| v)
            .collect();
        let multi: Vec<usize> = covered
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 1)
            .map(|(v, _)| v)
            .collect();
        checks.record(
            "q_parts_tile_q",
            multi.is_empty() && set_eq(&got, &expect),
            || format!("multiply covered {multi:?}"),
        );
    }

    // Per-part verdicts: monotone along internal arcs, decreasing direct
    // successors, increasing direct predecessors.
    for p in &parts {
        let verdict = check_effectively_decreasing(
            &anchored,
            &p.vertices,
            &p.lambda,
            EffMode::SuccessorAndPredecessor,
        )?;
        checks.record(
            format!("monotone_{}", p.label),
            verdict.monotone_failures.is_empty(),
            || format!("{:?}", verdict.monotone_failures),
        );
        checks.record(
            format!("eff_succ_{}", p.label),
            verdict.succ_failures.is_empty(),
            || format!("{:?}", verdict.succ_failures),
        );
        checks.record(
            format!("eff_pred_{}", p.label),
            verdict.pred_failures.is_empty(),
            || format!("{:?}", verdict.pred_failures),
        );
        checks.record(
            format!("image_le_n_{}", p.label),
            p.lambda.image_size() <= n as usize,
            || format!("image size {}", p.lambda.image_size()),
        );
    }

    // Quotient over the Q parts is acyclic.
    {
        let acyclic = quotient_acyclic(&anchored, &parts).is_some();
        checks.record("quotient_q_acyclic", acyclic, || "cycle among Q parts".into());
    }
    // The measured part count never exceeds the 4 of the source-side
    // proposition (3 in case 1); the corollary allows 6.
    checks.record("prop_3_14_part_count", parts.len() <= 4, || {
        format!("{} parts", parts.len())
    });

    Ok(QSide {
        anchor,
        anchored,
        to_original,
        from_original,
        profile: aprofile,
        mqa,
        mqb,
        case2,
        indices,
        parts,
        preds_mqa,
        gammas,
        checks,
    })
}

/// Topologically order the quotient digraph over `parts` (vertices not in
/// any part are ignored). Returns None if the quotient has a cycle.
pub fn quotient_acyclic(o: &Orientation, parts: &[Part]) -> Option<Vec<usize>> {
    let nv = o.graph.vertex_count();
    let mut part_of = vec![usize::MAX; nv];
    for (i, p) in parts.iter().enumerate() {
        for &v in &p.vertices {
            part_of[v] = i;
        }
    }
    let k = parts.len();
    let mut adj = vec![std::collections::HashSet::new(); k];
    for (u, v) in o.arcs() {
        let (a, b) = (part_of[u], part_of[v]);
        if a != usize::MAX && b != usize::MAX && a != b {
            adj[a].insert(b);
        }
    }
    // Kahn
    let mut indeg = vec![0usize; k];
    for a in 0..k {
        for &b in &adj[a] {
            indeg[b] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..k).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::new();
    while let Some(i) = stack.pop() {
        order.push(i);
        for &b in &adj[i] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                stack.push(b);
            }
        }
    }
    (order.len() == k).then_some(order)
}

/// The cut face range: mqb's occurrence run restricted to the open arc
/// (k, l). For the generic mqb this is a single face; for a vertex sourcing
/// two consecutive faces it is both; for mqb = q (single cycle sink) the
/// middle of the source occurrence.
fn cut_bounds(
    afam: &FamilyProfile,
    mqb: usize,
    k: u16,
    l: u16,
) -> Result<(u16, u16)> {
    let n = afam.faces.len() as u16;
    let mut positions: Vec<u16> = Vec::new();
    for occ in &afam.q_side.occurrences {
        if occ.vertex != mqb {
            continue;
        }
        let mut p = occ.run_lo as u16;
        loop {
            positions.push(p % n);
            if p % n == occ.run_hi as u16 {
                break;
            }
            p += 1;
        }
    }
    if positions.is_empty() {
        return Err(AnalysisError::Internal("mqb has no occurrence".into()));
    }
    let strict: Vec<u16> = positions
        .iter()
        .copied()
        .filter(|&p| p > k && p < l)
        .collect();
    let pool = if strict.is_empty() { positions } else { strict };
    let lo = *pool.iter().min().unwrap();
    let hi = *pool.iter().max().unwrap();
    Ok((lo, hi))
}

/// Assemble the four directed source paths from the per-segment gamma data:
/// gamma_1: q down to mqa, gamma_2: q up to mqa, gamma_3: q up to mqb,
/// gamma_4: q down to mqb.
fn assemble_gammas(
    afam: &FamilyProfile,
    k: u16,
    l: u16,
    m: u16,
    n: u16,
    checks: &mut Checks,
) -> [Vec<usize>; 4] {
    let seg = |p: u16| -> &GammaPath { &afam.q_side.gammas[p as usize % n as usize] };
    let walk_down = |from: u16, to: u16, checks: &mut Checks, name: &str| -> Vec<usize> {
        // positions from, from-1, ..., to
        let mut path = vec![afam.sources[from as usize % n as usize]];
        let mut p = from;
        while p != to {
            p -= 1;
            let g = seg(p);
            match g.dir {
                Dir::Coincident => {}
                Dir::Backward => {
                    path.extend_from_slice(&g.vertices[1..]);
                }
                Dir::Forward => {
                    checks.record(
                        format!("{name}_uniform_direction"),
                        false,
                        || format!("segment {p} points away from the sink occurrence"),
                    );
                    return path;
                }
            }
        }
        path
    };
    let walk_up = |from: u16, to: u16, checks: &mut Checks, name: &str| -> Vec<usize> {
        let mut path = vec![afam.sources[from as usize % n as usize]];
        let mut p = from;
        while p != to {
            let g = seg(p);
            match g.dir {
                Dir::Coincident => {}
                Dir::Forward => {
                    path.extend_from_slice(&g.vertices[1..]);
                }
                Dir::Backward => {
                    checks.record(
                        format!("{name}_uniform_direction"),
                        false,
                        || format!("segment {p} points away from the sink occurrence"),
                    );
                    return path;
                }
            }
            p += 1;
        }
        path
    };
    let g1 = walk_down(k, 0, checks, "gamma_1");
    let g2 = walk_up(l, n, checks, "gamma_2");
    let g3 = walk_up(k, m, checks, "gamma_3");
    let g4 = walk_down(l, m, checks, "gamma_4");
    [g1, g2, g3, g4]
}
