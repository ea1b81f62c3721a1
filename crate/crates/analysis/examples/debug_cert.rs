//! Dev harness: dump the partition structure of one failing instance.

use std::sync::Arc;

use dcp_analysis::certificate::assemble_certificate;
use dcp_analysis::partition::{admissible_anchors, build_q_side};
use dcp_analysis::profile::compute_profile;
use dcp_core::orientation::{invert, random_generic_orientation};
use dcp_core::polytope::{build_dual_cyclic, realize_dual_cyclic};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: u16 = args[0].parse().unwrap();
    let seed: u64 = args[1].parse().unwrap();
    let s_side: bool = args.get(2).map(|s| s == "s").unwrap_or(false);

    let graph = Arc::new(build_dual_cyclic(n).unwrap());
    let real = realize_dual_cyclic(&graph).unwrap();
    let (o0, _) = random_generic_orientation(&graph, &real, seed).unwrap();
    let o = if s_side { invert(&o0) } else { o0.clone() };

    let (profile, _checks) = compute_profile(&o).unwrap();
    let fam = profile.single();
    println!("faces: {:?}", fam.faces);
    println!("sources: {:?}", fam.sources);
    println!("sinks:   {:?}", fam.sinks);
    for occ in &fam.q_side.occurrences {
        println!("occ {:?}", occ);
    }
    println!("mqa={} mqb={}", fam.q_side.mqa, fam.q_side.mqb);
    let anchors = admissible_anchors(&profile, n);
    println!("anchors: {:?}", anchors);
    let q = build_q_side(&o, &profile, anchors[0]).unwrap();
    println!("case2: {}", q.case2);
    println!("indices: {:?}", q.indices);
    println!("anchored mqa={} mqb={}", q.mqa, q.mqb);
    let agraph = &q.anchored.graph;
    for p in &q.parts {
        let coords: Vec<(usize, u16, u16)> = p
            .vertices
            .iter()
            .map(|&v| (v, agraph.vertices[v].min_coord, agraph.vertices[v].max_coord))
            .collect();
        println!("part {}: {:?}", p.label, coords);
    }
    // arcs between parts
    let nv = agraph.vertex_count();
    let mut part_of = vec![usize::MAX; nv];
    for (i, p) in q.parts.iter().enumerate() {
        for &v in &p.vertices {
            part_of[v] = i;
        }
    }
    for (u, v) in q.anchored.arcs() {
        let (a, b) = (part_of[u], part_of[v]);
        if a != b && a != usize::MAX && b != usize::MAX {
            println!(
                "quotient arc {} -> {} via ({u},{v}) coords ({},{})->({},{})",
                q.parts[a].label,
                q.parts[b].label,
                agraph.vertices[u].min_coord,
                agraph.vertices[u].max_coord,
                agraph.vertices[v].min_coord,
                agraph.vertices[v].max_coord
            );
        }
    }
    for a in q.checks.failures() {
        println!("FAIL {}: {}", a.name, a.witness.as_deref().unwrap_or(""));
    }
    match assemble_certificate(&o0) {
        Ok(c) => {
            for a in c.checks.failures() {
                println!("CERT FAIL {}: {}", a.name, a.witness.as_deref().unwrap_or(""));
            }
        }
        Err(e) => println!("CERT ERROR {e}"),
    }
}
