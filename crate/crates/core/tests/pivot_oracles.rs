use std::sync::Arc;

use dcp_core::oracles::{random_edge_brute_force, random_facet_brute_force};
use dcp_core::orientation::{invert, orient_linear, random_generic_orientation, LinearFunctional};
use dcp_core::pivot::{
    directed_height, random_edge_all_starts, random_edge_expected, random_edge_monte_carlo,
    random_facet_monte_carlo, verify_flow, FacetEngine,
};
use dcp_core::polytope::{build_dual_cyclic, face_lattice, rat, realize_dual_cyclic, Rat};

fn graph(n: u16) -> Arc<dcp_core::polytope::PolytopeGraph> {
    Arc::new(build_dual_cyclic(n).unwrap())
}

fn frac(num: i64, den: i64) -> Rat {
    rat(num) / rat(den)
}

#[test]
fn k5_transitive_tournament_value() {
    // Hand recursion over K5: E(k) = 1 + avg(E(0..k-1)) gives 25/12 at the
    // source; frozen and cross-checked against the trajectory oracle.
    let g = graph(5);
    let r = realize_dual_cyclic(&g).unwrap();
    let c = LinearFunctional::from_ints([-1, 0, 0, 0]);
    let o = orient_linear(&g, &r, &c).unwrap();
    let source = o.global_source().unwrap();
    let flow = random_edge_expected(&o, source).unwrap();
    assert_eq!(flow.expected_length, frac(25, 12));
    assert_eq!(random_edge_brute_force(&o, source).unwrap(), frac(25, 12));
    let all = random_edge_all_starts(&o).unwrap();
    let max = all.iter().max().unwrap();
    assert_eq!(*max, frac(25, 12));
}

#[test]
fn flow_from_sink_is_empty() {
    let g = graph(7);
    let r = realize_dual_cyclic(&g).unwrap();
    let (o, _) = random_generic_orientation(&g, &r, 1).unwrap();
    let sink = o.global_sink().unwrap();
    let flow = random_edge_expected(&o, sink).unwrap();
    assert!(flow.arc_mass.is_empty());
    assert_eq!(flow.expected_length, rat(0));
}

#[test]
fn three_methods_agree_exactly() {
    // flow == recursion == brute-force trajectory enumeration on all AUSOs
    // from a seeded batch at n = 5 and 7.
    for n in [5u16, 7] {
        let g = graph(n);
        let r = realize_dual_cyclic(&g).unwrap();
        for seed in 0..25u64 {
            let (o, _) = random_generic_orientation(&g, &r, seed).unwrap();
            let all = random_edge_all_starts(&o).unwrap();
            for v in 0..g.vertex_count() {
                let flow = random_edge_expected(&o, v).unwrap();
                verify_flow(&o, &flow).unwrap();
                assert_eq!(flow.expected_length, all[v], "n={n} seed={seed} v={v}");
                let brute = random_edge_brute_force(&o, v).unwrap();
                assert_eq!(flow.expected_length, brute, "n={n} seed={seed} v={v}");
            }
        }
    }
}

#[test]
fn inverted_orientation_changes_expectation_in_general() {
    let g = graph(9);
    let r = realize_dual_cyclic(&g).unwrap();
    let mut differs = false;
    for seed in 0..10u64 {
        let (o, _) = random_generic_orientation(&g, &r, seed).unwrap();
        let oi = invert(&o);
        let a = random_edge_expected(&o, o.global_source().unwrap()).unwrap();
        let b = random_edge_expected(&oi, oi.global_source().unwrap()).unwrap();
        if a.expected_length != b.expected_length {
            differs = true;
        }
    }
    assert!(differs);
}

#[test]
fn monte_carlo_matches_exact_within_three_sigma() {
    let g = graph(5);
    let r = realize_dual_cyclic(&g).unwrap();
    let c = LinearFunctional::from_ints([-1, 0, 0, 0]);
    let o = orient_linear(&g, &r, &c).unwrap();
    let source = o.global_source().unwrap();
    let stats = random_edge_monte_carlo(&o, source, 100_000, 42).unwrap();
    let exact = 25.0 / 12.0;
    let sigma = (stats.variance / stats.samples as f64).sqrt();
    assert!((stats.mean - exact).abs() <= 3.0 * sigma, "mean {} exact {exact}", stats.mean);
    // determinism
    let again = random_edge_monte_carlo(&o, source, 100_000, 42).unwrap();
    assert_eq!(stats, again);
    // sink start
    let sink = o.global_sink().unwrap();
    let s0 = random_edge_monte_carlo(&o, sink, 10, 1).unwrap();
    assert_eq!(s0.mean, 0.0);
    assert_eq!(s0.variance, 0.0);
}

#[test]
fn paired_monte_carlo_three_sigma_rate() {
    // >= 99% of paired (exact, MC) runs fall within 3 sigma.
    let g = graph(7);
    let r = realize_dual_cyclic(&g).unwrap();
    let mut ok = 0;
    let runs = 100;
    for seed in 0..runs {
        let (o, _) = random_generic_orientation(&g, &r, seed).unwrap();
        let v = (seed as usize * 5) % g.vertex_count();
        let exact = random_edge_all_starts(&o).unwrap()[v].clone();
        let exact_f = rational_to_f64(&exact);
        let stats = random_edge_monte_carlo(&o, v, 4000, seed ^ 0xabcd).unwrap();
        let sigma = (stats.variance / stats.samples as f64).sqrt().max(1e-12);
        if (stats.mean - exact_f).abs() <= 3.0 * sigma || stats.variance == 0.0 {
            ok += 1;
        }
    }
    assert!(ok >= 99, "only {ok}/{runs} runs within 3 sigma");
}

fn rational_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap()
}

#[test]
fn facet_sink_start_is_zero_and_simplex_matches_oracle() {
    let g = graph(5);
    let lat = face_lattice(&g).unwrap();
    let r = realize_dual_cyclic(&g).unwrap();
    for seed in 0..20u64 {
        let (o, _) = random_generic_orientation(&g, &r, seed).unwrap();
        let mut eng = FacetEngine::new(&o, &lat).unwrap();
        let sink = o.global_sink().unwrap();
        assert_eq!(eng.expected(sink).unwrap(), rat(0));
        let source = o.global_source().unwrap();
        let fast = eng.expected(source).unwrap();
        let slow = random_facet_brute_force(&o, &lat, source).unwrap();
        assert_eq!(fast, slow, "seed {seed}");
    }
}

#[test]
fn facet_expected_on_polygon_is_half_size() {
    // Restricted to a large 2-face, random facet from the face source makes
    // one uniform edge choice and then walks a deterministic 1-vertex path:
    // expected steps = (side a + side b) / 2 = |F| / 2.
    let g = graph(9);
    let lat = face_lattice(&g).unwrap();
    let r = realize_dual_cyclic(&g).unwrap();
    let (o, _) = random_generic_orientation(&g, &r, 3).unwrap();
    let mut eng = FacetEngine::new(&o, &lat).unwrap();
    for f in &g.large_faces {
        let fid = lat
            .face_id(&[f.facet_pair.0.min(f.facet_pair.1), f.facet_pair.0.max(f.facet_pair.1)])
            .unwrap();
        let src = o.induced_source(&f.cycle).unwrap();
        let e = eng.expected_within(src, fid).unwrap();
        assert_eq!(e, frac(f.cycle.len() as i64, 2), "face {}", f.index);
    }
}

#[test]
fn facet_min_le_mean_le_max_sample() {
    let g = graph(7);
    let lat = face_lattice(&g).unwrap();
    let r = realize_dual_cyclic(&g).unwrap();
    for seed in 0..50u64 {
        let (o, _) = random_generic_orientation(&g, &r, seed).unwrap();
        let v = (seed as usize * 3) % g.vertex_count();
        let mut eng = FacetEngine::new(&o, &lat).unwrap();
        let mean = eng.expected(v).unwrap();
        let min = eng.min_steps(v, true).unwrap();
        assert!(rat(min as i64) <= mean, "seed {seed}");
        let mc = random_facet_monte_carlo(&o, &lat, v, 500, seed).unwrap();
        assert!(min <= mc.min, "seed {seed}");
        let sigma = (mc.variance / mc.samples as f64).sqrt().max(1e-9);
        let mean_f = rational_to_f64(&mean);
        assert!(
            (mc.mean - mean_f).abs() <= 4.0 * sigma + 1e-9,
            "seed {seed}: mc {} exact {}",
            mc.mean,
            mean_f
        );
    }
}

#[test]
fn height_on_simplex_is_one_and_zero_at_sink() {
    let g = graph(5);
    let r = realize_dual_cyclic(&g).unwrap();
    let c = LinearFunctional::from_ints([-1, 0, 0, 0]);
    let o = orient_linear(&g, &r, &c).unwrap();
    let source = o.global_source().unwrap();
    let sink = o.global_sink().unwrap();
    assert_eq!(directed_height(&o, source).unwrap(), 1);
    assert_eq!(directed_height(&o, sink).unwrap(), 0);
}
