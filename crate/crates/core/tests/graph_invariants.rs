use std::collections::HashSet;

use dcp_core::polytope::{
    build_dual_cyclic, build_polygon_product, enumerate_gale_sets, gale_is_vertex,
    parse_polytope_spec, PolytopeKind,
};

#[test]
fn dual_cyclic_counts_and_degrees() {
    for n in 5..=30u16 {
        let g = build_dual_cyclic(n).unwrap();
        assert_eq!(g.vertex_count(), (n as usize) * (n as usize - 3) / 2, "n={n}");
        assert_eq!(g.edge_count(), 2 * g.vertex_count());
        for a in &g.adjacency {
            let set: HashSet<usize> = a.iter().copied().collect();
            assert_eq!(set.len(), 4);
        }
        for f in &g.large_faces {
            assert_eq!(f.cycle.len(), n as usize - 2, "n={n} face {}", f.index);
        }
    }
}

#[test]
fn n21_has_189_vertices() {
    let g = build_dual_cyclic(21).unwrap();
    assert_eq!(g.vertex_count(), 189);
}

#[test]
fn n5_is_complete_graph() {
    let g = build_dual_cyclic(5).unwrap();
    assert_eq!(g.vertex_count(), 5);
    for u in 0..5 {
        for v in 0..5 {
            if u != v {
                assert!(g.edge_id(u, v).is_some());
            }
        }
    }
}

#[test]
fn membership_counts_and_minmax() {
    for n in [6u16, 9, 13] {
        let g = build_dual_cyclic(n).unwrap();
        for v in &g.vertices {
            let m = v.large_face_memberships.len();
            assert!(m == 2 || m == 3, "vertex {:?} lies on {m} large faces", v.facet_set);
            assert_eq!(v.min_coord, *v.large_face_memberships.iter().min().unwrap());
            assert_eq!(v.max_coord, *v.large_face_memberships.iter().max().unwrap());
        }
    }
}

#[test]
fn large_faces_cover_vertices_and_edges() {
    for n in [5u16, 8, 12] {
        let g = build_dual_cyclic(n).unwrap();
        let mut on_face: HashSet<usize> = HashSet::new();
        for f in &g.large_faces {
            for &v in &f.cycle {
                on_face.insert(v);
            }
        }
        assert_eq!(on_face.len(), g.vertex_count());
        for &(u, v) in &g.edges {
            assert!(
                !g.edge_large_faces(u, v).is_empty(),
                "edge ({u},{v}) lies on no large face"
            );
        }
    }
}

#[test]
fn boundary_walks_are_simple_cycles() {
    for n in [5u16, 9, 14] {
        let g = build_dual_cyclic(n).unwrap();
        for f in &g.large_faces {
            let set: HashSet<usize> = f.cycle.iter().copied().collect();
            assert_eq!(set.len(), f.cycle.len());
            for p in 0..f.cycle.len() {
                let u = f.cycle[p];
                let v = f.cycle[(p + 1) % f.cycle.len()];
                assert!(g.edge_id(u, v).is_some(), "walk step ({u},{v}) is not an edge");
            }
        }
    }
}

/// min/max identify a vertex uniquely, with one documented exception: the two
/// wrap vertices incident to both F_0 and F_{n-1} share (0, n-1). Off the
/// wrap face the map is injective, which is the form the fence embeddings
/// rely on.
#[test]
fn vertex_identity_by_min_max() {
    for n in [7u16, 9, 13, 20] {
        let g = build_dual_cyclic(n).unwrap();
        let mut seen: std::collections::HashMap<(u16, u16), Vec<usize>> = Default::default();
        for v in &g.vertices {
            seen.entry((v.min_coord, v.max_coord)).or_default().push(v.id);
        }
        let collisions: Vec<_> = seen.values().filter(|ids| ids.len() > 1).collect();
        assert_eq!(collisions.len(), 1, "n={n}");
        let pair = collisions[0];
        assert_eq!(pair.len(), 2);
        for &id in pair {
            let m = &g.vertices[id].large_face_memberships;
            assert!(m.contains(&0) && m.contains(&(n - 1)));
        }
        // injective away from the wrap face
        let mut rest: HashSet<(u16, u16)> = HashSet::new();
        for v in &g.vertices {
            if v.large_face_memberships.contains(&(n - 1)) {
                continue;
            }
            assert!(rest.insert((v.min_coord, v.max_coord)));
        }
    }
}

#[test]
fn renumbering_symmetry_preserves_structure() {
    // f_i -> f_{i+c} and the reversal keeping f_0 are combinatorial
    // automorphisms: Gale sets map to Gale sets and adjacency is preserved.
    for n in [7u16, 10] {
        let g = build_dual_cyclic(n).unwrap();
        for &(c, rev) in &[(1u16, false), (3, false), (0, true), (2, true)] {
            let t = |i: u16| -> u16 {
                if rev {
                    (c + n - i) % n
                } else {
                    (i + c) % n
                }
            };
            let map: Vec<usize> = g
                .vertices
                .iter()
                .map(|v| {
                    let mut fs = v.facet_set.map(t);
                    fs.sort_unstable();
                    assert!(gale_is_vertex(&fs, n).unwrap());
                    g.vertex_by_facets(&fs).unwrap()
                })
                .collect();
            for &(u, v) in &g.edges {
                assert!(g.edge_id(map[u], map[v]).is_some());
            }
            // F_i maps to F_{t(i)} or F_{t(i)-1} depending on direction
            for f in &g.large_faces {
                let img: HashSet<usize> = f.cycle.iter().map(|&v| map[v]).collect();
                let target = if rev { (t(f.index) + n - 1) % n } else { t(f.index) };
                let expect: HashSet<usize> = g.large_faces[target as usize]
                    .cycle
                    .iter()
                    .copied()
                    .collect();
                assert_eq!(img, expect);
            }
        }
    }
}

#[test]
fn polygon_product_counts() {
    let g = build_polygon_product(10, 5).unwrap();
    assert_eq!(g.vertex_count(), 50);
    assert_eq!(g.facet_count, 15);

    let g = build_polygon_product(3, 3).unwrap();
    assert_eq!(g.vertex_count(), 9);
    for a in &g.adjacency {
        assert_eq!(a.iter().collect::<HashSet<_>>().len(), 4);
    }

    let g = build_polygon_product(4, 4).unwrap();
    assert_eq!(g.large_face_count(), 8);
    for f in &g.large_faces {
        assert_eq!(f.cycle.len(), 4);
    }
}

#[test]
fn polygon_product_adjacency_rule() {
    let (k, l) = (6u16, 4u16);
    let g = build_polygon_product(k, l).unwrap();
    // locate (a, b) by facet set
    let vid = |a: u16, b: u16| -> usize {
        let mut fs = [(a + k - 1) % k, a, k + (b + l - 1) % l, k + b];
        fs.sort_unstable();
        g.vertex_by_facets(&fs).unwrap()
    };
    for a in 0..k {
        for b in 0..l {
            let v = vid(a, b);
            let expected: HashSet<usize> = [
                vid((a + 1) % k, b),
                vid((a + k - 1) % k, b),
                vid(a, (b + 1) % l),
                vid(a, (b + l - 1) % l),
            ]
            .into_iter()
            .collect();
            let actual: HashSet<usize> = g.adjacency[v].iter().copied().collect();
            assert_eq!(actual, expected);
        }
    }
}

#[test]
fn invalid_inputs_rejected() {
    assert!(build_dual_cyclic(4).is_err());
    assert!(build_polygon_product(2, 5).is_err());
    assert!(build_polygon_product(5, 2).is_err());
}

#[test]
fn spec_strings_parse() {
    assert_eq!(
        parse_polytope_spec("dual-cyclic:13").unwrap(),
        PolytopeKind::DualCyclic { n: 13 }
    );
    assert_eq!(
        parse_polytope_spec("product:10x5").unwrap(),
        PolytopeKind::PolygonProduct { k: 10, l: 5 }
    );
    assert!(parse_polytope_spec("cube:3").is_err());
}

#[test]
fn gale_enumeration_is_sorted_and_valid() {
    for n in [5u16, 11, 17] {
        let sets = enumerate_gale_sets(n).unwrap();
        assert!(sets.windows(2).all(|w| w[0] < w[1]));
        for s in &sets {
            assert!(gale_is_vertex(s, n).unwrap());
        }
    }
}

#[test]
fn json_dump_shape() {
    let g = build_dual_cyclic(6).unwrap();
    let j = g.to_json();
    assert_eq!(j["kind"], "dual-cyclic");
    assert_eq!(j["n"], 6);
    assert_eq!(j["vertices"].as_array().unwrap().len(), 9);
    assert_eq!(j["edges"].as_array().unwrap().len(), 18);
    assert_eq!(j["large_faces"].as_array().unwrap().len(), 6);
}
