//! Exact rational coordinates for C*(n) by polarizing the moment-curve hull.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polytope::{PolytopeGraph, PolytopeKind};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact coordinates of every combinatorial vertex of C*(n).
#[derive(Debug, Clone)]
pub struct Realization {
    pub n: u16,
    /// Moment-curve points translated so the origin is interior.
    pub centered_points: Vec<[Rat; 4]>,
    /// coords[v] solves <p_i, y> = 1 for the four i in v's facet set.
    pub coords: Vec<[Rat; 4]>,
}

impl Realization {
    pub fn functional_value(&self, c: &[Rat; 4], v: usize) -> Rat {
        dot(c, &self.coords[v])
    }
}

fn dot(a: &[Rat; 4], b: &[Rat; 4]) -> Rat {
    let mut s = Rat::zero();
    for i in 0..4 {
        s += &a[i] * &b[i];
    }
    s
}

/// Solve A y = b for a 4x4 rational system by Gaussian elimination with
/// partial (first nonzero) pivoting. Returns None for singular systems.
pub fn solve4(a: &[[Rat; 4]; 4], b: &[Rat; 4]) -> Option<[Rat; 4]> {
    let mut m: Vec<Vec<Rat>> = (0..4)
        .map(|r| {
            let mut row: Vec<Rat> = a[r].to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].clone();
        for c in col..5 {
            let v = &m[col][c] / &inv;
            m[col][c] = v;
        }
        for r in 0..4 {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..5 {
                    let v = &m[r][c] - &factor * &m[col][c];
                    m[r][c] = v;
                }
            }
        }
    }
    Some([
        m[0][4].clone(),
        m[1][4].clone(),
        m[2][4].clone(),
        m[3][4].clone(),
    ])
}

/// Realize C*(n): translate the moment-curve points by their centroid, then
/// each Gale vertex is the unique solution of its four tangent equalities.
/// Every other facet inequality must hold strictly; that is asserted here.
pub fn realize_dual_cyclic(graph: &PolytopeGraph) -> Result<Realization> {
    let n = match graph.kind {
        PolytopeKind::DualCyclic { n } => n,
        _ => return Err(Error::UnsupportedKind("dual-cyclic")),
    };
    let points: Vec<[Rat; 4]> = (0..n as i64)
        .map(|i| [rat(i), rat(i * i), rat(i * i * i), rat(i * i * i * i)])
        .collect();
    let mut centroid = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
    for p in &points {
        for d in 0..4 {
            centroid[d] += &p[d];
        }
    }
    let n_rat = rat(n as i64);
    for d in 0..4 {
        centroid[d] /= &n_rat;
    }
    let centered_points: Vec<[Rat; 4]> = points
        .iter()
        .map(|p| {
            [
                &p[0] - &centroid[0],
                &p[1] - &centroid[1],
                &p[2] - &centroid[2],
                &p[3] - &centroid[3],
            ]
        })
        .collect();

    let one = Rat::one();
    let mut coords = Vec::with_capacity(graph.vertex_count());
    for v in &graph.vertices {
        let rows: [[Rat; 4]; 4] = std::array::from_fn(|r| {
            centered_points[v.facet_set[r] as usize].clone()
        });
        let b: [Rat; 4] = std::array::from_fn(|_| one.clone());
        let y = solve4(&rows, &b).ok_or_else(|| {
            Error::Internal(format!("singular tangent system for vertex {:?}", v.facet_set))
        })?;
        coords.push(y);
    }

    // Substitution sweep: equality exactly on the facet set, strict elsewhere.
    for v in &graph.vertices {
        for i in 0..n {
            let val = dot(&centered_points[i as usize], &coords[v.id]);
            if v.facet_set.contains(&i) {
                if val != one {
                    return Err(Error::Internal(format!(
                        "vertex {:?} misses tangency on facet {i}",
                        v.facet_set
                    )));
                }
            } else if val >= one {
                return Err(Error::Internal(format!(
                    "vertex {:?} violates strict inequality on facet {i}",
                    v.facet_set
                )));
            }
        }
    }

    Ok(Realization {
        n,
        centered_points,
        coords,
    })
}

/// Realize a polygon product with both polygons on parabolas: polygon
/// vertex i sits at (i, i^2), so vertex (a, b) of the product has
/// coordinates (a, a^2, b, b^2). Points on a parabola are in convex
/// position and the hull edges join consecutive indices plus the closing
/// edge, matching the combinatorial facet layout.
pub fn realize_polygon_product(graph: &PolytopeGraph) -> Result<Realization> {
    let (k, l) = match graph.kind {
        PolytopeKind::PolygonProduct { k, l } => (k, l),
        _ => return Err(Error::UnsupportedKind("polygon product")),
    };
    let mut coords = Vec::with_capacity(graph.vertex_count());
    for v in &graph.vertices {
        // memberships are (a, k + b)
        let a = v.large_face_memberships[0] as i64;
        let b = (v.large_face_memberships[1] - k) as i64;
        coords.push([rat(a), rat(a * a), rat(b), rat(b * b)]);
    }
    Ok(Realization {
        n: k + l,
        centered_points: Vec::new(),
        coords,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::build_dual_cyclic;

    #[test]
    fn n5_vertex_solves_and_separates() {
        let g = build_dual_cyclic(5).unwrap();
        let r = realize_dual_cyclic(&g).unwrap();
        let v = g.vertex_by_facets(&[0, 1, 2, 3]).unwrap();
        // the non-incident facet inequality is strict
        let val = dot(&r.centered_points[4], &r.coords[v]);
        assert!(val < rat(1));
    }

    #[test]
    fn n7_full_substitution_sweep() {
        // realize_dual_cyclic itself runs the sweep; reaching Ok is the test.
        let g = build_dual_cyclic(7).unwrap();
        let r = realize_dual_cyclic(&g).unwrap();
        assert_eq!(r.coords.len(), 14);
    }

    #[test]
    fn n5_simplex_is_full_dimensional() {
        let g = build_dual_cyclic(5).unwrap();
        let r = realize_dual_cyclic(&g).unwrap();
        // The five realized vertices span R^4: the differences from vertex 0
        // form a rank-4 system, i.e. solve4 on them succeeds for any rhs.
        let diffs: [[Rat; 4]; 4] = std::array::from_fn(|i| {
            let a = &r.coords[i + 1];
            let b = &r.coords[0];
            std::array::from_fn(|d| &a[d] - &b[d])
        });
        let rhs: [Rat; 4] = std::array::from_fn(|_| rat(1));
        assert!(solve4(&diffs, &rhs).is_some());
    }

    #[test]
    fn realization_edge_consistency() {
        // Adjacent vertices share exactly 3 tight facet inequalities.
        let g = build_dual_cyclic(8).unwrap();
        let r = realize_dual_cyclic(&g).unwrap();
        let one = Rat::one();
        for &(u, v) in &g.edges {
            let mut shared_tight = 0;
            for i in 0..8u16 {
                let tu = dot(&r.centered_points[i as usize], &r.coords[u]) == one;
                let tv = dot(&r.centered_points[i as usize], &r.coords[v]) == one;
                if tu && tv {
                    shared_tight += 1;
                }
            }
            assert_eq!(shared_tight, 3);
        }
    }
}
