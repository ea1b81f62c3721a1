//! Gale's evenness condition for the cyclic 4-polytope and constructive
//! enumeration of its facets (= vertices of the dual).

use crate::error::{Error, Result};

/// Decide whether a sorted 4-set of point indices spans a facet of the cyclic
/// 4-polytope on `n` points, i.e. whether it is a vertex of the dual.
///
/// The evenness condition: for every pair `i < j` of indices not in `s`, the
/// number of elements of `s` strictly between `i` and `j` must be even.
pub fn gale_is_vertex(s: &[u16], n: u16) -> Result<bool> {
    if n < 5 {
        return Err(Error::InvalidInput(format!("n = {n} < 5")));
    }
    if s.len() != 4 {
        return Err(Error::InvalidInput(format!(
            "facet set must have 4 elements, got {}",
            s.len()
        )));
    }
    let mut sorted = [s[0], s[1], s[2], s[3]];
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput("facet set has repeated elements".into()));
    }
    if sorted[3] >= n {
        return Err(Error::InvalidInput(format!(
            "element {} out of range [0,{})",
            sorted[3], n
        )));
    }
    Ok(evenness_holds(&sorted, n))
}

/// Literal quantifier sweep over all non-member pairs.
fn evenness_holds(sorted: &[u16; 4], n: u16) -> bool {
    for i in 0..n {
        if sorted.contains(&i) {
            continue;
        }
        for j in (i + 1)..n {
            if sorted.contains(&j) {
                continue;
            }
            let between = sorted.iter().filter(|&&k| i < k && k < j).count();
            if between % 2 != 0 {
                return false;
            }
        }
    }
    true
}

/// Constructively enumerate all Gale-valid 4-sets for `n >= 5`, in
/// lexicographic order.
///
/// Maximal runs of a valid set must have even length unless they touch the
/// boundary indices 0 or n-1, which gives exactly four shapes:
/// a 4-run, the two boundary 3+1 shapes, two 2-runs, and 1+2+1 with the
/// singletons pinned at the boundary.
pub fn enumerate_gale_sets(n: u16) -> Result<Vec<[u16; 4]>> {
    if n < 5 {
        return Err(Error::InvalidInput(format!("n = {n} < 5")));
    }
    let mut out = Vec::with_capacity(((n as usize) * (n as usize - 3)) / 2);
    // 4-runs {i..i+3}
    for i in 0..=(n - 4) {
        out.push([i, i + 1, i + 2, i + 3]);
    }
    // boundary 3-run + boundary singleton
    out.push([0, 1, 2, n - 1]);
    out.push([0, n - 3, n - 2, n - 1]);
    // two disjoint 2-runs {i,i+1} u {j,j+1}, j >= i+3
    for i in 0..n.saturating_sub(4) {
        for j in (i + 3)..=(n - 2) {
            out.push([i, i + 1, j, j + 1]);
        }
    }
    // {0} u {j,j+1} u {n-1}
    for j in 2..=n.saturating_sub(4) {
        out.push([0, j, j + 1, n - 1]);
    }
    out.sort_unstable();
    out.dedup();
    debug_assert_eq!(out.len(), (n as usize) * (n as usize - 3) / 2);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert!(gale_is_vertex(&[0, 1, 2, 3], 9).unwrap());
        assert!(!gale_is_vertex(&[0, 2, 4, 6], 9).unwrap());
        assert!(gale_is_vertex(&[0, 3, 4, 8], 9).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(gale_is_vertex(&[0, 1, 2], 9).is_err());
        assert!(gale_is_vertex(&[0, 1, 2, 9], 9).is_err());
        assert!(gale_is_vertex(&[0, 1, 1, 3], 9).is_err());
        assert!(gale_is_vertex(&[0, 1, 2, 3], 4).is_err());
    }

    #[test]
    fn enumeration_matches_predicate() {
        for n in 5..=20u16 {
            let listed = enumerate_gale_sets(n).unwrap();
            let mut brute = Vec::new();
            for a in 0..n {
                for b in (a + 1)..n {
                    for c in (b + 1)..n {
                        for d in (c + 1)..n {
                            if gale_is_vertex(&[a, b, c, d], n).unwrap() {
                                brute.push([a, b, c, d]);
                            }
                        }
                    }
                }
            }
            assert_eq!(listed, brute, "n = {n}");
            assert_eq!(listed.len(), (n as usize) * (n as usize - 3) / 2);
        }
    }
}
