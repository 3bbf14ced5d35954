//! Exact isomorphism test for small graphs by backtracking.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const ISO_LIMIT: usize = 10;

pub fn are_isomorphic_small(a: &Graph, b: &Graph) -> Result<bool> {
    are_isomorphic_with_limit(a, b, ISO_LIMIT)
}

pub fn are_isomorphic_with_limit(a: &Graph, b: &Graph, limit: usize) -> Result<bool> {
    for g in [a, b] {
        if g.order() > limit {
            return Err(Error::SizeLimitExceeded {
                what: "graph order",
                actual: g.order(),
                limit,
            });
        }
    }
    Ok(isomorphic_unchecked(a, b))
}

/// Backtracking without the size guard; callers control the scale.
pub(crate) fn isomorphic_unchecked(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    if a.degree_sequence() != b.degree_sequence() {
        return false;
    }
    let n = a.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(a.degree(v)));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(a, b, &order, 0, &mut map, &mut used)
}

fn extend(a: &Graph, b: &Graph, order: &[usize], depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..b.order() {
        if used[w] || a.degree(v) != b.degree(w) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| a.has_edge(u, v) == b.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(a, b, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeled_path() {
        let p = Graph::path(3);
        let q = Graph::from_edges(3, [(0, 2), (2, 1)]).unwrap();
        assert!(are_isomorphic_small(&p, &q).unwrap());
    }

    #[test]
    fn different_size() {
        assert!(!are_isomorphic_small(&Graph::complete(3), &Graph::path(3)).unwrap());
    }

    #[test]
    fn same_degrees_not_isomorphic() {
        let c6 = Graph::cycle(6);
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!are_isomorphic_small(&c6, &two_triangles).unwrap());
    }

    #[test]
    fn size_guard() {
        let big = Graph::path(11);
        assert!(matches!(
            are_isomorphic_small(&big, &big),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }
}
