//! Enumeration of vertex subsets that induce trees.
//!
//! Subsets are grown from their minimum vertex, one frontier vertex at a
//! time. A frontier vertex can join only if it has exactly one neighbor in
//! the current set; once it has two it can never join, so it is excluded for
//! good. Each induced subtree is produced exactly once.

use crate::graph::{Graph, VertexSubset};

/// Induced subtrees of `g` with at most `max_size` vertices, in
/// lexicographic order of their sorted vertex lists.
///
/// Works on graphs with at most 64 vertices.
pub fn enumerate_induced_subtrees(g: &Graph, max_size: usize) -> Vec<VertexSubset> {
    let n = g.vertex_count();
    let mut masks = Vec::new();
    for root in 0..n {
        masks.extend(subtree_masks_rooted(g, root, max_size, u64::MAX));
    }
    let mut out: Vec<VertexSubset> = masks.into_iter().map(|m| VertexSubset::from_mask(n, m)).collect();
    out.sort();
    out
}

/// The part of [`enumerate_induced_subtrees`] whose minimum vertex is
/// `root`. Subsets with different minima are disjoint work items.
pub fn induced_subtrees_with_min(g: &Graph, root: usize, max_size: usize) -> Vec<VertexSubset> {
    let n = g.vertex_count();
    let mut out: Vec<VertexSubset> =
        subtree_masks_rooted(g, root, max_size, u64::MAX).into_iter().map(|m| VertexSubset::from_mask(n, m)).collect();
    out.sort();
    out
}

/// Bitmask form: all induced subtrees whose vertices lie in `allowed` and
/// whose minimum vertex is `root`.
pub(crate) fn subtree_masks_rooted(g: &Graph, root: usize, max_size: usize, allowed: u64) -> Vec<u64> {
    assert!(g.vertex_count() <= 64, "subtree enumeration supports at most 64 vertices");
    let mut out = Vec::new();
    if max_size == 0 || allowed >> root & 1 == 0 {
        return out;
    }
    let adj = g.adjacency_masks();
    let below_root = (1u64 << root) - 1;
    let forbidden = !allowed | below_root;
    grow(&adj, 1 << root, adj[root] & !forbidden, forbidden, max_size, &mut out);
    out
}

fn grow(adj: &[u64], set: u64, frontier: u64, excluded: u64, max_size: usize, out: &mut Vec<u64>) {
    out.push(set);
    if set.count_ones() as usize >= max_size {
        return;
    }
    let mut excluded = excluded;
    let mut cand = frontier & !excluded;
    while cand != 0 {
        let u = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if (adj[u] & set).count_ones() == 1 {
            let next = set | 1 << u;
            let next_frontier = (frontier | adj[u]) & !next;
            grow(adj, next, next_frontier, excluded, max_size, out);
        }
        excluded |= 1 << u;
    }
}

/// All induced subtrees inside `allowed`, as bitmasks.
pub(crate) fn subtree_masks(g: &Graph, allowed: u64) -> Vec<u64> {
    let n = g.vertex_count();
    (0..n).flat_map(|root| subtree_masks_rooted(g, root, n, allowed)).collect()
}

/// Inclusion-maximal induced subtrees inside `allowed`, sorted by mask.
pub(crate) fn maximal_subtree_masks(g: &Graph, allowed: u64) -> Vec<u64> {
    let adj = g.adjacency_masks();
    let n = g.vertex_count();
    let mut out: Vec<u64> = subtree_masks(g, allowed)
        .into_iter()
        .filter(|&t| {
            (0..n).all(|w| t >> w & 1 == 1 || allowed >> w & 1 == 0 || (adj[w] & t).count_ones() != 1)
        })
        .collect();
    out.sort_unstable();
    out
}

/// Maximal induced subtrees of `g` restricted to `within`.
pub fn maximal_induced_subtrees(g: &Graph, within: &VertexSubset) -> Vec<VertexSubset> {
    let n = g.vertex_count();
    let mut out: Vec<VertexSubset> =
        maximal_subtree_masks(g, within.to_mask()).into_iter().map(|m| VertexSubset::from_mask(n, m)).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lists(subsets: &[VertexSubset]) -> Vec<Vec<usize>> {
        subsets.iter().map(|s| s.to_vec()).collect()
    }

    #[test]
    fn triangle_has_six_subtrees() {
        let got = lists(&enumerate_induced_subtrees(&Graph::complete(3), 3));
        assert_eq!(got, vec![vec![0], vec![0, 1], vec![0, 2], vec![1], vec![1, 2], vec![2]]);
    }

    #[test]
    fn path_subtrees_exclude_gaps() {
        let got = lists(&enumerate_induced_subtrees(&Graph::path(3), 3));
        assert_eq!(got, vec![vec![0], vec![0, 1], vec![0, 1, 2], vec![1], vec![1, 2], vec![2]]);
    }

    #[test]
    fn single_vertex() {
        assert_eq!(lists(&enumerate_induced_subtrees(&Graph::empty(1), 1)), vec![vec![0]]);
    }

    #[test]
    fn size_cap_is_respected() {
        let all = enumerate_induced_subtrees(&Graph::cycle(6), 6);
        let small = enumerate_induced_subtrees(&Graph::cycle(6), 2);
        assert!(small.iter().all(|s| s.count() <= 2));
        assert_eq!(small.len(), 6 + 6);
        // every proper arc of C6 is an induced path, the full cycle is not
        assert_eq!(all.len(), 6 * 5);
    }

    #[test]
    fn maximal_subtrees_of_small_graphs() {
        let c4 = Graph::cycle(4);
        let got = lists(&maximal_induced_subtrees(&c4, &VertexSubset::full(4)));
        assert_eq!(got, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        let k4 = Graph::complete(4);
        assert_eq!(maximal_induced_subtrees(&k4, &VertexSubset::full(4)).len(), 6);
        let p4 = Graph::path(4);
        let within = VertexSubset::from_vertices(4, [0, 2, 3]);
        assert_eq!(lists(&maximal_induced_subtrees(&p4, &within)), vec![vec![0], vec![2, 3]]);
    }
}
