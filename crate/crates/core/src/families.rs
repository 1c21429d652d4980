//! Small graph families for exhaustive checks.

use std::collections::BTreeSet;

use crate::graph::Graph;

/// Largest order for [`connected_graphs`] (canonical forms try all
/// permutations).
pub const MAX_GRAPH_ORDER: usize = 6;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut perm, &mut out);
    out
}

fn heap_permute(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(perm.clone());
        return;
    }
    heap_permute(k - 1, perm, out);
    for i in 0..k - 1 {
        let j = if k % 2 == 0 { i } else { 0 };
        perm.swap(j, k - 1);
        heap_permute(k - 1, perm, out);
    }
}

/// Connected graphs on exactly `n` vertices, one per isomorphism class, in a
/// fixed order.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_GRAPH_ORDER, "graph enumeration is limited to {MAX_GRAPH_ORDER} vertices");
    if n == 0 {
        return Vec::new();
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut index = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        index[u][v] = i;
        index[v][u] = i;
    }
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        if (mask.count_ones() as usize) + 1 < n || !mask_connected(n, &pairs, mask) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &(u, v))| acc | 1 << index[p[u]][p[v]])
            })
            .min()
            .expect("at least one permutation");
        if seen.insert(canon) {
            let edges = pairs.iter().enumerate().filter(|&(i, _)| canon >> i & 1 == 1).map(|(_, &e)| e);
            out.push(Graph::new(n, edges).expect("valid edges"));
        }
    }
    out
}

fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut reach = 1u32;
    loop {
        let mut next = reach;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 && (next >> u & 1 == 1 || next >> v & 1 == 1) {
                next |= 1 << u | 1 << v;
            }
        }
        if next == reach {
            return reach.count_ones() as usize == n;
        }
        reach = next;
    }
}

/// Connected graphs with 1 to `max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

/// Canonical string of a tree rooted at `root` (parenthesized children,
/// sorted).
fn rooted_code(g: &Graph, root: usize, parent: usize) -> String {
    let mut children: Vec<String> =
        g.neighbors(root).iter().filter(|&&w| w != parent).map(|&w| rooted_code(g, w, root)).collect();
    children.sort();
    format!("({})", children.concat())
}

/// Isomorphism-invariant code of a tree: the smallest rooted code over its
/// centers.
pub fn tree_code(g: &Graph) -> String {
    centers(g).into_iter().map(|c| rooted_code(g, c, usize::MAX)).min().unwrap_or_default()
}

fn centers(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            degree[v] = 0;
            for &w in g.neighbors(v) {
                if degree[w] > 1 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    layer
}

/// Trees on exactly `n` vertices up to isomorphism, grown leaf by leaf.
pub fn trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..size - 1 {
                let mut edges = t.edges().to_vec();
                edges.push((v, size - 1));
                let grown = Graph::new(size, edges).expect("adding a leaf keeps the graph simple");
                if seen.insert(tree_code(&grown)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}

pub fn trees_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(trees).collect()
}

/// Tree from a Prüfer sequence over `0..seq.len() + 2`.
pub fn tree_from_pruefer(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges).expect("Prüfer sequences decode to trees")
}
