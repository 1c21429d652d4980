//! Brute-force reference implementations shared by the integration tests.
//! They work from the definitions on bitmasks and do not call into the
//! library beyond building graphs.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use ucat::{ExactFunction, Graph, Rational};

pub fn adjacency(g: &Graph) -> Vec<u64> {
    let mut adj = vec![0u64; g.vertex_count()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&v| mask >> v & 1 == 1)
}

pub fn is_connected_mask(adj: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let mut seen = mask & mask.wrapping_neg();
    loop {
        let grown = bits(seen).fold(seen, |s, v| s | (adj[v] & mask));
        if grown == seen {
            return seen == mask;
        }
        seen = grown;
    }
}

pub fn induced_edges(adj: &[u64], mask: u64) -> u32 {
    bits(mask).map(|v| (adj[v] & mask).count_ones()).sum::<u32>() / 2
}

/// Nonempty, connected and with one edge fewer than vertices.
pub fn is_tree_mask(adj: &[u64], mask: u64) -> bool {
    is_connected_mask(adj, mask) && induced_edges(adj, mask) + 1 == mask.count_ones()
}

/// Unimodality straight from the definition: every superlevel set
/// `{f >= c}`, `c > 0`, of the edge-linear extension is contractible or
/// empty, and `f` is not identically zero.
///
/// On an edge the extension is linear, so it reaches `c` somewhere inside the
/// edge only if an endpoint does. An edge with both endpoints at least `c`
/// lies entirely in the set; an edge with exactly one such endpoint
/// contributes a segment hanging off that endpoint, which deformation
/// retracts onto it. So `{f >= c}` is homotopy equivalent to the subgraph
/// induced by `{v : f(v) >= c}` and is contractible exactly when that
/// subgraph is a tree. Thresholds are the critical values and the midpoints
/// between consecutive ones.
pub fn unimodal_by_definition(g: &Graph, values: &[i64]) -> bool {
    assert!(values.iter().all(|&x| x >= 0));
    let adj = adjacency(g);
    let mut levels: Vec<i64> = values.iter().copied().filter(|&x| x > 0).collect();
    levels.sort_unstable();
    levels.dedup();
    if levels.is_empty() {
        return false;
    }
    // doubled thresholds keep the midpoints integral
    let mut thresholds: Vec<i64> = Vec::new();
    let mut below = 0;
    for &c in &levels {
        thresholds.push(below + c);
        thresholds.push(2 * c);
        below = c;
    }
    thresholds.push(2 * below + 1);
    thresholds.iter().all(|&c2| {
        let set = (0..values.len()).filter(|&v| 2 * values[v] >= c2).fold(0u64, |m, v| m | 1 << v);
        set == 0 || is_tree_mask(&adj, set)
    })
}

/// Every vertex set of `g` inducing a tree, as masks.
pub fn induced_tree_masks(g: &Graph) -> Vec<u64> {
    let adj = adjacency(g);
    (1..1u64 << g.vertex_count()).filter(|&m| is_tree_mask(&adj, m)).collect()
}

/// The graph with every edge subdivided once; edge `i` becomes vertex
/// `n + i`.
pub fn barycentric(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut edges = Vec::new();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        edges.push((u, n + i));
        edges.push((n + i, v));
    }
    Graph::new(n + g.edge_count(), edges).unwrap()
}

/// Fewest open stars of vertex sets that are contractible and cover the
/// graph, viewed as a 1-complex.
///
/// The open star of a vertex set `S` consists of `S`, the edges inside `S`
/// and the half-open edges leaving `S`. Each half-open edge retracts onto its
/// endpoint in `S`, so the star is contractible exactly when `S` induces a
/// tree. Every point of an edge lies in the star of either endpoint, so the
/// stars cover the graph once their vertex sets cover the vertices. Subsets
/// are enumerated exhaustively.
pub fn min_open_star_cover(g: &Graph) -> usize {
    let adj = adjacency(g);
    let n = g.vertex_count();
    let full = (1u64 << n) - 1;
    let stars: Vec<u64> = (1..=full).filter(|&m| is_tree_mask(&adj, m)).collect();
    (1..=n).find(|&k| covers(&stars, full, 0, k)).unwrap()
}

/// The same count after subdividing every edge once, so that open sets may
/// end in the middle of an edge. Only inclusion-maximal trees are kept; a
/// tree that is not maximal grows by a single adjacent vertex.
pub fn min_subdivided_open_star_cover(g: &Graph) -> usize {
    let sd = barycentric(g);
    let adj = adjacency(&sd);
    let n = sd.vertex_count();
    assert!(n <= 24, "subdivision too large for exhaustive search");
    let full = (1u64 << n) - 1;
    let maximal: Vec<u64> = (1..=full)
        .filter(|&t| is_tree_mask(&adj, t))
        .filter(|&t| {
            let frontier = bits(t).fold(0, |f, v| f | adj[v]) & !t;
            bits(frontier).all(|v| !is_tree_mask(&adj, t | 1 << v))
        })
        .collect();
    (1..=n).find(|&k| covers(&maximal, full, 0, k)).unwrap()
}

fn covers(sets: &[u64], full: u64, covered: u64, left: usize) -> bool {
    if covered == full {
        return true;
    }
    if left == 0 {
        return false;
    }
    let v = (!covered & full).trailing_zeros();
    sets.iter().filter(|&&s| s >> v & 1 == 1).any(|&s| covers(sets, full, covered | s, left - 1))
}

pub fn min_vertex_cover(g: &Graph) -> usize {
    let n = g.vertex_count();
    (0..1u64 << n)
        .filter(|&m| g.edges().iter().all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

pub fn colorable(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    let mut colors = vec![0usize; n];
    loop {
        if g.edges().iter().all(|&(u, v)| colors[u] != colors[v]) {
            return true;
        }
        // odometer over all k^n assignments
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            colors[i] += 1;
            if colors[i] < k {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

pub fn chromatic_number(g: &Graph) -> usize {
    (1..=g.vertex_count().max(1)).find(|&k| colorable(g, k)).unwrap()
}

/// Whether the vertices split into two disjoint sets, each empty or inducing
/// a tree.
pub fn splits_into_two_trees(g: &Graph) -> bool {
    let adj = adjacency(g);
    let full = (1u64 << g.vertex_count()) - 1;
    let ok = |m: u64| m == 0 || is_tree_mask(&adj, m);
    (0..=full).any(|a| ok(a) && ok(full & !a))
}

/// Uniformly random labelled tree on `n >= 1` vertices (Prüfer decoding).
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
    if n < 2 {
        return Graph::new(n, []).unwrap();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges).unwrap()
}

/// Random connected graph: a random tree plus each remaining pair with
/// probability `extra`.
pub fn random_connected(rng: &mut impl Rng, n: usize, extra: f64) -> Graph {
    let tree = random_tree(rng, n);
    let mut edges: Vec<(usize, usize)> = tree.edges().to_vec();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// All value vectors in `{0, ..., top}^n`.
pub fn value_vectors(n: usize, top: i64) -> impl Iterator<Item = Vec<i64>> {
    let base = (top + 1) as usize;
    (0..base.pow(n as u32)).map(move |mut code| {
        (0..n)
            .map(|_| {
                let d = (code % base) as i64;
                code /= base;
                d
            })
            .collect()
    })
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

/// Values scaled to integers by their common denominator; unimodality is
/// invariant under positive scaling.
pub fn as_ints(values: &[Rational]) -> Vec<i64> {
    let den = values.iter().fold(BigInt::from(1), |acc, v| lcm(&acc, v.denom()));
    values.iter().map(|v| (v.numer() * (&den / v.denom())).to_i64().unwrap()).collect()
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    a * b / x
}

/// Sum of components equals the target and each component is unimodal by
/// the superlevel-set definition.
pub fn certificate_holds(g: &Graph, f: &ExactFunction, parts: &[ExactFunction]) -> bool {
    let n = g.vertex_count();
    (0..n).all(|v| parts.iter().map(|p| p.value(v).clone()).sum::<Rational>() == *f.value(v))
        && parts.iter().all(|p| unimodal_by_definition(g, &as_ints(p.values())))
}
