//! Minimal unimodal decompositions on trees.
//!
//! The greedy pulls the largest unimodal piece hanging from a well-placed
//! local maximum, subtracts it, and recurses on each connected component of
//! what remains. Pulling from an arbitrary global maximum is not enough: on a
//! spider with centre 3 and legs (1, 2) every minimal decomposition puts its
//! modes at the leaves.
//! Each pull is linear in the component size, so the whole decomposition
//! costs `O(ucat · |V|)`.

use std::collections::VecDeque;

use crate::decomposition::{Component, Decomposition, Mode};
use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::graph::{Graph, VertexSubset};
use crate::scalar::Scalar;

fn require_tree<S: Scalar>(g: &Graph, f: &VertexFunction<S>) -> Result<()> {
    if f.len() != g.vertex_count() {
        return Err(Error::ValueCount { expected: g.vertex_count(), got: f.len() });
    }
    if let Some(v) = f.values().iter().position(|x| x.lt_zero()) {
        return Err(Error::NegativeValue { vertex: v, value: f.value(v).to_string() });
    }
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    Ok(())
}

/// Scratch state shared by successive pulls.
struct Puller<'a, S> {
    g: &'a Graph,
    /// `stamp[v] == current` marks membership in the component being pulled.
    stamp: Vec<usize>,
    current: usize,
    order: Vec<usize>,
    parent: Vec<usize>,
    _marker: std::marker::PhantomData<S>,
}

impl<'a, S: Scalar> Puller<'a, S> {
    fn new(g: &'a Graph) -> Self {
        let n = g.vertex_count();
        Puller { g, stamp: vec![0; n], current: 0, order: Vec::new(), parent: vec![usize::MAX; n], _marker: Default::default() }
    }

    /// `h_{f,v}` on the subtree `members`, rooted at `root`. Returns the
    /// (vertex, value) pairs in BFS order.
    fn pull(&mut self, f: &[S], members: &[usize], root: usize) -> Vec<(usize, S)> {
        self.current += 1;
        for &v in members {
            self.stamp[v] = self.current;
        }
        self.order.clear();
        self.order.push(root);
        self.parent[root] = usize::MAX;
        let mut h: Vec<(usize, S)> = vec![(root, f[root].clone())];
        let mut head = 0;
        while head < self.order.len() {
            let u = self.order[head];
            let hu = h[head].1.clone();
            head += 1;
            for &w in self.g.neighbors(u) {
                if self.stamp[w] != self.current || w == self.parent[u] {
                    continue;
                }
                self.parent[w] = u;
                let hw = if f[w] > f[u] {
                    hu.clone()
                } else {
                    S::max_of(hu.clone() - (f[u].clone() - f[w].clone()), S::zero())
                };
                h.push((w, hw));
                self.order.push(w);
            }
        }
        h
    }

    /// Root for the next pull: a local-maximum plateau with at most one
    /// branch along which `f` ever rises away from it. Pulling there leaves
    /// every other branch at zero, so no remainder piece is stranded behind
    /// the root. Among such plateaus the highest wins, then the one with the
    /// smallest vertex; the root is that vertex.
    ///
    /// One always exists: from a plateau with two rising branches, step into
    /// a rising branch that points away from where we came from and climb to
    /// a local maximum there; the tree is finite.
    fn choose_root(&mut self, f: &[S], members: &[usize]) -> usize {
        self.current += 1;
        for &v in members {
            self.stamp[v] = self.current;
        }
        let start = members[0];
        self.order.clear();
        self.order.push(start);
        self.parent[start] = usize::MAX;
        let mut head = 0;
        while head < self.order.len() {
            let u = self.order[head];
            head += 1;
            for &w in self.g.neighbors(u) {
                if self.stamp[w] == self.current && w != self.parent[u] {
                    self.parent[w] = u;
                    self.order.push(w);
                }
            }
        }
        let n = self.g.vertex_count();
        // down[v]: f never rises going from parent(v) into v's subtree.
        // up[v]: f never rises going from v through parent(v) and beyond.
        let mut down = vec![true; n];
        let mut up = vec![true; n];
        let mut rising_children = vec![0usize; n];
        for &v in self.order.iter().rev() {
            let p = self.parent[v];
            if p == usize::MAX {
                continue;
            }
            down[v] = f[v] <= f[p] && rising_children[v] == 0;
            if !down[v] {
                rising_children[p] += 1;
            }
        }
        for &v in &self.order {
            let p = self.parent[v];
            if p == usize::MAX {
                continue;
            }
            let siblings = rising_children[p] - usize::from(!down[v]);
            let beyond = self.parent[p] == usize::MAX || up[p];
            up[v] = f[p] <= f[v] && beyond && siblings == 0;
        }

        let mut plateau = vec![usize::MAX; n];
        let mut best: Option<usize> = None;
        let mut members_sorted = members.to_vec();
        members_sorted.sort_unstable();
        for &v in &members_sorted {
            if plateau[v] != usize::MAX {
                continue;
            }
            plateau[v] = v;
            let mut queue = vec![v];
            let mut i = 0;
            let mut higher = false;
            while i < queue.len() {
                let u = queue[i];
                i += 1;
                for &w in self.g.neighbors(u) {
                    if self.stamp[w] != self.current {
                        continue;
                    }
                    if f[w] > f[v] {
                        higher = true;
                    } else if f[w] == f[v] && plateau[w] == usize::MAX {
                        plateau[w] = v;
                        queue.push(w);
                    }
                }
            }
            if higher {
                continue;
            }
            let mut rising = 0;
            for &u in &queue {
                for &w in self.g.neighbors(u) {
                    if self.stamp[w] != self.current || plateau[w] == v {
                        continue;
                    }
                    let flat = if self.parent[w] == u { down[w] } else { up[u] };
                    rising += usize::from(!flat);
                }
            }
            if rising <= 1 && best.map_or(true, |b| f[v] > f[b]) {
                best = Some(v);
            }
        }
        best.expect("some local-maximum plateau has at most one rising branch")
    }
}

/// The pulled function `h_{f,v}`: equal to `f(v)` at `v`, carried unchanged
/// across edges where `f` rises and lowered by the drop (never below zero)
/// where `f` falls.
pub fn pull<S: Scalar>(g: &Graph, f: &VertexFunction<S>, v: usize) -> Result<Component<S>> {
    require_tree(g, f)?;
    if v >= g.vertex_count() || f.value(v) < &f.max_value() {
        return Err(Error::NotMaximal(v));
    }
    let members: Vec<usize> = (0..g.vertex_count()).collect();
    let mut puller = Puller::new(g);
    let mut values = vec![S::zero(); g.vertex_count()];
    for (w, x) in puller.pull(f.values(), &members, v) {
        values[w] = x;
    }
    let values = VertexFunction::new(g, values)?;
    let support = values.support();
    Ok(Component { support, root: v, values })
}

/// Minimal sum decomposition of `f` on a tree.
///
/// Modes are chosen by `choose_root`: a local-maximum plateau with at most
/// one rising branch, preferring the highest; remainder components are handled
/// depth-first in ascending order of their minimum vertex. The zero function
/// yields an empty decomposition.
pub fn greedy_decompose<S: Scalar>(g: &Graph, f: &VertexFunction<S>) -> Result<Decomposition<S>> {
    require_tree(g, f)?;
    let n = g.vertex_count();
    let mut rem: Vec<S> = f.values().to_vec();
    let mut puller = Puller::new(g);
    let mut components = Vec::new();
    let mut stack: Vec<Vec<usize>> = g.components_within(&f.support());
    stack.reverse();
    while let Some(members) = stack.pop() {
        let root = puller.choose_root(&rem, &members);
        let h = puller.pull(&rem, &members, root);
        let mut values = vec![S::zero(); n];
        for (w, x) in h {
            rem[w] = rem[w].clone() - x.clone();
            values[w] = x;
        }
        let values = VertexFunction::from_values_unchecked(values);
        let support = values.support();
        components.push(Component { support, root, values });

        let left = VertexSubset::from_vertices(n, members.iter().copied().filter(|&v| rem[v].gt_zero()));
        let mut next = components_of(g, &left, &members);
        next.reverse();
        stack.extend(next);
    }
    Ok(Decomposition { mode: Mode::Sum, components })
}

/// Components of `left` (a subset of `members`), sorted by minimum vertex.
fn components_of(g: &Graph, left: &VertexSubset, members: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = VertexSubset::empty(g.vertex_count());
    let mut out = Vec::new();
    for &start in members {
        if !left.contains(start) || seen.contains(start) {
            continue;
        }
        seen.insert(start);
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if left.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort_by_key(|c| c[0]);
    out
}

/// `ucat^p` on a tree, computed as the greedy decomposition of `f^p`. The
/// returned components decompose `f^p`.
pub fn ucat_p_tree<S: Scalar>(g: &Graph, f: &VertexFunction<S>, p: u32) -> Result<Decomposition<S>> {
    if p == 0 {
        return Err(Error::InvalidParameter { parameter: "p", requirement: "a positive integer".into() });
    }
    greedy_decompose(g, &f.pow(p))
}

/// `ucat^∞` on a tree: the number of local maxima, where a connected plateau
/// of equal values counts once. The zero function has none.
pub fn ucat_infinity_tree<S: Scalar>(g: &Graph, f: &VertexFunction<S>) -> Result<usize> {
    require_tree(g, f)?;
    let n = g.vertex_count();
    let mut plateau = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if plateau[start] != usize::MAX || f.value(start).is_zero() {
            continue;
        }
        plateau[start] = start;
        let mut queue = VecDeque::from([start]);
        let mut is_max = true;
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if f.value(w) == f.value(u) {
                    if plateau[w] == usize::MAX {
                        plateau[w] = start;
                        queue.push_back(w);
                    }
                } else if f.value(w) > f.value(u) {
                    is_max = false;
                }
            }
        }
        if is_max {
            count += 1;
        }
    }
    Ok(count)
}
