//! Nonnegative vertex functions, extended edge-linearly over each edge.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSubset};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct VertexFunction<S = Rational> {
    values: Vec<S>,
}

impl<S: Scalar> VertexFunction<S> {
    /// Checks that there is one value per vertex and that none is negative.
    pub fn new(g: &Graph, values: Vec<S>) -> Result<Self> {
        if values.len() != g.vertex_count() {
            return Err(Error::ValueCount { expected: g.vertex_count(), got: values.len() });
        }
        if let Some(v) = values.iter().position(|x| x.lt_zero()) {
            return Err(Error::NegativeValue { vertex: v, value: values[v].to_string() });
        }
        Ok(VertexFunction { values })
    }

    pub fn from_ints(g: &Graph, values: &[i64]) -> Result<Self> {
        Self::new(g, values.iter().map(|&v| S::from_int(v)).collect())
    }

    pub fn constant(g: &Graph, c: S) -> Self {
        assert!(!c.lt_zero(), "constant must be nonnegative");
        VertexFunction { values: vec![c; g.vertex_count()] }
    }

    pub fn zero(g: &Graph) -> Self {
        Self::constant(g, S::zero())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, v: usize) -> &S {
        &self.values[v]
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|x| x.is_zero())
    }

    /// `{v : f(v) > 0}`.
    pub fn support(&self) -> VertexSubset {
        VertexSubset::from_vertices(self.values.len(), (0..self.values.len()).filter(|&v| self.values[v].gt_zero()))
    }

    /// Smallest-index vertex attaining the maximum, restricted to `within`.
    pub fn argmax_within(&self, within: impl IntoIterator<Item = usize>) -> Option<usize> {
        let mut best: Option<usize> = None;
        for v in within {
            match best {
                Some(b) if self.values[v] <= self.values[b] => {}
                _ => best = Some(v),
            }
        }
        best
    }

    pub fn argmax(&self) -> Option<usize> {
        self.argmax_within(0..self.values.len())
    }

    pub fn max_value(&self) -> S {
        self.argmax().map_or_else(S::zero, |v| self.values[v].clone())
    }

    /// Value at barycentric position `t` along `u -> v` (`t = 0` at `u`).
    pub fn along_edge(&self, u: usize, v: usize, t: &S) -> S {
        let a = &self.values[u];
        let b = &self.values[v];
        a.clone() + t.clone() * (b.clone() - a.clone())
    }

    /// Vertexwise `p`-th power.
    pub fn pow(&self, p: u32) -> Self {
        VertexFunction { values: self.values.iter().map(|x| x.pow_u32(p)).collect() }
    }

    pub fn restrict(&self, within: &VertexSubset) -> Self {
        let values = (0..self.values.len())
            .map(|v| if within.contains(v) { self.values[v].clone() } else { S::zero() })
            .collect();
        VertexFunction { values }
    }

    /// Sum of several functions on the same graph. Panics on length mismatch.
    pub fn sum<'a>(n: usize, parts: impl IntoIterator<Item = &'a VertexFunction<S>>) -> Self {
        let mut values = vec![S::zero(); n];
        for p in parts {
            assert_eq!(p.values.len(), n);
            for (acc, x) in values.iter_mut().zip(&p.values) {
                *acc = acc.clone() + x.clone();
            }
        }
        VertexFunction { values }
    }

    pub fn max_of<'a>(n: usize, parts: impl IntoIterator<Item = &'a VertexFunction<S>>) -> Self {
        let mut values = vec![S::zero(); n];
        for p in parts {
            assert_eq!(p.values.len(), n);
            for (acc, x) in values.iter_mut().zip(&p.values) {
                if *x > *acc {
                    *acc = x.clone();
                }
            }
        }
        VertexFunction { values }
    }

    pub(crate) fn from_values_unchecked(values: Vec<S>) -> Self {
        debug_assert!(values.iter().all(|x| !x.lt_zero()));
        VertexFunction { values }
    }
}

/// Where a vertex of a subdivided graph came from.
#[derive(Clone, Debug, PartialEq)]
pub enum VertexOrigin<S = Rational> {
    Original(usize),
    /// Interior point of source edge `edge = (u, v)` at barycentric position
    /// `position` measured from `u` (the smaller endpoint).
    OnEdge { edge: usize, position: S },
}

#[derive(Clone, Debug)]
pub struct Subdivision<S = Rational> {
    pub graph: Graph,
    pub function: VertexFunction<S>,
    pub origin: Vec<VertexOrigin<S>>,
}

/// Replaces every edge by a path with `r` interior vertices carrying the
/// edge-linear interpolants of `f`.
///
/// Original vertices keep their indices; the interior vertices of edge `e`
/// get indices `n + e * r .. n + (e + 1) * r`, ordered from the smaller
/// endpoint.
pub fn subdivide<S: Scalar>(g: &Graph, f: &VertexFunction<S>, r: usize) -> Subdivision<S> {
    let n = g.vertex_count();
    let mut origin: Vec<VertexOrigin<S>> = (0..n).map(VertexOrigin::Original).collect();
    let mut values = f.values().to_vec();
    let mut edges = Vec::with_capacity(g.edge_count() * (r + 1));
    let steps = S::from_int(r as i64 + 1);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let mut prev = u;
        for j in 1..=r {
            let id = n + e * r + (j - 1);
            let t = S::from_int(j as i64) / steps.clone();
            values.push(f.along_edge(u, v, &t));
            origin.push(VertexOrigin::OnEdge { edge: e, position: t });
            edges.push((prev, id));
            prev = id;
        }
        edges.push((prev, v));
    }
    let mut graph = Graph::new(origin.len(), edges).expect("subdivision of a simple graph is simple");
    if let Some(labels) = g.labels() {
        let mut all = labels.to_vec();
        for &(u, v) in g.edges() {
            for j in 1..=r {
                all.push(format!("{}~{}#{}", labels[u], labels[v], j));
            }
        }
        graph = graph.with_labels(all).expect("one label per vertex");
    }
    Subdivision { graph, function: VertexFunction::from_values_unchecked(values), origin }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rational};

    #[test]
    fn rejects_negative_and_wrong_length() {
        let g = Graph::path(2);
        assert!(matches!(VertexFunction::<Rational>::from_ints(&g, &[1, -1]), Err(Error::NegativeValue { vertex: 1, .. })));
        assert!(matches!(VertexFunction::<Rational>::from_ints(&g, &[1]), Err(Error::ValueCount { .. })));
    }

    #[test]
    fn argmax_breaks_ties_by_index() {
        let g = Graph::path(4);
        let f = VertexFunction::<Rational>::from_ints(&g, &[1, 3, 0, 3]).unwrap();
        assert_eq!(f.argmax(), Some(1));
        assert_eq!(f.support().to_vec(), vec![0, 1, 3]);
    }

    #[test]
    fn subdivide_identity() {
        let g = Graph::cycle(4);
        let f = VertexFunction::<Rational>::from_ints(&g, &[1, 2, 3, 0]).unwrap();
        let s = subdivide(&g, &f, 0);
        assert_eq!(s.graph, g);
        assert_eq!(s.function, f);
    }

    #[test]
    fn subdivide_single_edge_midpoint() {
        let g = Graph::path(2);
        let f = VertexFunction::from_ints(&g, &[0, 1]).unwrap();
        let s = subdivide(&g, &f, 1);
        assert_eq!(s.graph.edges(), &[(0, 2), (1, 2)]);
        assert_eq!(s.function.values(), &[int(0), int(1), rational(1, 2)]);
        assert_eq!(s.origin[2], VertexOrigin::OnEdge { edge: 0, position: rational(1, 2) });
    }

    #[test]
    fn subdivided_triangle_is_hexagon() {
        let g = Graph::complete(3);
        let f = VertexFunction::constant(&g, int(1));
        let s = subdivide(&g, &f, 1);
        assert_eq!(s.graph.vertex_count(), 6);
        assert_eq!(s.graph.edge_count(), 6);
        assert!((0..6).all(|v| s.graph.degree(v) == 2));
        assert!(s.graph.is_connected());
        assert!(s.function.values().iter().all(|x| *x == int(1)));
    }

    #[test]
    fn subdivide_interpolates_along_edges() {
        let g = Graph::path(2);
        let f: VertexFunction = VertexFunction::from_ints(&g, &[3, 0]).unwrap();
        let s = subdivide(&g, &f, 2);
        assert_eq!(s.function.values(), &[int(3), int(0), int(2), int(1)]);
        assert_eq!(s.graph.edges(), &[(0, 2), (2, 3), (1, 3)]);
    }
}
