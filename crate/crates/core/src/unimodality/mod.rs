//! Unimodality of edge-linear functions.
//!
//! On a graph, `{f >= c}` is a union of retained vertices and closed
//! subintervals of edges. It is contractible exactly when it is nonempty,
//! connected and acyclic, so all checks here are combinatorial and exact.

mod strong;

use std::collections::VecDeque;

pub use strong::{is_strong_decomposition, StrongVerdict, StrongViolation};

use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::graph::{Graph, VertexSubset};
use crate::scalar::Scalar;

/// Why a function fails to be unimodal.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    EmptySupport,
    /// A cycle in the subgraph induced by the support.
    Cycle(Vec<usize>),
    /// Two support vertices in different components of the support.
    Disconnected(usize, usize),
    /// Oriented away from `root`, the value increases along `from -> to`.
    IncreasingEdge { root: usize, from: usize, to: usize },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::EmptySupport => "empty-support",
            Witness::Cycle(_) => "cycle",
            Witness::Disconnected(..) => "disconnected",
            Witness::IncreasingEdge { .. } => "increasing-edge",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Unimodality {
    /// Unimodal with mode `root` (smallest-index maximum).
    Unimodal { root: usize },
    NotUnimodal(Witness),
}

impl Unimodality {
    pub fn is_unimodal(&self) -> bool {
        matches!(self, Unimodality::Unimodal { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Unimodality::NotUnimodal(w) => Some(w),
            Unimodality::Unimodal { .. } => None,
        }
    }
}

fn check_values<S: Scalar>(g: &Graph, f: &VertexFunction<S>) -> Result<()> {
    if f.len() != g.vertex_count() {
        return Err(Error::ValueCount { expected: g.vertex_count(), got: f.len() });
    }
    if let Some(v) = f.values().iter().position(|x| x.lt_zero()) {
        return Err(Error::NegativeValue { vertex: v, value: f.value(v).to_string() });
    }
    Ok(())
}

/// Decides unimodality in `O(|V| + |E|)`: the support must induce a tree
/// and the values must not increase along any edge oriented away from a
/// maximum.
pub fn is_unimodal<S: Scalar>(g: &Graph, f: &VertexFunction<S>) -> Result<Unimodality> {
    check_values(g, f)?;
    let n = g.vertex_count();
    let in_support: Vec<bool> = f.values().iter().map(|x| x.gt_zero()).collect();
    let support_size = in_support.iter().filter(|&&b| b).count();
    let root = match f.argmax() {
        Some(r) if in_support[r] => r,
        _ => return Ok(Unimodality::NotUnimodal(Witness::EmptySupport)),
    };

    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut reached = 1;
    let mut queue = VecDeque::from([root]);
    let mut increasing = None;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !in_support[w] || seen[w] {
                continue;
            }
            seen[w] = true;
            parent[w] = u;
            reached += 1;
            if increasing.is_none() && f.value(w) > f.value(u) {
                increasing = Some((u, w));
            }
            queue.push_back(w);
        }
    }
    if reached < support_size {
        let other = (0..n).find(|&v| in_support[v] && !seen[v]).expect("unreached support vertex");
        return Ok(Unimodality::NotUnimodal(Witness::Disconnected(root, other)));
    }
    let support_edges = g.edges().iter().filter(|&&(u, v)| in_support[u] && in_support[v]).count();
    if support_edges != support_size - 1 {
        let cycle = g.find_cycle_within(&f.support()).expect("connected support with extra edge has a cycle");
        return Ok(Unimodality::NotUnimodal(Witness::Cycle(cycle)));
    }
    if let Some((from, to)) = increasing {
        return Ok(Unimodality::NotUnimodal(Witness::IncreasingEdge { root, from, to }));
    }
    Ok(Unimodality::Unimodal { root })
}

/// Closed piece `[lo, hi]` of edge `edge`, in barycentric coordinates
/// running from the smaller endpoint (`0`) to the larger (`1`).
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeSegment<S> {
    pub edge: usize,
    pub lo: S,
    pub hi: S,
}

impl<S: Scalar> EdgeSegment<S> {
    pub fn is_full(&self) -> bool {
        self.lo.is_zero() && self.hi.is_one()
    }

    /// Touches neither endpoint.
    pub fn is_interior(&self) -> bool {
        self.lo.gt_zero() && self.hi < S::one()
    }
}

/// A subset of the geometric graph made of whole vertices and closed edge
/// pieces. Point pieces sitting on a retained endpoint are not listed.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelComplex<'g, S> {
    pub graph: &'g Graph,
    pub retained: VertexSubset,
    pub segments: Vec<EdgeSegment<S>>,
}

/// `{f >= threshold}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperlevelComplex<'g, S> {
    pub threshold: S,
    pub complex: LevelComplex<'g, S>,
}

/// `⋂ {f_i >= c_i}` over the listed `(component index, threshold)` terms.
#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionComplex<'g, S> {
    pub terms: Vec<(usize, S)>,
    pub complex: LevelComplex<'g, S>,
}

impl<'g, S> AsRef<LevelComplex<'g, S>> for LevelComplex<'g, S> {
    fn as_ref(&self) -> &LevelComplex<'g, S> {
        self
    }
}

impl<'g, S> AsRef<LevelComplex<'g, S>> for SuperlevelComplex<'g, S> {
    fn as_ref(&self) -> &LevelComplex<'g, S> {
        &self.complex
    }
}

impl<'g, S> AsRef<LevelComplex<'g, S>> for IntersectionComplex<'g, S> {
    fn as_ref(&self) -> &LevelComplex<'g, S> {
        &self.complex
    }
}

/// `{t in [0, 1] : f(u) + t (f(v) - f(u)) >= c}` on edge `u -> v`.
pub(crate) fn edge_interval<S: Scalar>(a: &S, b: &S, c: &S) -> Option<(S, S)> {
    match (a >= c, b >= c) {
        (true, true) => Some((S::zero(), S::one())),
        (false, false) => None,
        (true, false) => Some((S::zero(), (a.clone() - c.clone()) / (a.clone() - b.clone()))),
        (false, true) => Some(((c.clone() - a.clone()) / (b.clone() - a.clone()), S::one())),
    }
}

fn build_complex<'g, S: Scalar>(g: &'g Graph, terms: &[(&VertexFunction<S>, &S)]) -> LevelComplex<'g, S> {
    let n = g.vertex_count();
    let retained = VertexSubset::from_vertices(n, (0..n).filter(|&v| terms.iter().all(|(f, c)| f.value(v) >= *c)));
    let mut segments = Vec::new();
    'edges: for (e, &(u, v)) in g.edges().iter().enumerate() {
        let mut lo = S::zero();
        let mut hi = S::one();
        for (f, c) in terms {
            match edge_interval(f.value(u), f.value(v), c) {
                None => continue 'edges,
                Some((a, b)) => {
                    lo = S::max_of(lo, a);
                    hi = S::min_of(hi, b);
                }
            }
        }
        if lo > hi || hi.is_zero() || lo.is_one() {
            continue;
        }
        segments.push(EdgeSegment { edge: e, lo, hi });
    }
    LevelComplex { graph: g, retained, segments }
}

/// Exact description of `{f >= c}` for `c > 0`.
pub fn superlevel<'g, S: Scalar>(g: &'g Graph, f: &VertexFunction<S>, c: S) -> Result<SuperlevelComplex<'g, S>> {
    check_values(g, f)?;
    if !c.gt_zero() {
        return Err(Error::InvalidParameter { parameter: "threshold", requirement: "positive".into() });
    }
    let complex = build_complex(g, &[(f, &c)]);
    Ok(SuperlevelComplex { threshold: c, complex })
}

/// Exact description of `⋂ {components[i] >= c}` over `terms`.
pub fn intersection<'g, S: Scalar>(
    g: &'g Graph,
    components: &[VertexFunction<S>],
    terms: &[(usize, S)],
) -> Result<IntersectionComplex<'g, S>> {
    for (i, c) in terms {
        check_values(g, &components[*i])?;
        if !c.gt_zero() {
            return Err(Error::InvalidParameter { parameter: "threshold", requirement: "positive".into() });
        }
    }
    let refs: Vec<(&VertexFunction<S>, &S)> = terms.iter().map(|(i, c)| (&components[*i], c)).collect();
    let complex = build_complex(g, &refs);
    Ok(IntersectionComplex { terms: terms.to_vec(), complex })
}

/// A connected piece of a level complex, named by a representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    Vertex(usize),
    /// A segment lying strictly inside edge `edge`.
    Interior(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contractibility {
    Contractible,
    Empty,
    Disconnected(Piece, Piece),
    Cycle(Vec<usize>),
}

impl Contractibility {
    pub fn is_contractible(&self) -> bool {
        matches!(self, Contractibility::Contractible)
    }

    /// The acceptable outcomes for superlevel sets and their intersections.
    pub fn is_contractible_or_empty(&self) -> bool {
        matches!(self, Contractibility::Contractible | Contractibility::Empty)
    }
}

/// Nonempty, connected and acyclic. Pendant pieces hanging off a retained
/// vertex never change the answer; interior-only pieces are components of
/// their own.
pub fn is_contractible<'g, S: Scalar>(complex: &impl AsRef<LevelComplex<'g, S>>) -> Contractibility {
    let cx = complex.as_ref();
    let g = cx.graph;
    let mut pieces: Vec<Piece> = cx.graph.components_within(&cx.retained).into_iter().map(|c| Piece::Vertex(c[0])).collect();
    for seg in &cx.segments {
        let (u, v) = g.edges()[seg.edge];
        let attached = (seg.lo.is_zero() && cx.retained.contains(u)) || (seg.hi.is_one() && cx.retained.contains(v));
        if !attached {
            pieces.push(Piece::Interior(seg.edge));
        }
    }
    match pieces.len() {
        0 => Contractibility::Empty,
        1 => match g.find_cycle_within(&cx.retained) {
            Some(cycle) => Contractibility::Cycle(cycle),
            None => Contractibility::Contractible,
        },
        _ => {
            if let Some(cycle) = g.find_cycle_within(&cx.retained) {
                return Contractibility::Cycle(cycle);
            }
            Contractibility::Disconnected(pieces[0].clone(), pieces[1].clone())
        }
    }
}

/// Thresholds at which the superlevel sets of `f` can change: its distinct
/// positive values and the midpoints between consecutive distinct values
/// (including the gap above zero).
pub fn critical_thresholds<S: Scalar>(f: &VertexFunction<S>) -> Vec<S> {
    let mut vals: Vec<S> = f.values().to_vec();
    vals.push(S::zero());
    vals.sort_by(|a, b| a.partial_cmp(b).expect("comparable scalars"));
    vals.dedup();
    let mut out = Vec::new();
    for w in vals.windows(2) {
        out.push((w[0].clone() + w[1].clone()) * S::half());
        out.push(w[1].clone());
    }
    out
}
