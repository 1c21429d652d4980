//! Reduction instances and a harness checking each claimed equivalence.
//!
//! * Coloring: join `k` mutually adjacent apex vertices to every vertex; the
//!   constant function 1 then decomposes into `k` unimodal pieces exactly
//!   when the source graph is `k`-colorable.
//! * Vertex cover: subdivide every edge once, put `deg(v)` on source
//!   vertices and 1 on midpoints; the category equals the cover number.
//! * Two trees: the constant function 1 on the graph itself has category at
//!   most 2 exactly when the vertices split into two induced trees.

use rayon::prelude::*;
use serde::Serialize;

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::exact::{exact_ucat, ucat_leq, Budget};
use crate::function::VertexFunction;
use crate::graph::{Graph, VertexSubset};
use crate::oracles::{chromatic_decision, cover_check, min_vertex_cover, OracleAnswer, OracleValue};
use crate::scalar::{int, rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GadgetKind {
    ColoringApex,
    VertexCover,
    TwoTrees,
}

impl std::str::FromStr for GadgetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coloring" | "coloring-apex" => Ok(GadgetKind::ColoringApex),
            "vertex-cover" | "vc" => Ok(GadgetKind::VertexCover),
            "two-trees" => Ok(GadgetKind::TwoTrees),
            other => Err(Error::InvalidParameter {
                parameter: "kind",
                requirement: format!("one of coloring, vertex-cover, two-trees (got `{other}`)"),
            }),
        }
    }
}

/// Where the produced vertices come from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Provenance {
    /// Produced index of each source vertex.
    pub source_vertices: Vec<usize>,
    /// Added apex vertices (coloring gadget).
    pub apexes: Vec<usize>,
    /// `(u, v, produced midpoint)` per source edge (vertex-cover gadget).
    pub midpoints: Vec<(usize, usize, usize)>,
    /// Source vertices of degree 0, which receive the value 0.
    pub isolated: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GadgetInstance {
    pub kind: GadgetKind,
    pub source: Graph,
    /// Number of colors for the coloring gadget.
    pub k: Option<usize>,
    pub graph: Graph,
    pub function: VertexFunction,
    pub provenance: Provenance,
}

/// Source graph plus `k` apexes adjacent to each other and to every source
/// vertex, with the constant function 1.
pub fn coloring_gadget(g: &Graph, k: usize) -> Result<GadgetInstance> {
    if k < 3 {
        return Err(Error::InvalidParameter { parameter: "k", requirement: format!("at least 3 (got {k})") });
    }
    let n = g.vertex_count();
    let apexes: Vec<usize> = (n..n + k).collect();
    let mut edges = g.edges().to_vec();
    for (i, &a) in apexes.iter().enumerate() {
        edges.extend((0..n).map(|v| (v, a)));
        edges.extend(apexes[i + 1..].iter().map(|&b| (a, b)));
    }
    let graph = Graph::new(n + k, edges)?;
    let function = VertexFunction::constant(&graph, int(1));
    let provenance = Provenance { source_vertices: (0..n).collect(), apexes, ..Default::default() };
    Ok(GadgetInstance { kind: GadgetKind::ColoringApex, source: g.clone(), k: Some(k), graph, function, provenance })
}

/// Midpoint subdivision with `deg(v)` at source vertices and 1 at midpoints.
pub fn vertex_cover_gadget(g: &Graph) -> GadgetInstance {
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    let mut midpoints = Vec::with_capacity(g.edge_count());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let m = n + e;
        edges.push((u, m));
        edges.push((v, m));
        midpoints.push((u, v, m));
    }
    let graph = Graph::new(n + g.edge_count(), edges).expect("subdivision of a simple graph is simple");
    let values: Vec<Rational> =
        (0..n).map(|v| int(g.degree(v) as i64)).chain(std::iter::repeat(int(1)).take(g.edge_count())).collect();
    let function = VertexFunction::new(&graph, values).expect("degrees are nonnegative");
    let isolated = (0..n).filter(|&v| g.degree(v) == 0).collect();
    let provenance = Provenance { source_vertices: (0..n).collect(), midpoints, isolated, ..Default::default() };
    GadgetInstance { kind: GadgetKind::VertexCover, source: g.clone(), k: None, graph, function, provenance }
}

/// The constant function 1 on the graph itself.
pub fn two_trees_instance(g: &Graph) -> GadgetInstance {
    GadgetInstance {
        kind: GadgetKind::TwoTrees,
        source: g.clone(),
        k: Some(2),
        graph: g.clone(),
        function: VertexFunction::constant(g, int(1)),
        provenance: Provenance { source_vertices: (0..g.vertex_count()).collect(), ..Default::default() },
    }
}

/// One component per cover vertex `c`: `deg(c)` at `c`, 1 at neighbors
/// outside the cover and at midpoints towards them, 1/2 at midpoints shared
/// with another cover vertex, 0 elsewhere.
pub fn cover_component_functions(instance: &GadgetInstance, cover: &VertexSubset) -> Result<Vec<VertexFunction>> {
    if instance.kind != GadgetKind::VertexCover {
        return Err(Error::InvalidParameter { parameter: "instance", requirement: "a vertex-cover gadget".into() });
    }
    let g = &instance.source;
    if cover.universe() != g.vertex_count() {
        return Err(Error::InvalidParameter {
            parameter: "cover",
            requirement: format!("a subset of the {} source vertices", g.vertex_count()),
        });
    }
    cover_check(g, cover).map_err(|(u, v)| Error::NotACover(u, v))?;
    let produced = instance.graph.vertex_count();
    let mut out = Vec::new();
    for c in cover.iter() {
        let mut values = vec![int(0); produced];
        values[instance.provenance.source_vertices[c]] = int(g.degree(c) as i64);
        for &(u, v, m) in &instance.provenance.midpoints {
            let other = match (u == c, v == c) {
                (true, _) => v,
                (_, true) => u,
                _ => continue,
            };
            if cover.contains(other) {
                values[m] = rational(1, 2);
            } else {
                values[m] = int(1);
                values[instance.provenance.source_vertices[other]] = int(1);
            }
        }
        out.push(VertexFunction::new(&instance.graph, values)?);
    }
    Ok(out)
}

/// Largest graph accepted by [`two_trees_decision`].
pub const TWO_TREES_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTrees {
    pub holds: bool,
    /// Two vertex sets, each empty or inducing a tree, covering all vertices.
    pub parts: Option<(VertexSubset, VertexSubset)>,
}

fn induces_tree_mask(adj: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let edges: u32 = (0..adj.len()).filter(|&v| mask >> v & 1 == 1).map(|v| (adj[v] & mask).count_ones()).sum::<u32>() / 2;
    if edges + 1 != mask.count_ones() {
        return false;
    }
    let mut seen = 1u64 << mask.trailing_zeros();
    loop {
        let grown = (0..adj.len()).filter(|&v| seen >> v & 1 == 1).fold(seen, |s, v| s | (adj[v] & mask));
        if grown == seen {
            return seen == mask;
        }
        seen = grown;
    }
}

/// Whether the vertices split into two sets that each induce a tree
/// (disjoint when `disjoint` is set, possibly overlapping otherwise). One
/// part may be empty, so a tree splits trivially.
pub fn two_trees_decision(g: &Graph, disjoint: bool) -> Result<TwoTrees> {
    let n = g.vertex_count();
    if n > TWO_TREES_LIMIT {
        return Err(Error::BudgetExceeded { parameter: "two_trees_vertices", actual: n, limit: TWO_TREES_LIMIT });
    }
    let adj = g.adjacency_masks();
    let full = (1u64 << n) - 1;
    let ok = |m: u64| m == 0 || induces_tree_mask(&adj, m);
    let witness = |a: u64, b: u64| TwoTrees {
        holds: true,
        parts: Some((VertexSubset::from_mask(n, a), VertexSubset::from_mask(n, b))),
    };
    if n == 0 {
        return Ok(witness(0, 0));
    }
    if disjoint {
        // fix vertex 0 in the first part to skip mirrored splits
        for a in (0..=full).filter(|m| m & 1 == 1) {
            if ok(a) && ok(full & !a) {
                return Ok(witness(a, full & !a));
            }
        }
    } else {
        let trees: Vec<u64> = (1..=full).filter(|&m| induces_tree_mask(&adj, m)).collect();
        for &a in &trees {
            if a == full {
                return Ok(witness(a, 0));
            }
            if let Some(&b) = trees.iter().find(|&&b| a | b == full) {
                return Ok(witness(a, b));
            }
        }
    }
    Ok(TwoTrees { holds: false, parts: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Answer {
    Holds(bool),
    Count(usize),
}

/// Both sides of one claimed equivalence, computed independently.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionReport {
    pub kind: GadgetKind,
    pub instance: GadgetInstance,
    /// Classical side (oracle).
    pub lhs_label: String,
    pub lhs: Answer,
    /// Decomposition side (exact solver).
    pub rhs_label: String,
    pub rhs: Answer,
    pub agree: bool,
    pub oracle: Option<OracleAnswer>,
    pub two_trees: Option<TwoTrees>,
    pub decomposition: Option<Decomposition>,
}

/// Computes both sides of the equivalence for `kind` on source graph `g`.
/// `k` is the number of colors for the coloring kind.
pub fn verify_reduction(kind: GadgetKind, g: &Graph, k: Option<usize>, budget: &Budget) -> Result<ReductionReport> {
    match kind {
        GadgetKind::ColoringApex => {
            let k = k.unwrap_or(3);
            let instance = coloring_gadget(g, k)?;
            let oracle = chromatic_decision(g, k)?;
            let lhs = oracle.value == OracleValue::Decision(true);
            let solved = ucat_leq(&instance.graph, &instance.function, k, 0, budget)?;
            let rhs = solved.is_some();
            Ok(ReductionReport {
                kind,
                lhs_label: format!("chromatic number <= {k}"),
                lhs: Answer::Holds(lhs),
                rhs_label: format!("ucat of apex gadget <= {k}"),
                rhs: Answer::Holds(rhs),
                agree: lhs == rhs,
                oracle: Some(oracle),
                two_trees: None,
                decomposition: solved.map(|s| s.certificate),
                instance,
            })
        }
        GadgetKind::VertexCover => {
            let instance = vertex_cover_gadget(g);
            let oracle = min_vertex_cover(g)?;
            let OracleValue::Count(cover) = oracle.value else { unreachable!("cover oracle returns a count") };
            let solved = exact_ucat(&instance.graph, &instance.function, 1, 0, budget)?;
            Ok(ReductionReport {
                kind,
                lhs_label: "minimum vertex cover".into(),
                lhs: Answer::Count(cover),
                rhs_label: "ucat of subdivision gadget".into(),
                rhs: Answer::Count(solved.value),
                agree: cover == solved.value,
                oracle: Some(oracle),
                two_trees: None,
                decomposition: Some(solved.certificate),
                instance,
            })
        }
        GadgetKind::TwoTrees => {
            let instance = two_trees_instance(g);
            let split = two_trees_decision(g, true)?;
            let solved = ucat_leq(&instance.graph, &instance.function, 2, 0, budget)?;
            let rhs = solved.is_some();
            Ok(ReductionReport {
                kind,
                lhs_label: "splits into two disjoint induced trees".into(),
                lhs: Answer::Holds(split.holds),
                rhs_label: "ucat of constant 1 <= 2".into(),
                rhs: Answer::Holds(rhs),
                agree: split.holds == rhs,
                oracle: None,
                two_trees: Some(split),
                decomposition: solved.map(|s| s.certificate),
                instance,
            })
        }
    }
}

/// [`verify_reduction`] over many source graphs in parallel; results keep
/// the input order.
pub fn verify_family(kind: GadgetKind, graphs: &[Graph], k: Option<usize>, budget: &Budget) -> Vec<Result<ReductionReport>> {
    graphs.par_iter().map(|g| verify_reduction(kind, g, k, budget)).collect()
}
