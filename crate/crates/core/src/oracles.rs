//! Brute-force solvers for graph coloring and vertex cover.
//!
//! These are the trust anchor for the reduction checks, so they stay plain:
//! exhaustive enumeration with a hard size limit and definitional re-checks
//! of every witness.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSubset};

/// Largest graph the oracles accept.
pub const ORACLE_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    Coloring,
    VertexCover,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum OracleValue {
    Decision(bool),
    Count(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleWitness {
    /// Color of each vertex.
    Coloring(Vec<usize>),
    /// Cover vertices in ascending order.
    Cover(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleAnswer {
    pub problem: Problem,
    pub value: OracleValue,
    pub witness: Option<OracleWitness>,
}

fn check_size(g: &Graph) -> Result<()> {
    if g.vertex_count() > ORACLE_LIMIT {
        return Err(Error::BudgetExceeded { parameter: "oracle_vertices", actual: g.vertex_count(), limit: ORACLE_LIMIT });
    }
    Ok(())
}

/// Whether `g` has a proper coloring with `k` colors.
pub fn chromatic_decision(g: &Graph, k: usize) -> Result<OracleAnswer> {
    check_size(g)?;
    let mut colors = vec![usize::MAX; g.vertex_count()];
    let found = color_from(g, k, 0, 0, &mut colors);
    let witness = found.then(|| {
        debug_assert!(is_proper_coloring(g, &colors, k));
        OracleWitness::Coloring(colors)
    });
    Ok(OracleAnswer { problem: Problem::Coloring, value: OracleValue::Decision(found), witness })
}

/// Backtracking in vertex order; a vertex may open at most one new color,
/// which only removes relabelings of the same coloring.
fn color_from(g: &Graph, k: usize, v: usize, used: usize, colors: &mut [usize]) -> bool {
    if v == colors.len() {
        return true;
    }
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).iter().any(|&w| w < v && colors[w] == c) {
            continue;
        }
        colors[v] = c;
        if color_from(g, k, v + 1, used.max(c + 1), colors) {
            return true;
        }
    }
    colors[v] = usize::MAX;
    false
}

/// Smallest `k` with a proper `k`-coloring.
pub fn chromatic_number(g: &Graph) -> Result<OracleAnswer> {
    check_size(g)?;
    for k in 0..=g.vertex_count() {
        let answer = chromatic_decision(g, k)?;
        if answer.value == OracleValue::Decision(true) {
            return Ok(OracleAnswer { problem: Problem::Coloring, value: OracleValue::Count(k), witness: answer.witness });
        }
    }
    unreachable!("n colors always suffice")
}

/// Minimum vertex cover by trying all subsets in order of size.
pub fn min_vertex_cover(g: &Graph) -> Result<OracleAnswer> {
    check_size(g)?;
    let n = g.vertex_count();
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let best = masks
        .into_iter()
        .find(|&m| g.edges().iter().all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1))
        .expect("the full vertex set is a cover");
    let cover: Vec<usize> = (0..n).filter(|&v| best >> v & 1 == 1).collect();
    Ok(OracleAnswer {
        problem: Problem::VertexCover,
        value: OracleValue::Count(cover.len()),
        witness: Some(OracleWitness::Cover(cover)),
    })
}

pub fn is_proper_coloring(g: &Graph, colors: &[usize], k: usize) -> bool {
    colors.len() == g.vertex_count() && colors.iter().all(|&c| c < k) && g.edges().iter().all(|&(u, v)| colors[u] != colors[v])
}

/// Color classes of a proper coloring, or `None` if some edge is
/// monochromatic.
pub fn proper_coloring_to_partition(g: &Graph, colors: &[usize]) -> Option<Vec<Vec<usize>>> {
    if colors.len() != g.vertex_count() || g.edges().iter().any(|&(u, v)| colors[u] == colors[v]) {
        return None;
    }
    let k = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut classes = vec![Vec::new(); k];
    for (v, &c) in colors.iter().enumerate() {
        classes[c].push(v);
    }
    classes.retain(|c| !c.is_empty());
    Some(classes)
}

/// `Err((u, v))` names an edge with no endpoint in `s`.
pub fn cover_check(g: &Graph, s: &VertexSubset) -> std::result::Result<(), (usize, usize)> {
    match g.edges().iter().find(|&&(u, v)| !s.contains(u) && !s.contains(v)) {
        Some(&e) => Err(e),
        None => Ok(()),
    }
}
