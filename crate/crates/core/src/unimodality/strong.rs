//! Strong (good-cover) check for a list of unimodal components.
//!
//! For a fixed component, `{f_i >= c}` only changes combinatorially when `c`
//! crosses one of the values of `f_i`, so the threshold axis of each
//! component splits into closed cells `{x_j}` and open cells `(x_{j-1}, x_j)`.
//! Inside a product of cells the retained vertices and the kind of every edge
//! piece are fixed; only the interior-only pieces can appear or vanish. Their
//! endpoints move monotonically, and lowering any threshold only grows them,
//! so the representative point pushed towards the lower corner of every open
//! cell exhibits every interior piece the cell can produce. Checking one
//! representative per cell tuple is therefore exhaustive.

use super::{edge_interval, intersection, is_contractible, is_unimodal, Contractibility};
use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::graph::Graph;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct StrongViolation<S> {
    /// `(component index, threshold)` pairs whose intersection is bad.
    pub thresholds: Vec<(usize, S)>,
    pub reason: Contractibility,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StrongVerdict<S> {
    pub violation: Option<StrongViolation<S>>,
    /// Number of threshold tuples examined.
    pub tuples_checked: usize,
}

impl<S> StrongVerdict<S> {
    pub fn is_strong(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Clone, Debug)]
enum Cell<S> {
    Closed(S),
    Open(S, S),
}

impl<S: Scalar> Cell<S> {
    fn corner(&self) -> &S {
        match self {
            Cell::Closed(x) => x,
            Cell::Open(lo, _) => lo,
        }
    }

    fn is_open(&self) -> bool {
        matches!(self, Cell::Open(..))
    }

    fn midpoint(&self) -> S {
        match self {
            Cell::Closed(x) => x.clone(),
            Cell::Open(lo, hi) => (lo.clone() + hi.clone()) * S::half(),
        }
    }
}

fn cells_of<S: Scalar>(f: &VertexFunction<S>) -> Vec<Cell<S>> {
    let mut vals: Vec<S> = f.values().to_vec();
    vals.push(S::zero());
    vals.sort_by(|a, b| a.partial_cmp(b).expect("comparable scalars"));
    vals.dedup();
    let mut out = Vec::new();
    for w in vals.windows(2) {
        out.push(Cell::Open(w[0].clone(), w[1].clone()));
        out.push(Cell::Closed(w[1].clone()));
    }
    out
}

/// Checks that every finite intersection of superlevel sets of the
/// components is contractible or empty.
///
/// Every component must be unimodal. Returns the first violating threshold
/// tuple together with the disconnection or cycle it produces.
pub fn is_strong_decomposition<S: Scalar>(g: &Graph, components: &[VertexFunction<S>]) -> Result<StrongVerdict<S>> {
    for (index, f) in components.iter().enumerate() {
        if let Some(w) = is_unimodal(g, f)?.witness() {
            return Err(Error::NotUnimodal { index, reason: w.kind().to_string() });
        }
    }
    let cells: Vec<Vec<Cell<S>>> = components.iter().map(cells_of).collect();
    let mut search = Search { g, components, cells: &cells, chosen: Vec::new(), checked: 0 };
    let violation = search.descend(0)?;
    Ok(StrongVerdict { violation, tuples_checked: search.checked })
}

struct Search<'a, S> {
    g: &'a Graph,
    components: &'a [VertexFunction<S>],
    cells: &'a [Vec<Cell<S>>],
    chosen: Vec<(usize, usize)>,
    checked: usize,
}

impl<S: Scalar> Search<'_, S> {
    fn descend(&mut self, next: usize) -> Result<Option<StrongViolation<S>>> {
        for i in next..self.components.len() {
            for j in 0..self.cells[i].len() {
                self.chosen.push((i, j));
                self.checked += 1;
                let thresholds = self.representative();
                let cx = intersection(self.g, self.components, &thresholds)?;
                let verdict = is_contractible(&cx);
                let found = match verdict {
                    Contractibility::Empty => None,
                    Contractibility::Contractible => self.descend(i + 1)?,
                    reason => Some(StrongViolation { thresholds, reason }),
                };
                self.chosen.pop();
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        Ok(None)
    }

    /// Threshold tuple realizing the largest intersection within the chosen
    /// cells.
    fn representative(&self) -> Vec<(usize, S)> {
        let terms: Vec<(usize, &Cell<S>)> = self.chosen.iter().map(|&(i, j)| (i, &self.cells[i][j])).collect();
        if terms.iter().all(|(_, c)| !c.is_open()) {
            return terms.iter().map(|(i, c)| (*i, c.corner().clone())).collect();
        }
        let mut delta: Option<S> = None;
        let mut tighten = |bound: S| {
            delta = Some(match delta.take() {
                Some(d) => S::min_of(d, bound),
                None => bound,
            });
        };
        for (_, cell) in &terms {
            if let Cell::Open(lo, hi) = cell {
                tighten((hi.clone() - lo.clone()) * S::half());
            }
        }
        let mids: Vec<S> = terms.iter().map(|(_, c)| c.midpoint()).collect();
        for &(u, v) in self.g.edges() {
            // endpoint retention and piece kinds are constant on the open cell
            let mut prefixes = Vec::new();
            let mut suffixes = Vec::new();
            let mut empty = false;
            for (k, (i, cell)) in terms.iter().enumerate() {
                let f = &self.components[*i];
                let (a, b) = (f.value(u), f.value(v));
                match edge_interval(a, b, &mids[k]) {
                    None => empty = true,
                    Some((lo, hi)) => {
                        let slope = |d: S| if cell.is_open() { S::one() / d } else { S::zero() };
                        if lo.is_zero() && !hi.is_one() {
                            let at = (a.clone() - cell.corner().clone()) / (a.clone() - b.clone());
                            prefixes.push((at, slope(a.clone() - b.clone())));
                        } else if !lo.is_zero() && hi.is_one() {
                            let at = (cell.corner().clone() - a.clone()) / (b.clone() - a.clone());
                            suffixes.push((at, slope(b.clone() - a.clone())));
                        }
                    }
                }
            }
            if empty || prefixes.is_empty() || suffixes.is_empty() {
                continue;
            }
            let mut bounds = Vec::new();
            let mut feasible = true;
            for (end, w_end) in &prefixes {
                for (start, w_start) in &suffixes {
                    let gap = end.clone() - start.clone();
                    let w = w_end.clone() + w_start.clone();
                    if w.is_zero() {
                        feasible &= !gap.lt_zero();
                    } else if gap.gt_zero() {
                        bounds.push(gap / w * S::half());
                    } else {
                        feasible = false;
                    }
                }
            }
            if feasible {
                bounds.into_iter().for_each(&mut tighten);
            }
        }
        let delta = delta.expect("at least one open cell");
        terms
            .iter()
            .map(|(i, c)| match c {
                Cell::Closed(x) => (*i, x.clone()),
                Cell::Open(lo, _) => (*i, lo.clone() + delta.clone()),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rational, Rational};
    use crate::unimodality::Piece;

    fn func(g: &Graph, vals: &[i64]) -> VertexFunction<Rational> {
        VertexFunction::from_ints(g, vals).unwrap()
    }

    #[test]
    fn single_component_is_strong() {
        let g = Graph::path(4);
        let v = is_strong_decomposition(&g, &[func(&g, &[1, 3, 2, 1])]).unwrap();
        assert!(v.is_strong());
        assert!(v.tuples_checked > 0);
    }

    #[test]
    fn overlapping_paths_on_four_cycle_fail() {
        // arcs 0-1-2 and 2-3-0 overlap at 0 and 2: both halves meet in two pieces
        let g = Graph::cycle(4);
        let f1 = VertexFunction::new(&g, vec![rational(1, 2), int(1), rational(1, 2), int(0)]).unwrap();
        let f2 = VertexFunction::new(&g, vec![rational(1, 2), int(0), rational(1, 2), int(1)]).unwrap();
        let v = is_strong_decomposition(&g, &[f1, f2]).unwrap();
        let violation = v.violation.expect("two disjoint pieces");
        assert_eq!(violation.thresholds.len(), 2);
        assert!(matches!(violation.reason, Contractibility::Disconnected(..)));
    }

    #[test]
    fn three_arcs_on_four_cycle_pass() {
        let g = Graph::cycle(4);
        let parts = vec![func(&g, &[1, 1, 0, 0]), func(&g, &[0, 0, 1, 0]), func(&g, &[0, 0, 0, 1])];
        assert!(is_strong_decomposition(&g, &parts).unwrap().is_strong());
    }

    #[test]
    fn two_disjoint_arcs_on_four_cycle_fail() {
        // supports {0,1} and {2,3}: the open stars meet on two edges
        let g = Graph::cycle(4);
        let parts = vec![func(&g, &[1, 1, 0, 0]), func(&g, &[0, 0, 1, 1])];
        let violation = is_strong_decomposition(&g, &parts).unwrap().violation.unwrap();
        assert!(matches!(violation.reason, Contractibility::Disconnected(Piece::Interior(_), Piece::Interior(_))));
        // the reported thresholds really produce the bad intersection
        let cx = intersection(&g, &parts, &violation.thresholds).unwrap();
        assert!(!is_contractible(&cx).is_contractible_or_empty());
    }

    #[test]
    fn open_cell_corner_is_needed() {
        // on the edge, pieces only meet for thresholds summing below 1
        let g = Graph::cycle(4);
        let parts = vec![func(&g, &[2, 2, 0, 0]), func(&g, &[0, 0, 2, 2])];
        let violation = is_strong_decomposition(&g, &parts).unwrap().violation.unwrap();
        let sum: Rational = violation.thresholds.iter().map(|(_, c)| c.clone()).sum();
        assert!(sum <= int(2));
    }

    #[test]
    fn rejects_non_unimodal_components() {
        let g = Graph::path(3);
        let err = is_strong_decomposition(&g, &[func(&g, &[1, 0, 1])]).unwrap_err();
        assert!(matches!(err, Error::NotUnimodal { index: 0, .. }));
    }
}
