//! Exact unimodal category on small graphs.
//!
//! Every unimodal component is supported on an induced subtree and is
//! non-increasing away from its mode, so a decomposition with `k` components
//! is a choice of `k` rooted subtrees plus values satisfying a linear system.
//! Supports can be taken inclusion-maximal inside `supp f` (pad with zeros),
//! and components never straddle two connected pieces of `supp f`, so each
//! piece is solved on its own and the counts add up.
//!
//! The search enumerates root multisets by decreasing value, then supports
//! per root, pruning with bottleneck upper bounds before any LP is built.
//! LPs are screened in floating point; an infeasibility hint is only trusted
//! once its rounded Farkas multipliers check out exactly, and every positive
//! answer comes from the exact simplex.

use std::collections::VecDeque;

use num_traits::{One, ToPrimitive, Zero};

use crate::decomposition::{Component, Decomposition};
use crate::error::{Error, Result};
use crate::function::{subdivide, VertexFunction};
use crate::graph::{Graph, VertexSubset};
use crate::lp::{self, LinearSystem, LpOutcome, Row};
use crate::scalar::Rational;
use crate::subtrees::maximal_subtree_masks;
use crate::unimodality::{is_strong_decomposition, is_unimodal};

/// Limits for the exponential searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Vertex count after refinement.
    pub max_vertices: usize,
    /// Largest number of components tried for one connected piece of the
    /// support (pieces small enough for the singleton bound are exempt).
    pub max_k: usize,
    pub pivot_cap: usize,
}

impl Budget {
    pub const DEFAULT_VERTICES: usize = 14;
    pub const ENV_VERTICES: &'static str = "UCAT_BUDGET_VERTICES";

    /// Defaults, with the vertex limit taken from `UCAT_BUDGET_VERTICES`
    /// when it is set.
    pub fn from_env() -> Result<Self> {
        let mut b = Budget::default();
        if let Ok(raw) = std::env::var(Self::ENV_VERTICES) {
            b.max_vertices = raw.trim().parse().map_err(|_| Error::InvalidParameter {
                parameter: "UCAT_BUDGET_VERTICES",
                requirement: format!("a nonnegative integer, got `{raw}`"),
            })?;
        }
        Ok(b)
    }

    pub fn with_vertices(mut self, max_vertices: usize) -> Self {
        self.max_vertices = max_vertices;
        self
    }

    fn check_vertices(&self, n: usize) -> Result<()> {
        let limit = self.max_vertices.min(64);
        if n > limit {
            return Err(Error::BudgetExceeded { parameter: "max_vertices", actual: n, limit });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_vertices: Self::DEFAULT_VERTICES, max_k: 6, pivot_cap: 20_000 }
    }
}

/// A rooted induced subtree that may carry one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportCandidate {
    pub support: VertexSubset,
    pub root: usize,
}

impl SupportCandidate {
    pub fn new(g: &Graph, support: VertexSubset, root: usize) -> Result<Self> {
        if !support.contains(root) {
            return Err(Error::InvalidParameter { parameter: "root", requirement: "a vertex of the support".into() });
        }
        if !g.induces_tree(&support) {
            return Err(Error::NotATree);
        }
        Ok(SupportCandidate { support, root })
    }
}

/// Values of `k` rooted components as LP unknowns: one equality per vertex
/// (the components add up to `f`) and one inequality per oriented tree edge
/// (`x[child] <= x[parent]`). Nonnegativity is implicit.
#[derive(Clone, Debug)]
pub struct FeasibilitySystem {
    pub candidates: Vec<SupportCandidate>,
    /// `(component, vertex)` for each unknown.
    pub variables: Vec<(usize, usize)>,
    pub system: LinearSystem<Rational>,
    n: usize,
}

impl FeasibilitySystem {
    pub fn new(g: &Graph, f: &VertexFunction, candidates: Vec<SupportCandidate>) -> Self {
        let n = g.vertex_count();
        let mut variables = Vec::new();
        let mut sums: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
        let mut inequalities = Vec::new();
        for (i, cand) in candidates.iter().enumerate() {
            let mut index = vec![usize::MAX; n];
            let mut queue = VecDeque::from([cand.root]);
            index[cand.root] = variables.len();
            variables.push((i, cand.root));
            while let Some(u) = queue.pop_front() {
                for &w in g.neighbors(u) {
                    if cand.support.contains(w) && index[w] == usize::MAX {
                        index[w] = variables.len();
                        variables.push((i, w));
                        inequalities.push(Row::new(vec![(index[w], Rational::one()), (index[u], -Rational::one())], Rational::zero()));
                        queue.push_back(w);
                    }
                }
            }
        }
        for (j, &(_, v)) in variables.iter().enumerate() {
            sums[v].push((j, Rational::one()));
        }
        let equalities = sums.into_iter().enumerate().map(|(v, terms)| Row::new(terms, f.value(v).clone())).collect();
        let system = LinearSystem { num_vars: variables.len(), equalities, inequalities };
        FeasibilitySystem { candidates, variables, system, n }
    }

    /// Splits an assignment into one function per candidate.
    pub fn decode(&self, x: &[Rational]) -> Vec<VertexFunction> {
        let mut out = vec![vec![Rational::zero(); self.n]; self.candidates.len()];
        for (&(i, v), value) in self.variables.iter().zip(x) {
            out[i][v] = value.clone();
        }
        out.into_iter().map(VertexFunction::from_values_unchecked).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    /// One function per candidate (zero functions included).
    Feasible(Vec<VertexFunction>),
    /// Exact Farkas multipliers proving infeasibility.
    Infeasible(Vec<Rational>),
}

/// Exact feasibility of a component system.
pub fn lp_feasible(sys: &FeasibilitySystem, pivot_cap: usize) -> Result<Feasibility> {
    match decide(&sys.system, pivot_cap)? {
        LpOutcome::Feasible(x) => Ok(Feasibility::Feasible(sys.decode(&x))),
        LpOutcome::Infeasible(y) => Ok(Feasibility::Infeasible(y)),
        LpOutcome::PivotLimit => unreachable!("decide reports the pivot limit as an error"),
    }
}

fn pivot_error(cap: usize) -> Error {
    Error::BudgetExceeded { parameter: "pivot_cap", actual: cap + 1, limit: cap }
}

/// True only when float screening finds infeasibility and the rounded
/// certificate checks out exactly; anything else is "maybe feasible".
fn screen_infeasible(sys: &LinearSystem<Rational>, pivot_cap: usize) -> bool {
    let approx = float_system(sys);
    match lp::solve_approx(&approx, pivot_cap, 1e-9) {
        LpOutcome::Infeasible(y) => rationalize_certificate(sys, &approx, &y).is_some(),
        _ => false,
    }
}

/// Float screening followed by exact confirmation.
fn decide(sys: &LinearSystem<Rational>, pivot_cap: usize) -> Result<LpOutcome<Rational>> {
    let approx = float_system(sys);
    let a = lp::solve_approx(&approx, pivot_cap, 1e-9);
    if let LpOutcome::Infeasible(y) = a {
        let c = rationalize_certificate(sys, &approx, &y);
        if let Some(y) = c {
            return Ok(LpOutcome::Infeasible(y));
        }
    }
    match lp::solve(sys, pivot_cap) {
        LpOutcome::PivotLimit => Err(pivot_error(pivot_cap)),
        outcome => Ok(outcome),
    }
}

fn float_system(sys: &LinearSystem<Rational>) -> LinearSystem<f64> {
    LinearSystem {
        num_vars: sys.num_vars,
        equalities: sys.equalities.iter().map(to_float_row).collect(),
        inequalities: sys.inequalities.iter().map(to_float_row).collect(),
    }
}

fn to_float_row(row: &Row<Rational>) -> Row<f64> {
    Row::new(row.terms.iter().map(|(j, c)| (*j, to_f64(c))).collect(), to_f64(&row.rhs))
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Common denominators tried when turning float answers into exact ones.
const DENOMINATORS: [i64; 9] = [1, 2, 6, 12, 60, 420, 840, 27_720, 720_720];

/// Rounds float multipliers to a few small denominators and keeps the first
/// rounding that is an exact certificate.
fn rationalize_certificate(sys: &LinearSystem<Rational>, approx: &LinearSystem<f64>, y: &[f64]) -> Option<Vec<Rational>> {
    let scale = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !(scale.is_finite() && scale > 0.0) {
        return None;
    }
    for den in DENOMINATORS {
        let rounded: Vec<f64> = y.iter().map(|v| (v / scale * den as f64).round()).collect();
        if !roughly_farkas(approx, &rounded) {
            continue;
        }
        let ints: Vec<i64> = rounded.iter().map(|&v| v as i64).collect();
        let verified = match integer_farkas(sys, &ints) {
            Some(ok) => ok,
            None => {
                let cand: Vec<Rational> = ints.iter().map(|&v| Rational::new(v.into(), den.into())).collect();
                lp::is_farkas_certificate(sys, &cand)
            }
        };
        if verified {
            return Some(ints.iter().map(|&v| Rational::new(v.into(), den.into())).collect());
        }
    }
    None
}

/// Rounds a float point to a few small denominators and keeps the first
/// rounding that satisfies the system exactly.
fn rationalize_point(sys: &LinearSystem<Rational>, x: &[f64]) -> Option<Vec<Rational>> {
    for den in DENOMINATORS {
        let cand: Vec<Rational> = x.iter().map(|&v| Rational::new(((v * den as f64).round() as i64).into(), den.into())).collect();
        if lp::satisfies(sys, &cand) {
            return Some(cand);
        }
    }
    None
}

/// Exact Farkas check of integer multipliers (any positive scaling of a
/// certificate is one) in machine integers; `None` when the system has
/// non-integer data or the sums overflow.
fn integer_farkas(sys: &LinearSystem<Rational>, y: &[i64]) -> Option<bool> {
    let m_eq = sys.equalities.len();
    if y[m_eq..].iter().any(|&v| v > 0) {
        return Some(false);
    }
    let as_int = |x: &Rational| -> Option<i128> { x.is_integer().then(|| x.to_integer().to_i128()).flatten() };
    let mut col = vec![0i128; sys.num_vars];
    let mut rhs = 0i128;
    for (row, &yr) in sys.equalities.iter().chain(&sys.inequalities).zip(y) {
        if yr == 0 {
            continue;
        }
        let yr = yr as i128;
        for (j, c) in &row.terms {
            col[*j] = col[*j].checked_add(yr.checked_mul(as_int(c)?)?)?;
        }
        rhs = rhs.checked_add(yr.checked_mul(as_int(&row.rhs)?)?)?;
    }
    Some(col.iter().all(|&c| c <= 0) && rhs > 0)
}

/// Float pre-check of [`lp::is_farkas_certificate`] with a little slack, so
/// the exact check only runs on promising roundings.
fn roughly_farkas(sys: &LinearSystem<f64>, y: &[f64]) -> bool {
    let m_eq = sys.equalities.len();
    if y[m_eq..].iter().any(|&v| v > 0.0) {
        return false;
    }
    let mut col = vec![0.0f64; sys.num_vars];
    let mut rhs = 0.0;
    let mut size = 1.0f64;
    for (row, &yr) in sys.equalities.iter().chain(&sys.inequalities).zip(y) {
        if yr == 0.0 {
            continue;
        }
        for &(j, c) in &row.terms {
            col[j] += yr * c;
            size = size.max((yr * c).abs());
        }
        rhs += yr * row.rhs;
        size = size.max((yr * row.rhs).abs());
    }
    let tol = 1e-9 * size;
    col.iter().all(|&c| c <= tol) && rhs > -tol
}

/// Answer of the exact solvers.
#[derive(Clone, Debug, PartialEq)]
pub struct UcatResult {
    pub value: usize,
    /// Components over `graph`, which is the input refined `refinement` times.
    pub certificate: Decomposition,
    pub graph: Graph,
    /// The decomposed function: `f^p` on the refined graph.
    pub function: VertexFunction,
    pub refinement: usize,
    pub p: u32,
    /// Whether the certificate also passes the strong check.
    pub strong: bool,
    /// For strong searches: the value exceeds the plain unimodal category.
    pub strong_raised: bool,
    /// False when some conclusion rests on a search that was not exhaustive.
    pub complete: bool,
    pub warnings: Vec<String>,
}

fn prepare(g: &Graph, f: &VertexFunction, p: u32, r: usize, budget: &Budget) -> Result<(Graph, VertexFunction)> {
    if f.len() != g.vertex_count() {
        return Err(Error::ValueCount { expected: g.vertex_count(), got: f.len() });
    }
    if p == 0 {
        return Err(Error::InvalidParameter { parameter: "p", requirement: "a positive integer".into() });
    }
    let refined_n = g.vertex_count() + r * g.edge_count();
    budget.check_vertices(refined_n)?;
    let fp = f.pow(p);
    if r == 0 {
        return Ok((g.clone(), fp));
    }
    let sub = subdivide(g, &fp, r);
    Ok((sub.graph, sub.function))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Want {
    Weak,
    Strong,
}

struct Solved {
    parts: Vec<VertexFunction>,
    /// Smallest feasible count seen, ignoring the strong requirement.
    weak_value: usize,
    complete: bool,
}

/// Minimal decomposition of `f` on `g` with at most `limit` components
/// (`None` when the limit is too small).
fn solve(g: &Graph, f: &VertexFunction, limit: Option<usize>, want: Want, budget: &Budget) -> Result<Option<Solved>> {
    let pieces = g.components_within(&f.support());
    let mut parts = Vec::new();
    let mut weak_value = 0;
    let mut complete = true;
    for (idx, members) in pieces.iter().enumerate() {
        let later = pieces.len() - idx - 1;
        let cap = match limit {
            Some(k) => match k.checked_sub(parts.len() + later) {
                Some(c) if c >= 1 => Some(c),
                _ => return Ok(None),
            },
            None => None,
        };
        let Some(piece) = solve_piece(g, f, members, cap, want, budget)? else { return Ok(None) };
        weak_value += piece.weak_value;
        complete &= piece.complete;
        parts.extend(piece.parts);
    }
    Ok(Some(Solved { parts, weak_value, complete }))
}

fn solve_piece(
    g: &Graph,
    f: &VertexFunction,
    members: &[usize],
    cap: Option<usize>,
    want: Want,
    budget: &Budget,
) -> Result<Option<Solved>> {
    let n = g.vertex_count();
    let within = VertexSubset::from_vertices(n, members.iter().copied());
    let restricted = f.restrict(&within);
    let top = cap.map_or(members.len(), |c| c.min(members.len()));
    let mut weak_value: Option<usize> = None;
    let mut complete = true;
    if is_unimodal(g, &restricted)?.is_unimodal() {
        return Ok(Some(Solved { parts: vec![restricted], weak_value: 1, complete: true }));
    }
    let mut search: Option<PieceSearch> = None;
    for k in 2..=top {
        if k == members.len() {
            // one component per vertex always works and is always strong
            let parts: Vec<VertexFunction> = members
                .iter()
                .map(|&v| restricted.restrict(&VertexSubset::from_vertices(n, [v])))
                .collect();
            return Ok(Some(Solved { parts, weak_value: weak_value.unwrap_or(k), complete }));
        }
        if k > budget.max_k {
            return Err(Error::BudgetExceeded { parameter: "max_k", actual: k, limit: budget.max_k });
        }
        let search = search.get_or_insert_with(|| PieceSearch::new(g, restricted.clone(), members));
        let outcome = search.run(k, want, budget)?;
        complete &= outcome.complete;
        if outcome.weak_feasible && weak_value.is_none() {
            weak_value = Some(k);
        }
        if let Some(parts) = outcome.found {
            return Ok(Some(Solved { parts, weak_value: weak_value.unwrap_or(k), complete }));
        }
    }
    Ok(None)
}

struct RunOutcome {
    found: Option<Vec<VertexFunction>>,
    weak_feasible: bool,
    complete: bool,
}

/// Candidate data for one connected piece of the support.
struct PieceSearch<'a> {
    g: &'a Graph,
    /// `f` restricted to the piece.
    f: VertexFunction,
    members: Vec<usize>,
    /// Roots in search order: decreasing value, then index.
    roots: Vec<usize>,
    /// Per vertex: every maximal support containing it, rooted there.
    by_root: Vec<Vec<Rooted>>,
    /// `width[root][v]`: best bound any support rooted at `root` gives `v`.
    width: Vec<Vec<f64>>,
    target: Vec<f64>,
}

/// Copies of one root still to be placed, with their surviving options.
#[derive(Clone)]
struct Group {
    root: usize,
    left: usize,
    domain: Vec<usize>,
}

/// A maximal support with a chosen root.
#[derive(Clone)]
struct Rooted {
    mask: u64,
    /// Bottleneck value of `f` on the path from the root, per vertex.
    ub: Vec<f64>,
    /// Support vertices top-down with their parents (the root comes first).
    order: Vec<(usize, usize)>,
}

fn below(sum: f64, target: f64) -> bool {
    sum < target - 1e-9 * target.max(1.0)
}

impl<'a> PieceSearch<'a> {
    fn new(g: &'a Graph, f: VertexFunction, members: &[usize]) -> Self {
        let n = g.vertex_count();
        let allowed = members.iter().fold(0u64, |m, &v| m | 1 << v);
        let supports = maximal_subtree_masks(g, allowed);
        let target: Vec<f64> = f.values().iter().map(to_f64).collect();
        let mut by_root = vec![Vec::new(); n];
        let mut width = vec![vec![0.0; n]; n];
        for &mask in &supports {
            for &root in members {
                if mask >> root & 1 == 0 {
                    continue;
                }
                let mut ub = vec![0.0; n];
                let mut seen = 1u64 << root;
                ub[root] = target[root];
                let mut order = vec![(root, usize::MAX)];
                let mut head = 0;
                while head < order.len() {
                    let u = order[head].0;
                    head += 1;
                    for &w in g.neighbors(u) {
                        if mask >> w & 1 == 1 && seen >> w & 1 == 0 {
                            seen |= 1 << w;
                            ub[w] = ub[u].min(target[w]);
                            order.push((w, u));
                        }
                    }
                }
                for v in 0..n {
                    width[root][v] = f64::max(width[root][v], ub[v]);
                }
                by_root[root].push(Rooted { mask, ub, order });
            }
        }
        let mut roots = members.to_vec();
        roots.sort_by(|&a, &b| f.value(b).cmp(f.value(a)).then(a.cmp(&b)));
        PieceSearch { g, f, members: members.to_vec(), roots, by_root, width, target }
    }

    fn run(&self, k: usize, want: Want, budget: &Budget) -> Result<RunOutcome> {
        let mut state = RunOutcome { found: None, weak_feasible: false, complete: true };
        let mut combo = vec![0usize; k];
        loop {
            let roots: Vec<usize> = combo.iter().map(|&i| self.roots[i]).collect();
            if self.roots_can_cover(&roots) && !self.roots_refuted(&roots, budget) {
                self.try_roots(&roots, want, budget, &mut state)?;
                if state.found.is_some() {
                    return Ok(state);
                }
            }
            // next nondecreasing combination
            let Some(pos) = (0..k).rev().find(|&i| combo[i] + 1 < self.roots.len()) else { break };
            let next = combo[pos] + 1;
            combo[pos..].iter_mut().for_each(|c| *c = next);
        }
        Ok(state)
    }

    fn roots_can_cover(&self, roots: &[usize]) -> bool {
        self.members.iter().all(|&v| !below(roots.iter().map(|&r| self.width[r][v]).sum(), self.target[v]))
    }

    /// LP relaxation over all supports at once. Each component keeps its
    /// values `x`, but instead of a parent every non-root vertex splits its
    /// value over its neighbors (`w[u→v] <= x[u]`), a non-root vertex feeds
    /// at most `deg - 1` children's worth, and nothing exceeds the root or
    /// the bottleneck width. Any real decomposition with these roots
    /// satisfies it (put the whole value on the parent arc), so an exactly
    /// verified Farkas certificate rules the root tuple out.
    fn roots_refuted(&self, roots: &[usize], budget: &Budget) -> bool {
        let n = self.g.vertex_count();
        let inside = |v: usize| self.target[v] > 0.0;
        let mut x = vec![vec![usize::MAX; n]; roots.len()];
        let mut num_vars = 0;
        for (i, &r) in roots.iter().enumerate() {
            for &v in &self.members {
                if self.width[r][v] > 0.0 {
                    x[i][v] = num_vars;
                    num_vars += 1;
                }
            }
        }
        let one = Rational::one;
        let mut equalities: Vec<Row<Rational>> = Vec::new();
        let mut inequalities: Vec<Row<Rational>> = Vec::new();
        for &v in &self.members {
            let terms = (0..roots.len()).filter(|&i| x[i][v] != usize::MAX).map(|i| (x[i][v], one())).collect();
            equalities.push(Row::new(terms, self.f.value(v).clone()));
        }
        for (i, &r) in roots.iter().enumerate() {
            // w variables: arcs u→v between live vertices, v not the root
            let mut feeds: Vec<Vec<usize>> = vec![Vec::new(); n];
            let mut fed: Vec<Vec<usize>> = vec![Vec::new(); n];
            for &v in &self.members {
                if v == r || x[i][v] == usize::MAX {
                    continue;
                }
                for &u in self.g.neighbors(v) {
                    if inside(u) && x[i][u] != usize::MAX {
                        let w = num_vars;
                        num_vars += 1;
                        fed[v].push(w);
                        feeds[u].push(w);
                        inequalities.push(Row::new(vec![(w, one()), (x[i][u], -one())], Rational::zero()));
                    }
                }
                let mut terms = vec![(x[i][v], one())];
                terms.extend(fed[v].iter().map(|&w| (w, -one())));
                inequalities.push(Row::new(terms, Rational::zero()));
                inequalities.push(Row::new(vec![(x[i][v], one()), (x[i][r], -one())], Rational::zero()));
            }
            for &u in &self.members {
                if u == r || feeds[u].len() < 2 {
                    continue;
                }
                let deg = self.g.neighbors(u).iter().filter(|&&w| inside(w)).count();
                let mut terms: Vec<(usize, Rational)> = feeds[u].iter().map(|&w| (w, one())).collect();
                terms.push((x[i][u], -Rational::from_integer((deg as i64 - 1).into())));
                inequalities.push(Row::new(terms, Rational::zero()));
            }
        }
        let sys = LinearSystem { num_vars, equalities, inequalities };
        screen_infeasible(&sys, budget.pivot_cap)
    }

    fn try_roots(&self, roots: &[usize], want: Want, budget: &Budget, state: &mut RunOutcome) -> Result<()> {
        let mut groups: Vec<Group> = Vec::new();
        for &root in roots {
            match groups.last_mut() {
                Some(g) if g.root == root => g.left += 1,
                _ => groups.push(Group { root, left: 1, domain: (0..self.by_root[root].len()).collect() }),
            }
        }
        let mut picks = Vec::with_capacity(roots.len());
        self.descend(&mut picks, groups, want, budget, state)
    }

    /// Forward checking: every root still to be placed keeps the options
    /// that survive propagation against the picks so far; the next pick
    /// comes from the smallest such domain. Options of one root are picked
    /// in increasing order, so each multiset of supports is visited once.
    fn descend(
        &self,
        picks: &mut Vec<(usize, usize)>,
        groups: Vec<Group>,
        want: Want,
        budget: &Budget,
        state: &mut RunOutcome,
    ) -> Result<()> {
        if groups.iter().all(|g| g.left == 0) {
            return self.leaf(picks, want, budget, state);
        }
        let Some(filtered) = self.filter_domains(picks, groups) else { return Ok(()) };
        let gi = (0..filtered.len())
            .filter(|&i| filtered[i].left > 0)
            .min_by_key(|&i| filtered[i].domain.len())
            .expect("some root is left to place");
        let options = filtered[gi].domain.clone();
        let root = filtered[gi].root;
        for (idx, &o) in options.iter().enumerate() {
            let mut child = filtered.clone();
            child[gi].left -= 1;
            child[gi].domain = options[idx..].to_vec();
            picks.push((root, o));
            let r = self.descend(picks, child, want, budget, state);
            picks.pop();
            r?;
            if state.found.is_some() {
                return Ok(());
            }
        }
        Ok(())
    }

    /// Drops options that fail propagation against the picks and the best
    /// the other roots can still do, until nothing changes. `None` when some
    /// root runs out of options.
    fn filter_domains(&self, picks: &[(usize, usize)], mut groups: Vec<Group>) -> Option<Vec<Group>> {
        let n = self.g.vertex_count();
        let remaining: usize = groups.iter().map(|g| g.left).sum();
        let mut trial: Vec<&Rooted> = picks.iter().map(|&(r, o)| &self.by_root[r][o]).collect();
        loop {
            let best: Vec<Vec<f64>> = groups
                .iter()
                .map(|g| {
                    let mut m = vec![0.0f64; n];
                    for &o in &g.domain {
                        for (x, &u) in m.iter_mut().zip(&self.by_root[g.root][o].ub) {
                            *x = x.max(u);
                        }
                    }
                    m
                })
                .collect();
            let mut changed = false;
            for gi in 0..groups.len() {
                if groups[gi].left == 0 {
                    continue;
                }
                let rest = (remaining > 1).then(|| {
                    let mut rest = vec![0.0f64; n];
                    for (gj, h) in groups.iter().enumerate() {
                        let times = h.left - usize::from(gi == gj);
                        for (x, &b) in rest.iter_mut().zip(&best[gj]) {
                            *x += times as f64 * b;
                        }
                    }
                    rest
                });
                let root = groups[gi].root;
                let before = groups[gi].domain.len();
                groups[gi].domain.retain(|&o| {
                    trial.push(&self.by_root[root][o]);
                    let ok = self.propagate(&trial, rest.as_deref());
                    trial.pop();
                    ok
                });
                if groups[gi].domain.is_empty() {
                    return None;
                }
                changed |= groups[gi].domain.len() < before;
            }
            if !changed || remaining == 1 {
                return Some(groups);
            }
        }
    }

    /// Interval propagation: `lo <= x <= hi` per unknown, tightened through
    /// the vertex sums and the monotone tree edges. Components not chosen
    /// yet are lumped into one unknown per vertex bounded by `rest`. False
    /// means certainly infeasible; the float tolerance only ever errs
    /// towards "maybe feasible".
    fn propagate(&self, picks: &[&Rooted], rest: Option<&[f64]>) -> bool {
        let n = self.g.vertex_count();
        let scale = self.target.iter().fold(1.0f64, |m, &t| m.max(t));
        let tol = 1e-9 * scale;
        let mut hi: Vec<Vec<f64>> = picks.iter().map(|p| p.ub.clone()).collect();
        let mut masks: Vec<u64> = picks.iter().map(|p| p.mask).collect();
        if let Some(rest) = rest {
            hi.push(rest.to_vec());
            masks.push(u64::MAX);
        }
        let k = hi.len();
        let mut lo = vec![vec![0.0f64; n]; k];
        for _round in 0..4 * n + 8 {
            let mut changed = false;
            for &v in &self.members {
                let t = self.target[v];
                let (mut sum_hi, mut sum_lo) = (0.0, 0.0);
                for i in 0..k {
                    if masks[i] >> v & 1 == 1 {
                        sum_hi += hi[i][v];
                        sum_lo += lo[i][v];
                    }
                }
                if sum_hi < t - tol || sum_lo > t + tol {
                    return false;
                }
                for i in 0..k {
                    if masks[i] >> v & 1 == 0 {
                        continue;
                    }
                    let new_lo = t - (sum_hi - hi[i][v]);
                    if new_lo > lo[i][v] + tol {
                        lo[i][v] = new_lo;
                        changed = true;
                    }
                    let new_hi = t - (sum_lo - lo[i][v]);
                    if new_hi < hi[i][v] - tol {
                        hi[i][v] = new_hi;
                        changed = true;
                    }
                }
            }
            for (i, pick) in picks.iter().enumerate() {
                for &(w, u) in pick.order.iter().skip(1) {
                    if hi[i][u] < hi[i][w] - tol {
                        hi[i][w] = hi[i][u];
                        changed = true;
                    }
                }
                for &(w, u) in pick.order.iter().skip(1).rev() {
                    if lo[i][w] > lo[i][u] + tol {
                        lo[i][u] = lo[i][w];
                        changed = true;
                    }
                }
                if pick.order.iter().any(|&(v, _)| lo[i][v] > hi[i][v] + tol) {
                    return false;
                }
            }
            if !changed {
                break;
            }
        }
        true
    }

    fn leaf(&self, picks: &[(usize, usize)], want: Want, budget: &Budget, state: &mut RunOutcome) -> Result<()> {
        let n = self.g.vertex_count();
        let candidates: Vec<SupportCandidate> = picks
            .iter()
            .map(|&(root, o)| SupportCandidate {
                support: VertexSubset::from_mask(n, self.by_root[root][o].mask),
                root,
            })
            .collect();
        let sys = FeasibilitySystem::new(self.g, &self.f, candidates);
        let LpOutcome::Feasible(x) = decide(&sys.system, budget.pivot_cap)? else { return Ok(()) };
        state.weak_feasible = true;
        let nonzero = |x: &[Rational]| -> Vec<VertexFunction> {
            sys.decode(x).into_iter().filter(|h| !h.is_zero()).collect()
        };
        let first = nonzero(&x);
        if want == Want::Weak || is_strong_decomposition(self.g, &first)?.is_strong() {
            state.found = Some(first);
            return Ok(());
        }
        // extreme points in every coordinate direction, then their centroid
        let vars = sys.system.num_vars;
        let approx = float_system(&sys.system);
        let mut points: Vec<Vec<Rational>> = vec![x];
        for j in 0..vars {
            for sign in [-1.0, 1.0] {
                let mut cost = vec![0.0; vars];
                cost[j] = sign;
                let p = lp::minimize_approx(&approx, &cost, budget.pivot_cap)
                    .and_then(|xf| rationalize_point(&sys.system, &xf))
                    .or_else(|| lp::vertex_towards(&sys.system, &approx, &cost, budget.pivot_cap));
                let Some(p) = p else {
                    state.complete = false;
                    continue;
                };
                if points.contains(&p) {
                    continue;
                }
                let parts = nonzero(&p);
                if is_strong_decomposition(self.g, &parts)?.is_strong() {
                    state.found = Some(parts);
                    return Ok(());
                }
                points.push(p);
            }
        }
        let count = Rational::from_integer((points.len() as i64).into());
        let centroid: Vec<Rational> = (0..vars)
            .map(|j| points.iter().fold(Rational::zero(), |acc, p| acc + p[j].clone()) / count.clone())
            .collect();
        let parts = nonzero(&centroid);
        if is_strong_decomposition(self.g, &parts)?.is_strong() {
            state.found = Some(parts);
        }
        Ok(())
    }
}

fn finish(
    g: Graph,
    f: VertexFunction,
    solved: Solved,
    r: usize,
    p: u32,
    want: Want,
    original_is_forest: bool,
) -> Result<UcatResult> {
    let components: Vec<Component> = solved.parts.into_iter().filter_map(Component::from_values).collect();
    let certificate = Decomposition::sum(components);
    if let Err(e) = certificate.check(&g, &f)? {
        panic!("exact solver produced an invalid certificate: {e:?}");
    }
    let strong = is_strong_decomposition(&g, &certificate.functions())?.is_strong();
    let value = certificate.len();
    let mut warnings = Vec::new();
    if !original_is_forest {
        warnings.push(format!("upper bound at refinement {r}"));
    }
    let strong_raised = want == Want::Strong && value > solved.weak_value;
    let mut complete = solved.complete;
    if strong_raised {
        warnings.push("strong search incomplete: lower counts were ruled out over sampled extreme points only".into());
        complete = false;
    } else if !solved.complete {
        warnings.push("strong search incomplete: pivot cap reached while sampling extreme points".into());
    }
    if want == Want::Strong && !strong_raised {
        // the plain category is a lower bound, so the strong value is certain
        complete = true;
    }
    Ok(UcatResult { value, certificate, graph: g, function: f, refinement: r, p, strong, strong_raised, complete, warnings })
}

/// Decides `ucat¹(f) <= k` on `g` refined `r` times; `Some` carries a
/// minimal certificate.
pub fn ucat_leq(g: &Graph, f: &VertexFunction, k: usize, r: usize, budget: &Budget) -> Result<Option<UcatResult>> {
    let (h, fh) = prepare(g, f, 1, r, budget)?;
    match solve(&h, &fh, Some(k), Want::Weak, budget)? {
        Some(s) => finish(h, fh, s, r, 1, Want::Weak, g.is_forest()).map(Some),
        None => Ok(None),
    }
}

/// `ucat^p(f)` as the minimal decomposition of `f^p` on `g` refined `r` times.
pub fn exact_ucat(g: &Graph, f: &VertexFunction, p: u32, r: usize, budget: &Budget) -> Result<UcatResult> {
    let (h, fh) = prepare(g, f, p, r, budget)?;
    let solved = solve(&h, &fh, None, Want::Weak, budget)?.expect("unbounded search always succeeds");
    finish(h, fh, solved, r, p, Want::Weak, g.is_forest())
}

/// `ucat_s^p(f)`: the fewest components whose superlevel sets also form a
/// good cover. Per support tuple the candidates are the first exact
/// solution, the extreme points in each coordinate direction and their
/// centroid.
pub fn exact_ucat_strong(g: &Graph, f: &VertexFunction, p: u32, budget: &Budget) -> Result<UcatResult> {
    let (h, fh) = prepare(g, f, p, 0, budget)?;
    let solved = solve(&h, &fh, None, Want::Strong, budget)?.expect("singletons are always strong");
    finish(h, fh, solved, 0, p, Want::Strong, g.is_forest())
}

/// Whether a strong decomposition with at most `k` components is found.
pub fn strong_ucat_leq(g: &Graph, f: &VertexFunction, k: usize, budget: &Budget) -> Result<Option<UcatResult>> {
    let (h, fh) = prepare(g, f, 1, 0, budget)?;
    match solve(&h, &fh, Some(k), Want::Strong, budget)? {
        Some(s) => finish(h, fh, s, 0, 1, Want::Strong, g.is_forest()).map(Some),
        None => Ok(None),
    }
}

/// Minimum cover of the vertices by induced subtrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCover {
    pub size: usize,
    pub sets: Vec<VertexSubset>,
}

/// Fewest induced subtrees whose vertex sets cover `g`; their open stars
/// then cover the whole graph. Sets may overlap.
///
/// Open sets are limited to open stars of vertex sets of `g` itself. Sets
/// allowed to end inside an edge do better on dense graphs: after one
/// subdivision every connected graph with a cycle is covered by two.
pub fn min_tree_cover(g: &Graph, budget: &Budget) -> Result<TreeCover> {
    budget.check_vertices(g.vertex_count())?;
    if !g.is_connected() {
        return Err(Error::InvalidParameter { parameter: "graph", requirement: "connected and nonempty".into() });
    }
    let n = g.vertex_count();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let trees = maximal_subtree_masks(g, full);
    for k in 1..=n {
        let mut picked = Vec::new();
        if cover_search(&trees, full, 0, k, &mut picked) {
            let sets = picked.iter().map(|&m| VertexSubset::from_mask(n, m)).collect();
            return Ok(TreeCover { size: k, sets });
        }
    }
    unreachable!("a connected graph is covered by its edges or a single vertex")
}

fn cover_search(trees: &[u64], full: u64, covered: u64, left: usize, picked: &mut Vec<u64>) -> bool {
    if covered == full {
        return true;
    }
    if left == 0 {
        return false;
    }
    let v = (!covered & full).trailing_zeros();
    for &t in trees.iter().filter(|&&t| t >> v & 1 == 1) {
        picked.push(t);
        if cover_search(trees, full, covered | t, left - 1, picked) {
            return true;
        }
        picked.pop();
    }
    false
}
