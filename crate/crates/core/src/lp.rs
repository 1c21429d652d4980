//! Simplex for `A x = b, C x <= d, x >= 0`.
//!
//! Exact pivoting follows Bland's rule, so the pivot sequence is
//! deterministic and cannot cycle. Infeasibility comes with a Farkas multiplier vector that is
//! re-checked before it is returned.

use std::collections::{BTreeSet, HashSet};

use crate::scalar::Scalar;

/// Sparse linear row `Σ coef · x_var (op) rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Row<S> {
    pub terms: Vec<(usize, S)>,
    pub rhs: S,
}

impl<S> Row<S> {
    pub fn new(terms: Vec<(usize, S)>, rhs: S) -> Self {
        Row { terms, rhs }
    }
}

/// Linear system over nonnegative variables `0..num_vars`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearSystem<S> {
    pub num_vars: usize,
    pub equalities: Vec<Row<S>>,
    pub inequalities: Vec<Row<S>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<S> {
    /// A satisfying point (values of `0..num_vars`).
    Feasible(Vec<S>),
    /// Multipliers `y`, one per equality then one per inequality, with
    /// `y_ineq <= 0`, `yᵀA <= 0` columnwise and `yᵀb > 0`.
    Infeasible(Vec<S>),
    /// Gave up after the configured number of pivots.
    PivotLimit,
}

impl<S> LpOutcome<S> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible(_))
    }
}

struct Tableau<S> {
    /// `rows × (cols + 1)`, last column is the right-hand side.
    a: Vec<Vec<S>>,
    basis: Vec<usize>,
    /// Columns: variables, one slack per inequality, then artificials.
    cols: usize,
    /// First artificial column.
    art: usize,
    /// Artificial column of each original row, if it has one.
    row_art: Vec<Option<usize>>,
    /// Rows negated to make the right-hand side nonnegative.
    flipped: Vec<bool>,
    m_eq: usize,
    num_vars: usize,
    /// Reduced costs of the current objective; the last entry is minus its
    /// value. Updated by every pivot.
    obj: Vec<S>,
    pivots: usize,
    /// Entries within `eps` of zero count as zero (always zero for exact scalars).
    eps: S,
}

impl<S: Scalar> Tableau<S> {
    fn pos(&self, x: &S) -> bool {
        *x > self.eps
    }

    fn neg(&self, x: &S) -> bool {
        *x < -self.eps.clone()
    }

    fn nonzero(&self, x: &S) -> bool {
        self.pos(x) || self.neg(x)
    }

    /// Inequality rows with a nonnegative right-hand side start from their
    /// slack; every other row gets an artificial.
    fn build(sys: &LinearSystem<S>, eps: S) -> Self {
        let m_eq = sys.equalities.len();
        let m = m_eq + sys.inequalities.len();
        let n = sys.num_vars;
        let art = n + sys.inequalities.len();
        let rows: Vec<&Row<S>> = sys.equalities.iter().chain(&sys.inequalities).collect();
        let flipped: Vec<bool> = rows.iter().map(|r| r.rhs.lt_zero()).collect();
        let mut row_art = vec![None; m];
        let mut next = art;
        for r in 0..m {
            if r < m_eq || flipped[r] {
                row_art[r] = Some(next);
                next += 1;
            }
        }
        let cols = next;
        let mut a = vec![vec![S::zero(); cols + 1]; m];
        let mut basis = Vec::with_capacity(m);
        for (r, row) in rows.iter().enumerate() {
            for (j, c) in &row.terms {
                a[r][*j] = a[r][*j].clone() + c.clone();
            }
            if r >= m_eq {
                a[r][n + (r - m_eq)] = S::one();
            }
            a[r][cols] = row.rhs.clone();
            if flipped[r] {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            match row_art[r] {
                Some(c) => {
                    a[r][c] = S::one();
                    basis.push(c);
                }
                None => basis.push(n + (r - m_eq)),
            }
        }
        let obj = vec![S::zero(); cols + 1];
        Tableau { a, basis, cols, art, row_art, flipped, m_eq, num_vars: n, obj, pivots: 0, eps }
    }

    /// Installs a cost per column and prices it against the current basis.
    fn set_objective(&mut self, cost: &dyn Fn(usize) -> S) {
        self.obj = (0..=self.cols).map(|j| if j < self.cols { cost(j) } else { S::zero() }).collect();
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = cost(b);
            if cb.is_zero() {
                continue;
            }
            for (o, x) in self.obj.iter_mut().zip(&self.a[r]) {
                if !x.is_zero() {
                    *o = o.clone() - cb.clone() * x.clone();
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        self.pivots += 1;
        let inv = S::one() / self.a[r][c].clone();
        for x in self.a[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        let pivot_row = std::mem::take(&mut self.a[r]);
        let nz: Vec<usize> = (0..=self.cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let eps = self.eps.clone();
        for row in self.a.iter_mut() {
            if row.is_empty() || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &nz {
                let x = row[j].clone() - factor.clone() * pivot_row[j].clone();
                // flush rounding noise so it cannot be chosen as a pivot
                row[j] = if x.abs() <= eps { S::zero() } else { x };
            }
            row[c] = S::zero();
        }
        if !self.obj[c].is_zero() {
            let factor = self.obj[c].clone();
            for &j in &nz {
                let x = self.obj[j].clone() - factor.clone() * pivot_row[j].clone();
                self.obj[j] = if x.abs() <= eps { S::zero() } else { x };
            }
            self.obj[c] = S::zero();
        }
        self.a[r] = pivot_row;
        self.basis[r] = c;
    }

    fn objective(&self) -> S {
        let mut total = S::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            if b >= self.art {
                total = total + self.a[r][self.cols].clone();
            }
        }
        total
    }

    /// Minimizes the installed objective over columns `0..limit` with
    /// Bland's rule. Inexact screening starts with Dantzig's rule and only
    /// falls back to Bland's rule once the pivot count suggests cycling.
    /// Returns `None` when the pivot cap is hit and `Some(false)` when the
    /// objective is unbounded below.
    fn minimize(&mut self, limit: usize, pivot_cap: usize) -> Option<bool> {
        let bland_after = if self.eps.is_zero() { 0 } else { self.pivots + 4 * (self.a.len() + limit) };
        loop {
            let mut in_basis = vec![false; self.cols];
            for &b in &self.basis {
                in_basis[b] = true;
            }
            let candidates = (0..limit).filter(|&j| !in_basis[j] && self.neg(&self.obj[j]));
            let entering = if self.pivots < bland_after {
                candidates.reduce(|best, j| if self.obj[j] < self.obj[best] { j } else { best })
            } else {
                candidates.into_iter().next()
            };
            let Some(c) = entering else { return Some(true) };
            if self.pivots >= pivot_cap {
                return None;
            }
            match self.ratio_row(c) {
                Some(r) => self.pivot(r, c),
                None => return Some(false),
            }
        }
    }

    /// Phase one; false when the pivot cap is hit.
    fn phase_one(&mut self, pivot_cap: usize) -> bool {
        let art = self.art;
        self.set_objective(&move |j: usize| if j >= art { S::one() } else { S::zero() });
        let cols = self.cols;
        self.minimize(cols, pivot_cap).is_some()
    }

    /// Minimum ratio row, ties broken by smallest basic variable.
    fn ratio_row(&self, c: usize) -> Option<usize> {
        let mut best: Option<(usize, S)> = None;
        for (r, row) in self.a.iter().enumerate() {
            if !self.pos(&row[c]) {
                continue;
            }
            let ratio = row[self.cols].clone() / row[c].clone();
            best = match best {
                Some((br, bv)) if bv < ratio || (bv == ratio && self.basis[br] < self.basis[r]) => Some((br, bv)),
                _ => Some((r, ratio)),
            };
        }
        best.map(|(r, _)| r)
    }

    fn point(&self) -> Vec<S> {
        let mut x = vec![S::zero(); self.num_vars];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.num_vars {
                x[b] = self.a[r][self.cols].clone();
            }
        }
        x
    }

    /// Phase-one duals in the caller's row signs: `1 - d` for a row with an
    /// artificial, `-d` of the slack otherwise.
    fn farkas(&self) -> Vec<S> {
        (0..self.row_art.len())
            .map(|r| {
                let y = match self.row_art[r] {
                    Some(c) => S::one() - self.obj[c].clone(),
                    None => -self.obj[self.num_vars + (r - self.m_eq)].clone(),
                };
                if self.flipped[r] {
                    -y
                } else {
                    y
                }
            })
            .collect()
    }

    /// Pivots zero-level artificials out of the basis; rows where that is
    /// impossible are redundant and dropped.
    fn drive_out_artificials(&mut self) {
        let mut r = 0;
        while r < self.a.len() {
            if self.basis[r] >= self.art {
                if let Some(c) = (0..self.art).find(|&j| self.nonzero(&self.a[r][j]) && !self.basis.contains(&j)) {
                    self.pivot(r, c);
                } else {
                    self.a.remove(r);
                    self.basis.remove(r);
                    continue;
                }
            }
            r += 1;
        }
    }

    /// Feasible tableau without artificials, or `None` if infeasible or out
    /// of pivots.
    fn feasible(sys: &LinearSystem<S>, pivot_cap: usize) -> Option<Self> {
        let mut t = Tableau::build(sys, S::zero());
        if !t.phase_one(pivot_cap) || !t.objective().is_zero() {
            return None;
        }
        t.drive_out_artificials();
        Some(t)
    }
}

/// Decides feasibility with at most `pivot_cap` pivots, in exact arithmetic.
pub fn solve<S: Scalar>(sys: &LinearSystem<S>, pivot_cap: usize) -> LpOutcome<S> {
    let outcome = phase_one_outcome(sys, pivot_cap, S::zero());
    match &outcome {
        LpOutcome::Feasible(x) => debug_assert!(satisfies(sys, x)),
        LpOutcome::Infeasible(y) => {
            assert!(is_farkas_certificate(sys, y), "phase one produced an invalid infeasibility certificate")
        }
        LpOutcome::PivotLimit => {}
    }
    outcome
}

/// Same as [`solve`] for inexact scalars: entries within `eps` of zero are
/// treated as zero and the answer is only a hint that callers must verify.
pub fn solve_approx<S: Scalar>(sys: &LinearSystem<S>, pivot_cap: usize, eps: S) -> LpOutcome<S> {
    phase_one_outcome(sys, pivot_cap, eps)
}

fn phase_one_outcome<S: Scalar>(sys: &LinearSystem<S>, pivot_cap: usize, eps: S) -> LpOutcome<S> {
    let mut t = Tableau::build(sys, eps);
    if !t.phase_one(pivot_cap) {
        return LpOutcome::PivotLimit;
    }
    if !t.pos(&t.objective()) {
        return LpOutcome::Feasible(t.point());
    }
    LpOutcome::Infeasible(t.farkas())
}

/// A basic solution minimizing `Σ cost[j] x_j`, or `None` when the system
/// is infeasible, unbounded in that direction, or out of pivots.
pub fn minimize<S: Scalar>(sys: &LinearSystem<S>, cost: &[S], pivot_cap: usize) -> Option<Vec<S>> {
    let mut t = Tableau::feasible(sys, pivot_cap)?;
    let n = sys.num_vars;
    t.set_objective(&|j: usize| if j < n { cost[j].clone() } else { S::zero() });
    let art = t.art;
    if t.minimize(art, pivot_cap) != Some(true) {
        return None;
    }
    let x = t.point();
    debug_assert!(satisfies(sys, &x));
    Some(x)
}

fn float_optimum(approx: &LinearSystem<f64>, cost: &[f64], pivot_cap: usize) -> Option<Tableau<f64>> {
    let mut t = Tableau::build(approx, 1e-9);
    if !t.phase_one(pivot_cap) || t.pos(&t.objective()) {
        return None;
    }
    t.drive_out_artificials();
    let n = approx.num_vars;
    t.set_objective(&|j: usize| if j < n { cost[j] } else { 0.0 });
    let art = t.art;
    (t.minimize(art, pivot_cap) == Some(true)).then_some(t)
}

/// Floating-point minimizer of `cost`; only a hint, like [`solve_approx`].
pub fn minimize_approx(approx: &LinearSystem<f64>, cost: &[f64], pivot_cap: usize) -> Option<Vec<f64>> {
    float_optimum(approx, cost, pivot_cap).map(|t| t.point())
}

/// A basic feasible solution found by optimizing `cost` in floating point
/// and then rebuilding the final basis exactly. The float optimum only
/// steers the choice: the returned point is exact, satisfies the system, and
/// is a vertex, but it need not be optimal. Falls back to [`minimize`] when
/// the rebuilt basis is not feasible.
pub fn vertex_towards<S: Scalar>(
    sys: &LinearSystem<S>,
    approx: &LinearSystem<f64>,
    cost: &[f64],
    pivot_cap: usize,
) -> Option<Vec<S>> {
    let exact_cost = || cost.iter().map(|&c| S::from_f64(c).unwrap_or_else(S::zero)).collect::<Vec<S>>();
    let Some(t) = float_optimum(approx, cost, pivot_cap) else { return minimize(sys, &exact_cost(), pivot_cap) };
    let art = t.art;
    let target: Vec<usize> = t.basis.iter().copied().filter(|&b| b < art).collect();
    let mut e = Tableau::build(sys, S::zero());
    let mut in_target = vec![false; e.cols];
    for &c in &target {
        in_target[c] = true;
    }
    for &c in &target {
        if e.basis.contains(&c) {
            continue;
        }
        let Some(r) = (0..e.a.len()).find(|&r| !in_target[e.basis[r]] && !e.a[r][c].is_zero()) else {
            return minimize(sys, &exact_cost(), pivot_cap);
        };
        e.pivot(r, c);
    }
    let feasible = e.a.iter().zip(&e.basis).all(|(row, &b)| {
        let rhs = &row[e.cols];
        !rhs.lt_zero() && (b < e.art || rhs.is_zero())
    });
    let x = e.point();
    if feasible && satisfies(sys, &x) {
        Some(x)
    } else {
        minimize(sys, &exact_cost(), pivot_cap)
    }
}

/// Every row holds at `x` and `x >= 0`.
pub fn satisfies<S: Scalar>(sys: &LinearSystem<S>, x: &[S]) -> bool {
    if x.len() != sys.num_vars || x.iter().any(|v| v.lt_zero()) {
        return false;
    }
    let lhs = |row: &Row<S>| row.terms.iter().fold(S::zero(), |acc, (j, c)| acc + c.clone() * x[*j].clone());
    sys.equalities.iter().all(|r| lhs(r) == r.rhs) && sys.inequalities.iter().all(|r| lhs(r) <= r.rhs)
}

/// Checks `y_ineq <= 0`, `yᵀA <= 0` for every variable column and `yᵀb > 0`,
/// which together rule out any nonnegative solution.
pub fn is_farkas_certificate<S: Scalar>(sys: &LinearSystem<S>, y: &[S]) -> bool {
    let m_eq = sys.equalities.len();
    if y.len() != m_eq + sys.inequalities.len() || y[m_eq..].iter().any(|v| v.gt_zero()) {
        return false;
    }
    let mut col = vec![S::zero(); sys.num_vars];
    let mut rhs = S::zero();
    for (row, yr) in sys.equalities.iter().chain(&sys.inequalities).zip(y) {
        for (j, c) in &row.terms {
            col[*j] = col[*j].clone() + yr.clone() * c.clone();
        }
        rhs = rhs + yr.clone() * row.rhs.clone();
    }
    col.iter().all(|c| !c.gt_zero()) && rhs.gt_zero()
}

/// Distinct basic feasible solutions, projected to `0..num_vars`, found by
/// walking the graph of feasible bases. The flag is false when `limit` bases
/// were visited before the walk finished.
pub fn basic_solutions<S: Scalar>(sys: &LinearSystem<S>, pivot_cap: usize, limit: usize) -> (Vec<Vec<S>>, bool) {
    let Some(mut t) = Tableau::feasible(sys, pivot_cap) else { return (Vec::new(), true) };
    let key = |b: &[usize]| {
        let mut k = b.to_vec();
        k.sort_unstable();
        k
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::from([key(&t.basis)]);
    let mut points: Vec<Vec<S>> = Vec::new();
    let mut point_keys: BTreeSet<String> = BTreeSet::new();
    let (cols, art) = (t.cols, t.art);
    let mut stack = vec![(t.a.clone(), t.basis.clone())];
    while let Some((a, basis)) = stack.pop() {
        t.a = a.clone();
        t.basis = basis.clone();
        let x = t.point();
        if point_keys.insert(x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")) {
            points.push(x);
        }
        for c in (0..art).filter(|c| !basis.contains(c)) {
            let ratios: Vec<Option<S>> =
                a.iter().map(|row| row[c].gt_zero().then(|| row[cols].clone() / row[c].clone())).collect();
            let Some(best) = ratios.iter().flatten().cloned().reduce(|x, y| if y < x { y } else { x }) else {
                continue;
            };
            for (r, ratio) in ratios.iter().enumerate() {
                if ratio.as_ref() != Some(&best) {
                    continue;
                }
                t.a = a.clone();
                t.basis = basis.clone();
                t.pivot(r, c);
                if seen.insert(key(&t.basis)) {
                    if seen.len() > limit {
                        return (points, false);
                    }
                    stack.push((t.a.clone(), t.basis.clone()));
                }
            }
        }
    }
    (points, true)
}
