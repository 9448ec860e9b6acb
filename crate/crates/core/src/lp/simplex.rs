//! Bounded-variable revised simplex.
//!
//! Every row `a x (rel) b` gets a slack `s` with `a x + s = b`; the slack's
//! bounds encode the relation. The basis inverse is kept as a dense,
//! column-major matrix updated by elementary row operations and rebuilt every
//! `refactor_interval` pivots. Internally the solver minimizes `-c x`.

use super::{Basis, LinearProgram, LpSolution, LpStatus, Relation, VarStatus, FEASIBILITY_TOL, OPTIMALITY_TOL};

const NONBASIC: usize = usize::MAX;
const DEGENERATE_STEP: f64 = 1e-12;
/// Objective change below which a pivot counts as stalling.
const STALL_GAIN: f64 = 1e-9;
const SINGULAR_PIVOT: f64 = 1e-11;

#[derive(Debug, Clone)]
pub struct SimplexOptions {
    pub feasibility_tol: f64,
    pub optimality_tol: f64,
    /// Column entries below this magnitude are never pivoted on.
    pub pivot_tol: f64,
    pub refactor_interval: usize,
    /// Consecutive degenerate pivots before switching to Bland's rule.
    pub degenerate_switch: usize,
    /// Pivot cap; `None` means `50 * (num_vars + num_rows)`.
    pub iteration_limit: Option<usize>,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            feasibility_tol: FEASIBILITY_TOL,
            optimality_tol: OPTIMALITY_TOL,
            pivot_tol: 1e-9,
            refactor_interval: 100,
            degenerate_switch: 1000,
            iteration_limit: None,
        }
    }
}

enum Step {
    Leave { pos: usize, to_upper: bool, t: f64 },
    Flip { t: f64 },
    Unbounded,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Loop {
    PhaseOne,
    PhaseTwo,
    Dual,
}

enum DualOutcome {
    Feasible,
    Infeasible,
    Stalled,
    IterationLimit,
}

struct Singular;

struct Simplex<'a> {
    opts: &'a SimplexOptions,
    m: usize,
    n: usize,
    col_start: Vec<usize>,
    col_row: Vec<usize>,
    col_val: Vec<f64>,
    rhs: Vec<f64>,
    cost: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    head: Vec<usize>,
    pos: Vec<usize>,
    at_upper: Vec<bool>,
    x: Vec<f64>,
    /// `binv[row * m + p]` is entry `(p, row)` of `B^-1`.
    binv: Vec<f64>,
    pivots: usize,
    limit: usize,
    since_refactor: usize,
    /// Pivots since the tracked objective last improved.
    stall: usize,
    best_obj: f64,
    /// Which loop the tracked objective belongs to.
    tracking: Option<Loop>,
    bland: bool,
}

pub(super) fn solve(lp: &LinearProgram, warm: Option<&Basis>, opts: &SimplexOptions) -> LpSolution {
    let mut s = Simplex::new(lp, opts);
    let warm_ok = warm.is_some_and(|b| s.load_basis(b)) && s.refactor().is_ok();
    if !warm_ok {
        s.slack_basis();
        if s.refactor().is_err() {
            unreachable!("slack basis is the identity");
        }
    }
    s.recompute_x();

    let mut status = None;
    let pf = s.primal_feasible();
    let df = warm_ok && !pf && s.make_dual_feasible();
    if df {
        let r = s.dual();
        match r {
            DualOutcome::IterationLimit => status = Some(LpStatus::IterationLimit),
            // Infeasibility is confirmed by primal phase 1 below.
            DualOutcome::Feasible | DualOutcome::Infeasible | DualOutcome::Stalled => {}
        }
    }
    let mut status = match status {
        Some(st) => st,
        None => s.primal(),
    };
    if status == LpStatus::Optimal {
        let x = s.structural_values();
        if lp.max_violation(&x) > opts.feasibility_tol {
            // Drift from the incremental updates: rebuild and polish once.
            if s.refactor().is_err() {
                s.slack_basis();
                let _ = s.refactor();
            }
            s.recompute_x();
            status = s.primal();
        }
    }
    s.finish(lp, status)
}

impl<'a> Simplex<'a> {
    fn new(lp: &LinearProgram, opts: &'a SimplexOptions) -> Self {
        let n = lp.num_vars();
        let m = lp.num_rows();
        let mut counts = vec![0usize; n + 1];
        for row in lp.rows() {
            for &(j, _) in row.coeffs() {
                counts[j + 1] += 1;
            }
        }
        for j in 0..n {
            counts[j + 1] += counts[j];
        }
        let col_start = counts.clone();
        let mut fill = counts;
        let nnz = col_start[n];
        let mut col_row = vec![0; nnz];
        let mut col_val = vec![0.0; nnz];
        for (i, row) in lp.rows().iter().enumerate() {
            for &(j, a) in row.coeffs() {
                col_row[fill[j]] = i;
                col_val[fill[j]] = a;
                fill[j] += 1;
            }
        }
        let total = n + m;
        let mut cost = vec![0.0; total];
        for (j, &c) in lp.objective().iter().enumerate() {
            cost[j] = -c;
        }
        let mut lo = Vec::with_capacity(total);
        let mut hi = Vec::with_capacity(total);
        lo.extend_from_slice(lp.lower_bounds());
        hi.extend_from_slice(lp.upper_bounds());
        for row in lp.rows() {
            let (l, h) = match row.relation() {
                Relation::Le => (0.0, f64::INFINITY),
                Relation::Ge => (f64::NEG_INFINITY, 0.0),
                Relation::Eq => (0.0, 0.0),
            };
            lo.push(l);
            hi.push(h);
        }
        let limit = opts.iteration_limit.unwrap_or(50 * total.max(1));
        Simplex {
            opts,
            m,
            n,
            col_start,
            col_row,
            col_val,
            rhs: lp.rows().iter().map(|r| r.rhs()).collect(),
            cost,
            lo,
            hi,
            head: Vec::new(),
            pos: vec![NONBASIC; total],
            at_upper: vec![false; total],
            x: vec![0.0; total],
            binv: vec![0.0; m * m],
            pivots: 0,
            limit,
            since_refactor: 0,
            stall: 0,
            best_obj: f64::INFINITY,
            tracking: None,
            bland: false,
        }
    }

    fn total(&self) -> usize {
        self.n + self.m
    }

    fn slack_basis(&mut self) {
        let total = self.total();
        self.pos = vec![NONBASIC; total];
        self.head = (self.n..total).collect();
        for (p, &j) in self.head.iter().enumerate() {
            self.pos[j] = p;
        }
        for j in 0..self.n {
            self.at_upper[j] = self.lo[j] == f64::NEG_INFINITY;
        }
    }

    /// Installs a warm basis; rows added since it was taken get basic slacks.
    fn load_basis(&mut self, basis: &Basis) -> bool {
        if basis.vars.len() != self.n || basis.rows.len() > self.m {
            return false;
        }
        let mut head = Vec::with_capacity(self.m);
        let statuses = basis
            .vars
            .iter()
            .chain(basis.rows.iter())
            .copied()
            .chain(std::iter::repeat_n(VarStatus::Basic, self.m - basis.rows.len()));
        for (j, st) in statuses.enumerate() {
            match st {
                VarStatus::Basic => head.push(j),
                VarStatus::AtLower => self.at_upper[j] = self.lo[j] == f64::NEG_INFINITY,
                VarStatus::AtUpper => self.at_upper[j] = self.hi[j] != f64::INFINITY,
            }
        }
        if head.len() != self.m {
            return false;
        }
        self.pos = vec![NONBASIC; self.total()];
        for (p, &j) in head.iter().enumerate() {
            self.pos[j] = p;
        }
        self.head = head;
        true
    }

    fn column(&self, j: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (range, slack) = if j < self.n {
            (self.col_start[j]..self.col_start[j + 1], None)
        } else {
            (0..0, Some(j - self.n))
        };
        range
            .map(move |k| (self.col_row[k], self.col_val[k]))
            .chain(slack.map(|i| (i, 1.0)))
    }

    fn nonbasic_value(&self, j: usize) -> f64 {
        if self.at_upper[j] {
            self.hi[j]
        } else {
            self.lo[j]
        }
    }

    /// Rebuilds `B^-1`. Basic slacks cover their own rows, so only the
    /// square block of structural columns on the remaining rows is inverted.
    fn refactor(&mut self) -> Result<(), Singular> {
        let m = self.m;
        self.since_refactor = 0;
        let mut covered = vec![NONBASIC; m];
        let mut structurals = Vec::new();
        for (p, &j) in self.head.iter().enumerate() {
            if j >= self.n {
                covered[j - self.n] = p;
            } else {
                structurals.push((p, j));
            }
        }
        let free_rows: Vec<usize> = (0..m).filter(|&i| covered[i] == NONBASIC).collect();
        let k = structurals.len();
        if free_rows.len() != k {
            return Err(Singular);
        }
        let mut row_slot = vec![NONBASIC; m];
        for (r, &i) in free_rows.iter().enumerate() {
            row_slot[i] = r;
        }
        // block[r * k + q] = A[free_rows[r], structurals[q]]
        let mut block = vec![0.0; k * k];
        for (q, &(_, j)) in structurals.iter().enumerate() {
            for (i, a) in self.column(j) {
                if row_slot[i] != NONBASIC {
                    block[row_slot[i] * k + q] = a;
                }
            }
        }
        let inv = invert_dense(block, k)?;
        self.binv.clear();
        self.binv.resize(m * m, 0.0);
        for i in 0..m {
            let col = &mut self.binv[i * m..(i + 1) * m];
            if covered[i] != NONBASIC {
                col[covered[i]] = 1.0;
            }
        }
        for (r, &i) in free_rows.iter().enumerate() {
            for (q, &(p, j)) in structurals.iter().enumerate() {
                let z = inv[q * k + r];
                if z == 0.0 {
                    continue;
                }
                self.binv[i * m + p] = z;
                for kk in self.col_start[j]..self.col_start[j + 1] {
                    let row = self.col_row[kk];
                    if covered[row] != NONBASIC {
                        self.binv[i * m + covered[row]] -= self.col_val[kk] * z;
                    }
                }
            }
        }
        Ok(())
    }

    fn recompute_x(&mut self) {
        let m = self.m;
        let mut r = self.rhs.clone();
        for j in 0..self.total() {
            if self.pos[j] == NONBASIC {
                let v = self.nonbasic_value(j);
                self.x[j] = v;
                if v != 0.0 {
                    for (i, a) in self.column(j) {
                        r[i] -= a * v;
                    }
                }
            }
        }
        let mut xb = vec![0.0; m];
        for (i, &ri) in r.iter().enumerate() {
            if ri != 0.0 {
                let col = &self.binv[i * m..(i + 1) * m];
                for (p, v) in xb.iter_mut().enumerate() {
                    *v += col[p] * ri;
                }
            }
        }
        for (p, &j) in self.head.iter().enumerate() {
            self.x[j] = xb[p];
        }
    }

    fn ftran(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let mut alpha = vec![0.0; m];
        for (i, a) in self.column(j) {
            let col = &self.binv[i * m..(i + 1) * m];
            for (p, v) in alpha.iter_mut().enumerate() {
                *v += a * col[p];
            }
        }
        alpha
    }

    /// `π = c_B^T B^-1`.
    fn prices(&self, basic_costs: &[f64]) -> Vec<f64> {
        let m = self.m;
        (0..m)
            .map(|i| {
                let col = &self.binv[i * m..(i + 1) * m];
                col.iter().zip(basic_costs).map(|(b, c)| b * c).sum()
            })
            .collect()
    }

    fn dot_column(&self, j: usize, v: &[f64]) -> f64 {
        self.column(j).map(|(i, a)| a * v[i]).sum()
    }

    fn infeasibility(&self, j: usize) -> f64 {
        let v = self.x[j];
        (self.lo[j] - v).max(v - self.hi[j]).max(0.0)
    }

    fn primal_feasible(&self) -> bool {
        self.head.iter().all(|&j| self.infeasibility(j) <= self.opts.feasibility_tol)
    }

    fn pivot(&mut self, r: usize, q: usize, alpha: &[f64]) {
        let m = self.m;
        let piv = alpha[r];
        for i in 0..m {
            let col = &mut self.binv[i * m..(i + 1) * m];
            let v = col[r] / piv;
            if v != 0.0 {
                for (p, c) in col.iter_mut().enumerate() {
                    *c -= alpha[p] * v;
                }
            }
            col[r] = v;
        }
        let leaving = self.head[r];
        self.pos[leaving] = NONBASIC;
        self.head[r] = q;
        self.pos[q] = r;
        self.pivots += 1;
        self.since_refactor += 1;
    }

    fn maybe_refactor(&mut self) {
        if self.since_refactor >= self.opts.refactor_interval {
            if self.refactor().is_err() {
                // Numerically singular: restart from the slack basis.
                self.slack_basis();
                let _ = self.refactor();
            }
            self.recompute_x();
        }
    }

    fn primal(&mut self) -> LpStatus {
        let tol = self.opts.feasibility_tol;
        loop {
            if self.pivots >= self.limit {
                return LpStatus::IterationLimit;
            }
            self.maybe_refactor();
            let phase_one = !self.primal_feasible();
            let basic_costs: Vec<f64> = self
                .head
                .iter()
                .map(|&j| {
                    if phase_one {
                        if self.x[j] < self.lo[j] - tol {
                            -1.0
                        } else if self.x[j] > self.hi[j] + tol {
                            1.0
                        } else {
                            0.0
                        }
                    } else {
                        self.cost[j]
                    }
                })
                .collect();
            let pi = self.prices(&basic_costs);

            let mut entering: Option<(usize, f64)> = None;
            for j in 0..self.total() {
                if self.pos[j] != NONBASIC || self.lo[j] == self.hi[j] {
                    continue;
                }
                let c = if phase_one { 0.0 } else { self.cost[j] };
                let d = c - self.dot_column(j, &pi);
                let improving = if self.at_upper[j] {
                    d > self.opts.optimality_tol
                } else {
                    d < -self.opts.optimality_tol
                };
                if !improving {
                    continue;
                }
                if self.bland {
                    entering = Some((j, d));
                    break;
                }
                if entering.is_none_or(|(_, best)| d.abs() > best.abs()) {
                    entering = Some((j, d));
                }
            }
            let Some((q, d)) = entering else {
                return if phase_one { LpStatus::Infeasible } else { LpStatus::Optimal };
            };
            let dir = if d < 0.0 { 1.0 } else { -1.0 };
            let alpha = self.ftran(q);
            match self.primal_ratio(q, dir, &alpha, phase_one) {
                Step::Unbounded => {
                    if phase_one {
                        // Cannot happen in exact arithmetic; rebuild and retry.
                        self.since_refactor = self.opts.refactor_interval;
                        self.pivots += 1;
                        continue;
                    }
                    return LpStatus::Unbounded;
                }
                Step::Flip { t } => {
                    self.apply_step(q, dir, t, &alpha);
                    self.at_upper[q] = !self.at_upper[q];
                    self.x[q] = self.nonbasic_value(q);
                    self.pivots += 1;
                    self.note_progress(phase_one);
                }
                Step::Leave { pos, to_upper, t } => {
                    self.apply_step(q, dir, t, &alpha);
                    let leaving = self.head[pos];
                    self.at_upper[leaving] = to_upper;
                    self.x[leaving] = if to_upper { self.hi[leaving] } else { self.lo[leaving] };
                    self.pivot(pos, q, &alpha);
                    self.note_progress(phase_one);
                }
            }
        }
    }

    /// Tracks the objective being minimized (total infeasibility in phase 1).
    /// After `degenerate_switch` pivots without a relative improvement of
    /// `STALL_GAIN`, Bland's rule takes over until the objective improves.
    fn note_progress(&mut self, phase_one: bool) {
        if phase_one {
            let inf = self.head.iter().map(|&j| self.infeasibility(j)).sum();
            self.track(Loop::PhaseOne, inf);
        } else {
            self.track(Loop::PhaseTwo, self.current_cost());
        }
    }

    /// `obj` is expected to decrease over the pivots of loop `which`.
    fn track(&mut self, which: Loop, obj: f64) {
        if self.tracking != Some(which) {
            self.tracking = Some(which);
            self.best_obj = f64::INFINITY;
            self.stall = 0;
            self.bland = false;
        }
        if obj < self.best_obj - STALL_GAIN * (1.0 + self.best_obj.abs().min(1e9)) {
            self.best_obj = obj;
            self.stall = 0;
            self.bland = false;
        } else {
            self.stall += 1;
            if self.stall >= self.opts.degenerate_switch {
                self.bland = true;
            }
        }
    }

    fn current_cost(&self) -> f64 {
        (0..self.n).map(|j| self.cost[j] * self.x[j]).sum()
    }

    fn apply_step(&mut self, q: usize, dir: f64, t: f64, alpha: &[f64]) {
        if t == 0.0 {
            return;
        }
        for (p, &a) in alpha.iter().enumerate() {
            if a != 0.0 {
                let j = self.head[p];
                self.x[j] -= dir * t * a;
            }
        }
        self.x[q] += dir * t;
    }

    /// Bound the basic variable at position `p` runs into when it moves by
    /// `delta` per unit step; `None` when it never blocks.
    fn blocking_bound(&self, p: usize, delta: f64, phase_one: bool) -> Option<(f64, bool)> {
        let j = self.head[p];
        let tol = self.opts.feasibility_tol;
        let v = self.x[j];
        if delta > 0.0 {
            if phase_one && v < self.lo[j] - tol {
                Some((self.lo[j], false))
            } else if phase_one && v > self.hi[j] + tol {
                None
            } else if self.hi[j].is_finite() {
                Some((self.hi[j], true))
            } else {
                None
            }
        } else if phase_one && v > self.hi[j] + tol {
            Some((self.hi[j], true))
        } else if phase_one && v < self.lo[j] - tol {
            None
        } else if self.lo[j].is_finite() {
            Some((self.lo[j], false))
        } else {
            None
        }
    }

    fn primal_ratio(&self, q: usize, dir: f64, alpha: &[f64], phase_one: bool) -> Step {
        let tol = self.opts.feasibility_tol;
        let range = self.hi[q] - self.lo[q];
        let candidates: Vec<(usize, f64, f64, bool)> = alpha
            .iter()
            .enumerate()
            .filter(|(_, a)| a.abs() > self.opts.pivot_tol)
            .filter_map(|(p, &a)| {
                let delta = -dir * a;
                let (bound, to_upper) = self.blocking_bound(p, delta, phase_one)?;
                let v = self.x[self.head[p]];
                let exact = ((bound - v) / delta).max(0.0);
                let relaxed = ((bound + tol * delta.signum() - v) / delta).max(0.0);
                Some((p, exact, relaxed, to_upper))
            })
            .collect();

        if self.bland {
            let mut best: Option<(usize, f64, bool)> = None;
            for &(p, exact, _, to_upper) in &candidates {
                let better = match best {
                    None => true,
                    Some((bp, bt, _)) => {
                        exact < bt - DEGENERATE_STEP || (exact <= bt + DEGENERATE_STEP && self.head[p] < self.head[bp])
                    }
                };
                if better {
                    best = Some((p, exact, to_upper));
                }
            }
            return match best {
                Some((_, t, _)) if range <= t => Step::Flip { t: range },
                Some((pos, t, to_upper)) => Step::Leave { pos, to_upper, t },
                None if range.is_finite() => Step::Flip { t: range },
                None => Step::Unbounded,
            };
        }

        let t_max = candidates.iter().map(|c| c.2).fold(f64::INFINITY, f64::min);
        if range.is_finite() && range <= t_max {
            return Step::Flip { t: range };
        }
        let mut best: Option<(usize, f64, bool)> = None;
        for &(p, exact, _, to_upper) in &candidates {
            if exact <= t_max && best.is_none_or(|(bp, _, _)| alpha[p].abs() > alpha[bp].abs()) {
                best = Some((p, exact, to_upper));
            }
        }
        match best {
            Some((pos, t, to_upper)) => Step::Leave { pos, to_upper, t },
            None => Step::Unbounded,
        }
    }

    fn reduced_costs(&self) -> Vec<f64> {
        let basic_costs: Vec<f64> = self.head.iter().map(|&j| self.cost[j]).collect();
        let pi = self.prices(&basic_costs);
        (0..self.total())
            .map(|j| {
                if self.pos[j] == NONBASIC {
                    self.cost[j] - self.dot_column(j, &pi)
                } else {
                    0.0
                }
            })
            .collect()
    }

    /// Flips boxed nonbasics to the bound their reduced cost prefers.
    /// Returns false if some one-sided variable has the wrong sign.
    fn make_dual_feasible(&mut self) -> bool {
        let d = self.reduced_costs();
        let tol = self.opts.optimality_tol;
        let mut flipped = false;
        for j in 0..self.total() {
            if self.pos[j] != NONBASIC || self.lo[j] == self.hi[j] {
                continue;
            }
            if !self.at_upper[j] && d[j] < -tol {
                if !self.hi[j].is_finite() {
                    return false;
                }
                self.at_upper[j] = true;
                flipped = true;
            } else if self.at_upper[j] && d[j] > tol {
                if !self.lo[j].is_finite() {
                    return false;
                }
                self.at_upper[j] = false;
                flipped = true;
            }
        }
        if flipped {
            self.recompute_x();
        }
        true
    }

    fn dual(&mut self) -> DualOutcome {
        let tol = self.opts.feasibility_tol;
        let m = self.m;
        loop {
            if self.pivots >= self.limit {
                return DualOutcome::IterationLimit;
            }
            self.maybe_refactor();
            let mut leave: Option<(usize, f64)> = None;
            for (p, &j) in self.head.iter().enumerate() {
                let inf = self.infeasibility(j);
                if inf <= tol {
                    continue;
                }
                let better = match leave {
                    None => true,
                    // Bland: smallest variable index among infeasible rows.
                    Some((bp, _)) if self.bland => j < self.head[bp],
                    Some((_, best)) => inf > best,
                };
                if better {
                    leave = Some((p, inf));
                }
            }
            let Some((r, _)) = leave else {
                return DualOutcome::Feasible;
            };
            let leaving = self.head[r];
            let to_lower = self.x[leaving] < self.lo[leaving];
            let rho: Vec<f64> = (0..m).map(|i| self.binv[i * m + r]).collect();
            let d = self.reduced_costs();

            let mut cands = Vec::new();
            for j in 0..self.total() {
                if self.pos[j] != NONBASIC || self.lo[j] == self.hi[j] {
                    continue;
                }
                let a = self.dot_column(j, &rho);
                if a.abs() <= self.opts.pivot_tol {
                    continue;
                }
                let eligible = if to_lower {
                    (!self.at_upper[j] && a < 0.0) || (self.at_upper[j] && a > 0.0)
                } else {
                    (!self.at_upper[j] && a > 0.0) || (self.at_upper[j] && a < 0.0)
                };
                if eligible {
                    let dj = if self.at_upper[j] { (-d[j]).max(0.0) } else { d[j].max(0.0) };
                    cands.push((j, a, dj / a.abs(), (dj + self.opts.optimality_tol) / a.abs()));
                }
            }
            if cands.is_empty() {
                return DualOutcome::Infeasible;
            }
            let mut best: Option<(usize, f64)> = None;
            if self.bland {
                // Exact minimum ratio, ties to the smallest index.
                let t_min = cands.iter().map(|c| c.2).fold(f64::INFINITY, f64::min);
                best = cands.iter().find(|c| c.2 <= t_min + DEGENERATE_STEP).map(|c| (c.0, c.1));
            } else {
                let t_max = cands.iter().map(|c| c.3).fold(f64::INFINITY, f64::min);
                for &(j, a, ratio, _) in &cands {
                    if ratio <= t_max && best.is_none_or(|(_, ba)| a.abs() > ba.abs()) {
                        best = Some((j, a));
                    }
                }
            }
            let (q, a_rq) = best.expect("candidate within the Harris bound");
            let alpha = self.ftran(q);
            if (alpha[r] - a_rq).abs() > 1e-7 * (1.0 + a_rq.abs()) {
                if self.since_refactor == 0 {
                    return DualOutcome::Stalled;
                }
                self.since_refactor = self.opts.refactor_interval;
                continue;
            }
            let target = if to_lower { self.lo[leaving] } else { self.hi[leaving] };
            let theta = (self.x[leaving] - target) / alpha[r];
            for (p, &a) in alpha.iter().enumerate() {
                if a != 0.0 {
                    let j = self.head[p];
                    self.x[j] -= theta * a;
                }
            }
            self.x[q] += theta;
            self.x[leaving] = target;
            self.at_upper[leaving] = !to_lower;
            self.pivot(r, q, &alpha);
            // The dual objective, i.e. the current cost, must rise.
            let cost = self.current_cost();
            self.track(Loop::Dual, -cost);
        }
    }

    fn structural_values(&self) -> Vec<f64> {
        (0..self.n)
            .map(|j| {
                let v = self.x[j];
                // Snap tiny bound violations left by the tolerances.
                if v < self.lo[j] && v >= self.lo[j] - self.opts.feasibility_tol {
                    self.lo[j]
                } else if v > self.hi[j] && v <= self.hi[j] + self.opts.feasibility_tol {
                    self.hi[j]
                } else {
                    v
                }
            })
            .collect()
    }

    fn finish(self, lp: &LinearProgram, status: LpStatus) -> LpSolution {
        let primal = self.structural_values();
        let objective_value = lp.objective_value(&primal);
        let status_of = |j: usize| {
            if self.pos[j] != NONBASIC {
                VarStatus::Basic
            } else if self.at_upper[j] {
                VarStatus::AtUpper
            } else {
                VarStatus::AtLower
            }
        };
        let basis = Basis {
            vars: (0..self.n).map(status_of).collect(),
            rows: (self.n..self.total()).map(status_of).collect(),
        };
        LpSolution {
            status,
            primal,
            objective_value,
            basis: Some(basis),
            pivots: self.pivots,
        }
    }
}

/// Gauss–Jordan inversion with partial pivoting; `a` is row-major `k x k`.
/// The result is row-major as well.
fn invert_dense(mut a: Vec<f64>, k: usize) -> Result<Vec<f64>, Singular> {
    let mut inv = vec![0.0; k * k];
    for i in 0..k {
        inv[i * k + i] = 1.0;
    }
    for c in 0..k {
        let (piv_row, piv_val) = (c..k)
            .map(|r| (r, a[r * k + c].abs()))
            .fold((c, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv_val < SINGULAR_PIVOT {
            return Err(Singular);
        }
        if piv_row != c {
            for col in 0..k {
                a.swap(c * k + col, piv_row * k + col);
                inv.swap(c * k + col, piv_row * k + col);
            }
        }
        let p = a[c * k + c];
        for col in 0..k {
            a[c * k + col] /= p;
            inv[c * k + col] /= p;
        }
        for r in 0..k {
            if r == c {
                continue;
            }
            let f = a[r * k + c];
            if f == 0.0 {
                continue;
            }
            for col in 0..k {
                a[r * k + col] -= f * a[c * k + col];
                inv[r * k + col] -= f * inv[c * k + col];
            }
        }
    }
    Ok(inv)
}
