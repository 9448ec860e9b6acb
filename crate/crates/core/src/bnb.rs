//! Branch-and-cut driver.
//!
//! Best-first search over LP bounds. Cut rows are separated lazily: always at
//! integral LP points, and at fractional points when the configuration asks
//! for it. The walk model is solved for increasing horizons instead.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::Range;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{AugmentedGraph, Graph, GraphError};
use crate::lp::{Basis, LinearProgram, LpSolution, LpStatus, Row, SimplexOptions};
use crate::models::{build_model, build_walk, cut_row, Formulation, ModelConfig, ModelError, ModelInstance};
use crate::separation::{separate_fractional, separate_integral, CutConstraint, CutPool, SeparationError};

/// Default wall-clock limit per instance.
pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(1200);
pub const INTEGRALITY_TOL: f64 = 1e-6;
/// Separation rounds per node when fractional separation is on.
pub const NODE_SEPARATION_ROUNDS: usize = 10;
/// Cap on cutting-plane rounds for a root relaxation.
pub const ROOT_ROUND_CAP: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Separation(#[from] SeparationError),
    #[error("LP solve ended with status {0:?}")]
    Lp(LpStatus),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { time_limit: Some(DEFAULT_TIME_LIMIT), node_limit: None }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits { time_limit: None, node_limit: None }
    }

    pub fn with_time_limit(secs: f64) -> Self {
        Limits { time_limit: Some(Duration::from_secs_f64(secs)), node_limit: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Optimal,
    Timeout,
    Infeasible,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Timeout => "timeout",
            SolveStatus::Infeasible => "infeasible",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveStats {
    pub root_lp_value: f64,
    pub bnb_nodes: usize,
    pub cuts_added: usize,
    pub separation_calls: usize,
    pub wall_time_seconds: f64,
    pub lp_pivots: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// Edges on the best path found.
    pub opt_value: usize,
    /// Proven upper bound on the optimum.
    pub dual_bound: usize,
    pub path: Vec<usize>,
    /// Final horizon of a walk-model run.
    pub walk_horizon: Option<usize>,
    pub stats: SolveStats,
}

/// Root bound of a cut, flow or walk relaxation.
#[derive(Debug, Clone, PartialEq)]
pub struct RootRelaxation {
    pub value: f64,
    pub rounds: usize,
    pub cuts: usize,
    /// False when the round cap stopped separation; `value` is then only an
    /// upper bound on the converged value.
    pub converged: bool,
}

/// Solves the longest induced path problem on a connected graph.
pub fn solve(g: &Graph, cfg: &ModelConfig, limits: &Limits) -> Result<SolveResult, SolveError> {
    cfg.validate()?;
    let start = Instant::now();
    if let Some(mut trivial) = trivial_instance(g)? {
        trivial.stats.wall_time_seconds = start.elapsed().as_secs_f64();
        return Ok(trivial);
    }
    if cfg.formulation == Formulation::Walk {
        return match cfg.walk_horizon {
            Some(t) => {
                let inst = build_walk(g, t)?;
                let mut r = Search::new(Kind::Walk { g }, inst, *cfg, limits, start).run()?;
                r.walk_horizon = Some(t);
                Ok(r)
            }
            None => walk_solve_loop(g, limits),
        };
    }
    let ag = AugmentedGraph::new(g.clone())?;
    let inst = build_model(&ag, cfg)?;
    Search::new(Kind::Edge { ag: &ag }, inst, *cfg, limits, start).run()
}

/// `n <= 1` has optimum 0 and a connected `n = 2` graph optimum 1. Rejects
/// disconnected graphs.
fn trivial_instance(g: &Graph) -> Result<Option<SolveResult>, SolveError> {
    let n = g.node_count();
    let result = |value: usize, path: Vec<usize>| SolveResult {
        status: SolveStatus::Optimal,
        opt_value: value,
        dual_bound: value,
        path,
        walk_horizon: None,
        stats: SolveStats::default(),
    };
    match n {
        0 => Ok(Some(result(0, Vec::new()))),
        1 => Ok(Some(result(0, vec![0]))),
        _ => {
            g.check_connected()?;
            Ok((n == 2).then(|| result(1, vec![0, 1])))
        }
    }
}

/// Solves the walk model for `T = diameter, diameter + 1, ...` until the
/// optimum drops below `T` or `T + 1` reaches `|V|`.
pub fn walk_solve_loop(g: &Graph, limits: &Limits) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    if let Some(mut trivial) = trivial_instance(g)? {
        trivial.stats.wall_time_seconds = start.elapsed().as_secs_f64();
        return Ok(trivial);
    }
    let n = g.node_count();
    let mut horizon = g.diameter()?;
    let mut total = SolveStats::default();
    loop {
        let inst = build_walk(g, horizon)?;
        let mut r = Search::new(Kind::Walk { g }, inst, ModelConfig::walk(), limits, start).run()?;
        total.root_lp_value = r.stats.root_lp_value;
        total.bnb_nodes += r.stats.bnb_nodes;
        total.cuts_added += r.stats.cuts_added;
        total.separation_calls += r.stats.separation_calls;
        total.lp_pivots += r.stats.lp_pivots;
        total.wall_time_seconds = start.elapsed().as_secs_f64();
        r.walk_horizon = Some(horizon);
        if r.status == SolveStatus::Timeout {
            // Larger horizons were not refuted, so only the trivial bound holds.
            r.dual_bound = n - 1;
            r.stats = total;
            return Ok(r);
        }
        if r.opt_value == horizon && horizon + 2 <= n {
            horizon += 1;
            continue;
        }
        r.stats = total;
        return Ok(r);
    }
}

/// Root LP bound: for the cut model the cutting-plane loop with exact
/// fractional separation runs until no cut row is violated (or the round cap
/// hits); the flow and walk models need a single solve. The walk model uses
/// the configured horizon or the diameter.
pub fn root_relaxation(g: &Graph, cfg: &ModelConfig) -> Result<RootRelaxation, SolveError> {
    cfg.validate()?;
    g.check_connected()?;
    if cfg.formulation == Formulation::Walk {
        let t = match cfg.walk_horizon {
            Some(t) => t,
            None => g.diameter()?,
        };
        let inst = build_walk(g, t)?;
        let sol = solve_lp(&inst.lp, None)?;
        return Ok(RootRelaxation { value: sol.objective_value, rounds: 1, cuts: 0, converged: true });
    }
    let ag = AugmentedGraph::new(g.clone())?;
    let mut inst = build_model(&ag, cfg)?;
    let mut pool = CutPool::new();
    let mut basis = None;
    let mut cuts = 0;
    for round in 1..=ROOT_ROUND_CAP {
        let sol = solve_lp(&inst.lp, basis.as_ref())?;
        if cfg.formulation == Formulation::Flow {
            return Ok(RootRelaxation { value: sol.objective_value, rounds: 1, cuts: 0, converged: true });
        }
        let x = &sol.primal[inst.vars.x.clone()];
        let rows = new_cut_rows(&ag, &inst, &mut pool, separate_fractional(&ag, x)?);
        if rows.is_empty() {
            return Ok(RootRelaxation { value: sol.objective_value, rounds: round, cuts, converged: true });
        }
        cuts += rows.len();
        inst.lp.add_rows(rows).map_err(ModelError::from)?;
        basis = sol.basis;
    }
    let sol = solve_lp(&inst.lp, basis.as_ref())?;
    Ok(RootRelaxation { value: sol.objective_value, rounds: ROOT_ROUND_CAP, cuts, converged: false })
}

fn solve_lp(lp: &LinearProgram, warm: Option<&Basis>) -> Result<LpSolution, SolveError> {
    let sol = lp.solve(warm);
    match sol.status {
        LpStatus::Optimal | LpStatus::Infeasible => Ok(sol),
        _ if warm.is_some() => {
            // A stale basis can steer the simplex into trouble; retry cold.
            let cold = lp.solve_with(None, &SimplexOptions::default());
            match cold.status {
                LpStatus::Optimal | LpStatus::Infeasible => Ok(LpSolution { pivots: cold.pivots + sol.pivots, ..cold }),
                other => Err(SolveError::Lp(other)),
            }
        }
        other => Err(SolveError::Lp(other)),
    }
}

fn new_cut_rows(ag: &AugmentedGraph, inst: &ModelInstance, pool: &mut CutPool, cuts: Vec<CutConstraint>) -> Vec<Row> {
    cuts.into_iter()
        .filter(|c| pool.insert(c))
        .map(|c| cut_row(ag, &inst.vars, &c.set, c.witness))
        .collect()
}

fn is_integral(v: f64) -> bool {
    (v - v.round()).abs() <= INTEGRALITY_TOL
}

/// LP objectives are edge counts, so bounds round down.
fn floor_bound(obj: f64) -> i64 {
    (obj + INTEGRALITY_TOL).floor() as i64
}

/// Most fractional variable in `vars` (closest to 0.5), ties to the lowest
/// index; `None` if all are integral.
pub fn select_branching_var(values: &[f64], vars: Range<usize>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for j in vars {
        let v = values[j];
        if is_integral(v) {
            continue;
        }
        let dist = (v - 0.5).abs();
        if best.is_none_or(|(_, d)| dist < d - 1e-12) {
            best = Some((j, dist));
        }
    }
    best.map(|(j, _)| j)
}

/// Reads the path off an integral point whose selected edges form one cycle
/// through `s`. A point without selected edges of `E` yields a single node.
pub fn extract_path(ag: &AugmentedGraph, x: &[f64]) -> Result<Vec<usize>, SolveError> {
    let s = ag.s();
    let selected: Vec<bool> = x.iter().map(|&v| v > 0.5).collect();
    let star_nodes: Vec<usize> = (0..s).filter(|&v| selected[ag.star_edge(v)]).collect();
    let internal = |msg: String| Err(SolveError::Internal(msg));
    if star_nodes.len() != 2 {
        return internal(format!("{} star edges selected", star_nodes.len()));
    }
    let base_selected = (0..ag.base_edge_count()).filter(|&e| selected[e]).count();
    if base_selected == 0 {
        return Ok(vec![star_nodes[0]]);
    }
    let mut path = Vec::new();
    let mut prev = s;
    let mut cur = star_nodes[0];
    let mut used = 0;
    while cur != s {
        if path.len() > s {
            return internal("selected edges do not close into a cycle".into());
        }
        path.push(cur);
        let next: Vec<usize> = ag
            .incident_edges(cur)
            .iter()
            .filter(|&&e| selected[e])
            .map(|&e| ag.other_endpoint(e, cur))
            .collect();
        if next.len() != 2 {
            return internal(format!("node {cur} has {} selected edges", next.len()));
        }
        let step = if next[0] == prev { next[1] } else { next[0] };
        used += 1;
        prev = cur;
        cur = step;
    }
    if used != base_selected + 2 - 1 {
        return internal("selected edges form more than one cycle".into());
    }
    Ok(path)
}

/// Walk-model point to node sequence ordered by time.
fn extract_walk(g: &Graph, inst: &ModelInstance, x: &[f64]) -> Vec<usize> {
    let n = g.node_count();
    let t_max = inst.vars.horizon.unwrap_or(0);
    let mut path = Vec::new();
    for t in 0..=t_max {
        if let Some(v) = (0..n).find(|&v| x[inst.vars.w(v, t).expect("walk variables")] > 0.5) {
            path.push(v);
        }
    }
    path
}

enum Kind<'a> {
    Edge { ag: &'a AugmentedGraph },
    Walk { g: &'a Graph },
}

struct Node {
    id: usize,
    depth: usize,
    bound: i64,
    fixings: Vec<(usize, f64)>,
    basis: Option<Basis>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Max-heap order: larger bound, then deeper, then older.
impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .cmp(&other.bound)
            .then(self.depth.cmp(&other.depth))
            .then(other.id.cmp(&self.id))
    }
}

enum Outcome {
    Pruned,
    Integral,
    Branch { var: usize, bound: i64, basis: Option<Basis> },
}

struct Search<'a> {
    kind: Kind<'a>,
    inst: ModelInstance,
    cfg: ModelConfig,
    limits: Limits,
    start: Instant,
    pool: CutPool,
    stats: SolveStats,
    incumbent: Option<(usize, Vec<usize>)>,
    branch_vars: Range<usize>,
}

impl<'a> Search<'a> {
    fn new(kind: Kind<'a>, inst: ModelInstance, cfg: ModelConfig, limits: &Limits, start: Instant) -> Self {
        let branch_vars = inst.branching_vars();
        // Any edge is an induced path; it keeps timeouts from reporting 0.
        let incumbent = match &kind {
            Kind::Edge { ag } => ag.base().edges().first().map(|&(u, v)| (1, vec![u, v])),
            Kind::Walk { .. } => None,
        };
        Search {
            kind,
            inst,
            cfg,
            limits: *limits,
            start,
            pool: CutPool::new(),
            stats: SolveStats::default(),
            incumbent,
            branch_vars,
        }
    }

    fn out_of_time(&self) -> bool {
        self.limits.time_limit.is_some_and(|t| self.start.elapsed() >= t)
    }

    fn incumbent_value(&self) -> Option<i64> {
        self.incumbent.as_ref().map(|(v, _)| *v as i64)
    }

    fn run(mut self) -> Result<SolveResult, SolveError> {
        let mut heap = BinaryHeap::new();
        let mut next_id = 1;
        heap.push(Node { id: 0, depth: 0, bound: i64::MAX, fixings: Vec::new(), basis: None });
        let mut timed_out = false;
        while let Some(node) = heap.pop() {
            if self.incumbent_value().is_some_and(|inc| node.bound <= inc) {
                continue;
            }
            let node_cap = self.limits.node_limit.is_some_and(|cap| self.stats.bnb_nodes >= cap);
            if node_cap || self.out_of_time() {
                heap.push(node);
                timed_out = true;
                break;
            }
            self.stats.bnb_nodes += 1;
            let is_root = node.id == 0;
            match self.process(&node, is_root)? {
                Outcome::Pruned | Outcome::Integral => {}
                Outcome::Branch { var, bound, basis } => {
                    for value in [0.0, 1.0] {
                        let mut fixings = node.fixings.clone();
                        fixings.push((var, value));
                        heap.push(Node { id: next_id, depth: node.depth + 1, bound, fixings, basis: basis.clone() });
                        next_id += 1;
                    }
                }
            }
        }
        self.stats.wall_time_seconds = self.start.elapsed().as_secs_f64();
        let (opt_value, path) = self.incumbent.clone().unwrap_or((0, Vec::new()));
        let open_bound = heap.iter().map(|n| n.bound).max();
        let (status, dual_bound) = if timed_out {
            let bound = open_bound.map_or(opt_value as i64, |b| b.max(opt_value as i64));
            let cap = self.trivial_cap();
            (SolveStatus::Timeout, (bound.max(0) as usize).min(cap).max(opt_value))
        } else if self.incumbent.is_none() {
            (SolveStatus::Infeasible, 0)
        } else {
            (SolveStatus::Optimal, opt_value)
        };
        Ok(SolveResult { status, opt_value, dual_bound, path, walk_horizon: None, stats: self.stats })
    }

    fn trivial_cap(&self) -> usize {
        match &self.kind {
            Kind::Edge { ag } => ag.base().node_count() - 1,
            Kind::Walk { .. } => self.inst.vars.horizon.unwrap_or(0),
        }
    }

    fn apply_fixings(&mut self, fixings: &[(usize, f64)]) {
        for j in self.branch_vars.clone() {
            self.inst.lp.set_bounds(j, 0.0, 1.0).expect("unit bounds");
        }
        for &(j, v) in fixings {
            self.inst.lp.set_bounds(j, v, v).expect("fixing within bounds");
        }
    }

    fn process(&mut self, node: &Node, is_root: bool) -> Result<Outcome, SolveError> {
        self.apply_fixings(&node.fixings);
        let mut basis = node.basis.clone();
        let frac_rounds = match (self.cfg.frac_sep, is_root) {
            (false, _) => 0,
            (true, true) => ROOT_ROUND_CAP,
            (true, false) => NODE_SEPARATION_ROUNDS,
        };
        let mut rounds = 0;
        loop {
            let sol = solve_lp(&self.inst.lp, basis.as_ref())?;
            self.stats.lp_pivots += sol.pivots;
            if sol.status == LpStatus::Infeasible {
                return Ok(Outcome::Pruned);
            }
            let bound = floor_bound(sol.objective_value);
            if is_root {
                self.stats.root_lp_value = sol.objective_value;
            }
            if self.incumbent_value().is_some_and(|inc| bound <= inc) {
                return Ok(Outcome::Pruned);
            }
            basis = sol.basis.clone();
            let x = &sol.primal;
            let branch_var = select_branching_var(x, self.branch_vars.clone())
                .or_else(|| self.fallback_branch_var(x));
            match branch_var {
                None => {
                    // Integral point: separate or certify.
                    if let Some(rows) = self.integral_cuts(x)? {
                        self.add_rows(rows)?;
                        continue;
                    }
                    self.certify(x, sol.objective_value)?;
                    return Ok(Outcome::Integral);
                }
                Some(var) => {
                    if rounds < frac_rounds {
                        rounds += 1;
                        let rows = self.fractional_cuts(x)?;
                        if !rows.is_empty() {
                            self.add_rows(rows)?;
                            continue;
                        }
                    }
                    return Ok(Outcome::Branch { var, bound, basis });
                }
            }
        }
    }

    /// With node variables an integral `y` should force integral `x`; if the
    /// LP returns a fractional `x` anyway, branch on it.
    fn fallback_branch_var(&self, x: &[f64]) -> Option<usize> {
        if self.inst.vars.y.is_some() {
            select_branching_var(x, self.inst.vars.x.clone())
        } else {
            None
        }
    }

    fn add_rows(&mut self, rows: Vec<Row>) -> Result<(), SolveError> {
        self.stats.cuts_added += rows.len();
        self.inst.lp.add_rows(rows).map_err(ModelError::from)?;
        Ok(())
    }

    fn integral_cuts(&mut self, x: &[f64]) -> Result<Option<Vec<Row>>, SolveError> {
        let Kind::Edge { ag } = self.kind else {
            return Ok(None);
        };
        self.stats.separation_calls += 1;
        let xe: Vec<f64> = x[self.inst.vars.x.clone()].iter().map(|v| v.round()).collect();
        let cuts = separate_integral(ag, &xe)?;
        if cuts.is_empty() {
            return Ok(None);
        }
        let rows = new_cut_rows(ag, &self.inst, &mut self.pool, cuts);
        if rows.is_empty() {
            return Err(SolveError::Internal("LP point violates a cut row already in the model".into()));
        }
        Ok(Some(rows))
    }

    fn fractional_cuts(&mut self, x: &[f64]) -> Result<Vec<Row>, SolveError> {
        let Kind::Edge { ag } = self.kind else {
            return Ok(Vec::new());
        };
        self.stats.separation_calls += 1;
        let cuts = separate_fractional(ag, &x[self.inst.vars.x.clone()])?;
        Ok(new_cut_rows(ag, &self.inst, &mut self.pool, cuts))
    }

    fn certify(&mut self, x: &[f64], objective: f64) -> Result<(), SolveError> {
        let path = match self.kind {
            Kind::Edge { ag } => {
                let xe: Vec<f64> = x[self.inst.vars.x.clone()].iter().map(|v| v.round()).collect();
                extract_path(ag, &xe)?
            }
            Kind::Walk { g } => {
                let walk = extract_walk(g, &self.inst, x);
                // The empty walk is feasible; report it as a single node.
                if walk.is_empty() { vec![0] } else { walk }
            }
        };
        let g = match self.kind {
            Kind::Edge { ag } => ag.base(),
            Kind::Walk { g } => g,
        };
        if path.is_empty() || !g.is_induced_path(&path)? {
            return Err(SolveError::Internal(format!("integral point gives invalid path {path:?}")));
        }
        let value = path.len() - 1;
        if (value as f64 - objective).abs() > 1e-4 {
            return Err(SolveError::Internal(format!(
                "path {path:?} has {value} edges but the LP objective is {objective}"
            )));
        }
        if self.incumbent.as_ref().is_none_or(|(best, _)| value > *best) {
            self.incumbent = Some((value, path));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::FamilySpec;
    use crate::oracle::longest_induced_path_exact;
    use proptest::prelude::*;

    fn family(spec: &str) -> Graph {
        spec.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    fn check(g: &Graph, cfg: &ModelConfig) -> SolveResult {
        let r = solve(g, cfg, &Limits::unlimited()).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal, "{cfg}");
        assert!(g.is_induced_path(&r.path).unwrap());
        assert_eq!(r.path.len(), r.opt_value + 1);
        assert!(r.stats.root_lp_value >= r.opt_value as f64 - 1e-6);
        r
    }

    #[test]
    fn branching_rule() {
        assert_eq!(select_branching_var(&[0.5, 0.3, 1.0], 0..3), Some(0));
        assert_eq!(select_branching_var(&[0.4, 0.6], 0..2), Some(0));
        assert_eq!(select_branching_var(&[0.0, 1.0, 1e-9], 0..3), None);
        assert_eq!(select_branching_var(&[0.9, 0.2, 0.7], 0..3), Some(2));
        assert_eq!(select_branching_var(&[0.5, 0.3, 0.5], 1..3), Some(2));
    }

    #[test]
    fn path_extraction() {
        let ag = AugmentedGraph::new(family("path:n=3")).unwrap();
        let s = ag.s();
        let mut x = vec![0.0; ag.edge_count()];
        for (u, v) in [(s, 0), (0, 1), (1, 2), (2, s)] {
            x[ag.edge_index(u, v).unwrap()] = 1.0;
        }
        assert_eq!(extract_path(&ag, &x).unwrap(), vec![0, 1, 2]);

        let ag = AugmentedGraph::new(family("complete:k=2")).unwrap();
        assert_eq!(extract_path(&ag, &[1.0, 1.0, 1.0]).unwrap(), vec![0, 1]);
        assert_eq!(extract_path(&ag, &[0.0, 1.0, 1.0]).unwrap(), vec![0]);
        assert!(extract_path(&ag, &[1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn extraction_rejects_two_cycles() {
        let g = Graph::new(5, [(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        let ag = AugmentedGraph::new(g).unwrap();
        let s = ag.s();
        let mut x = vec![0.0; ag.edge_count()];
        for (u, v) in [(s, 0), (0, 1), (1, s), (2, 3), (3, 4), (2, 4)] {
            x[ag.edge_index(u, v).unwrap()] = 1.0;
        }
        assert!(matches!(extract_path(&ag, &x), Err(SolveError::Internal(_))));
    }

    #[test]
    fn trivial_sizes() {
        let cfg = ModelConfig::cut();
        let r = solve(&Graph::new(1, []).unwrap(), &cfg, &Limits::default()).unwrap();
        assert_eq!((r.opt_value, r.path.clone()), (0, vec![0]));
        let r = solve(&family("complete:k=2"), &cfg, &Limits::default()).unwrap();
        assert_eq!((r.opt_value, r.path), (1, vec![0, 1]));
        let err = solve(&Graph::new(3, [(0, 1)]).unwrap(), &cfg, &Limits::default()).unwrap_err();
        assert_eq!(err, SolveError::Graph(GraphError::Disconnected(0, 2)));
    }

    #[test]
    fn proof_families() {
        for l in 3..=8 {
            let g = family(&format!("theta:l={l}"));
            for cfg in [ModelConfig::cut(), ModelConfig::cut().with_node_vars(true).with_frac_sep(true)] {
                assert_eq!(check(&g, &cfg).opt_value, 3);
            }
        }
        for l in 3..=6 {
            let g = family(&format!("star:l={l}"));
            assert_eq!(check(&g, &ModelConfig::cut()).opt_value, 2);
        }
        let r = check(&family("star:l=3"), &ModelConfig::cut().with_node_vars(true));
        assert_eq!(r.path.len(), 3);
    }

    #[test]
    fn walk_loop_examples() {
        let r = walk_solve_loop(&family("star:l=3"), &Limits::unlimited()).unwrap();
        assert_eq!((r.opt_value, r.walk_horizon), (2, Some(3)));
        let r = walk_solve_loop(&family("theta:l=3"), &Limits::unlimited()).unwrap();
        assert_eq!((r.opt_value, r.walk_horizon), (3, Some(4)));
        let r = walk_solve_loop(&family("path:n=5"), &Limits::unlimited()).unwrap();
        assert_eq!((r.opt_value, r.walk_horizon), (4, Some(4)));
        assert!(family("path:n=5").is_induced_path(&r.path).unwrap());
    }

    #[test]
    fn fixed_horizon_walk() {
        let g = family("theta:l=3");
        let cfg = ModelConfig { walk_horizon: Some(4), ..ModelConfig::walk() };
        assert_eq!(check(&g, &cfg).opt_value, 3);
        let cfg = ModelConfig { walk_horizon: Some(2), ..ModelConfig::walk() };
        assert_eq!(check(&family("star:l=3"), &cfg).opt_value, 2);
    }

    #[test]
    fn flow_model_solves_theta() {
        let g = family("theta:l=3");
        assert_eq!(check(&g, &ModelConfig::flow()).opt_value, 3);
        assert_eq!(check(&g, &ModelConfig::flow().with_node_vars(true).with_cliques(true)).opt_value, 3);
    }

    #[test]
    fn cherry_regression() {
        // Two pendant pairs hanging off a K4. Component-only separation
        // accepts a branching point here; the true optimum is 3.
        let g = Graph::new(
            6,
            [(0, 2), (0, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        let oracle = longest_induced_path_exact(&g, 1 << 30).unwrap().opt_value;
        assert_eq!(oracle, 3);
        for cfg in ModelConfig::all_cut_variants() {
            assert_eq!(check(&g, &cfg).opt_value, oracle, "{cfg}");
        }
    }

    #[test]
    fn node_limit_reports_timeout_with_valid_bound() {
        let g = family("ba:n=15,d=3,seed=1");
        let limits = Limits { time_limit: None, node_limit: Some(1) };
        let r = solve(&g, &ModelConfig::cut(), &limits).unwrap();
        let opt = longest_induced_path_exact(&g, 1 << 30).unwrap().opt_value;
        if r.status == SolveStatus::Timeout {
            assert!(r.dual_bound >= opt);
            assert!(r.opt_value <= opt);
        } else {
            assert_eq!(r.opt_value, opt);
        }
    }

    #[test]
    fn root_relaxation_examples() {
        let k4 = family("complete:k=4");
        let with = root_relaxation(&k4, &ModelConfig::cut().with_clique_bound(Some(4))).unwrap();
        assert!((with.value - 1.0).abs() < 1e-6);
        let k5 = family("complete:k=5");
        let weaker = root_relaxation(&k5, &ModelConfig::cut().with_clique_bound(Some(4))).unwrap();
        assert!(weaker.value >= 1.0 + 2.0 / 3.0 - 1e-6);
        let theta = family("theta:l=3");
        let cut = root_relaxation(&theta, &ModelConfig::cut()).unwrap();
        let flow = root_relaxation(&theta, &ModelConfig::flow()).unwrap();
        assert!(cut.converged);
        assert!((cut.value - flow.value).abs() < 1e-5, "{} vs {}", cut.value, flow.value);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn models_agree_with_oracle(n in 3usize..=8, seed in any::<u64>(), percent in 10u32..=60) {
            let g = FamilySpec::RandomConnected { n, percent, seed }.generate().unwrap();
            let opt = longest_induced_path_exact(&g, 1 << 30).unwrap().opt_value;
            let configs = [
                ModelConfig::cut(),
                ModelConfig::cut().with_frac_sep(true).with_node_vars(true).with_cliques(true),
                ModelConfig::flow(),
                ModelConfig::walk(),
            ];
            for cfg in configs {
                let r = solve(&g, &cfg, &Limits::unlimited()).unwrap();
                prop_assert_eq!(r.status, SolveStatus::Optimal);
                prop_assert_eq!(r.opt_value, opt, "{}", cfg);
                prop_assert!(g.is_induced_path(&r.path).unwrap());
            }
        }
    }
}
