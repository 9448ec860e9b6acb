//! ILP formulations: the base/cut model on `G*`, its flow extension, the
//! walk model, and the optional clique rows and node variables.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cliques::{enumerate_cliques_bounded, enumerate_maximal_cliques, is_clique, Clique};
use crate::graph::{AugmentedGraph, Graph, GraphError};
use crate::lp::{LinearProgram, LpError, Relation, Row};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("node set {0:?} is not a clique")]
    NotAClique(Vec<usize>),
    #[error("walk horizon T = {t} needs T + 1 <= |V| = {n}")]
    Horizon { t: usize, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lp(#[from] LpError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    Walk,
    Cut,
    Flow,
}

impl FromStr for Formulation {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "walk" => Ok(Formulation::Walk),
            "cut" => Ok(Formulation::Cut),
            "flow" => Ok(Formulation::Flow),
            other => Err(ModelError::Config(format!("unknown model {other:?}"))),
        }
    }
}

/// Which formulation to build and how to strengthen it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelConfig {
    pub formulation: Formulation,
    pub node_vars: bool,
    pub cliques: bool,
    /// Add rows for every clique with at most this many nodes instead of the
    /// maximal cliques.
    pub clique_bound: Option<usize>,
    pub frac_sep: bool,
    /// Fixed horizon for the walk model; `None` runs the increasing-horizon loop.
    pub walk_horizon: Option<usize>,
}

impl ModelConfig {
    pub fn new(formulation: Formulation) -> Self {
        ModelConfig {
            formulation,
            node_vars: false,
            cliques: false,
            clique_bound: None,
            frac_sep: false,
            walk_horizon: None,
        }
    }

    pub fn cut() -> Self {
        Self::new(Formulation::Cut)
    }

    pub fn flow() -> Self {
        Self::new(Formulation::Flow)
    }

    pub fn walk() -> Self {
        Self::new(Formulation::Walk)
    }

    pub fn with_node_vars(mut self, on: bool) -> Self {
        self.node_vars = on;
        self
    }

    pub fn with_cliques(mut self, on: bool) -> Self {
        self.cliques = on;
        self
    }

    pub fn with_clique_bound(mut self, k: Option<usize>) -> Self {
        self.clique_bound = k;
        if k.is_some() {
            self.cliques = true;
        }
        self
    }

    pub fn with_frac_sep(mut self, on: bool) -> Self {
        self.frac_sep = on;
        self
    }

    /// The eight cut-model variants: every combination of fractional
    /// separation, node variables and clique rows.
    pub fn all_cut_variants() -> Vec<ModelConfig> {
        let mut out = Vec::new();
        for frac in [false, true] {
            for node_vars in [false, true] {
                for cliques in [false, true] {
                    out.push(ModelConfig::cut().with_frac_sep(frac).with_node_vars(node_vars).with_cliques(cliques));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.frac_sep && self.formulation != Formulation::Cut {
            return Err(ModelError::Config("fractional separation requires the cut model".into()));
        }
        if self.walk_horizon.is_some() && self.formulation != Formulation::Walk {
            return Err(ModelError::Config("a walk horizon requires the walk model".into()));
        }
        if self.formulation == Formulation::Walk && (self.node_vars || self.cliques) {
            return Err(ModelError::Config("the walk model takes no node variables or clique rows".into()));
        }
        if let Some(k) = self.clique_bound {
            if k < 2 {
                return Err(ModelError::Config("clique bound must be at least 2".into()));
            }
            if !self.cliques {
                return Err(ModelError::Config("clique bound given without clique rows".into()));
            }
        }
        Ok(())
    }
}

/// Short names such as `C_{int}`, `C^{n,c}_{frac}`, `F^{n}` or `W`; a clique
/// bound appends `[k=K]`.
impl fmt::Display for ModelConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.formulation {
            Formulation::Cut => "C",
            Formulation::Flow => "F",
            Formulation::Walk => "W",
        };
        f.write_str(letter)?;
        let sup: Vec<&str> = [(self.node_vars, "n"), (self.cliques, "c")]
            .into_iter()
            .filter_map(|(on, s)| on.then_some(s))
            .collect();
        if !sup.is_empty() {
            write!(f, "^{{{}}}", sup.join(","))?;
        }
        if self.formulation == Formulation::Cut {
            f.write_str(if self.frac_sep { "_{frac}" } else { "_{int}" })?;
        }
        if let Some(t) = self.walk_horizon {
            write!(f, "[T={t}]")?;
        }
        if let Some(k) = self.clique_bound {
            write!(f, "[k={k}]")?;
        }
        Ok(())
    }
}

impl FromStr for ModelConfig {
    type Err = ModelError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || ModelError::Config(format!("cannot parse configuration {text:?}"));
        let mut rest = text.trim();
        let mut clique_bound = None;
        let mut walk_horizon = None;
        while let Some(open) = rest.rfind('[') {
            let inner = rest[open..].strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(bad)?;
            let (key, value) = inner.split_once('=').ok_or_else(bad)?;
            let value: usize = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "k" => clique_bound = Some(value),
                "T" => walk_horizon = Some(value),
                _ => return Err(bad()),
            }
            rest = &rest[..open];
        }
        let cleaned: String = rest.chars().filter(|c| !matches!(c, '{' | '}' | ' ')).collect();
        let mut chars = cleaned.as_str();
        let formulation = match chars.chars().next() {
            Some('C') => Formulation::Cut,
            Some('F') => Formulation::Flow,
            Some('W') => Formulation::Walk,
            _ => return Err(bad()),
        };
        chars = &chars[1..];
        let mut cfg = ModelConfig::new(formulation);
        if let Some(after) = chars.strip_prefix('^') {
            let end = after.find('_').unwrap_or(after.len());
            for flag in after[..end].split(',') {
                match flag {
                    "n" => cfg.node_vars = true,
                    "c" => cfg.cliques = true,
                    _ => return Err(bad()),
                }
            }
            chars = &after[end..];
        }
        match (formulation, chars) {
            (Formulation::Cut, "_int") => {}
            (Formulation::Cut, "_frac") => cfg.frac_sep = true,
            (Formulation::Flow | Formulation::Walk, "") => {}
            _ => return Err(bad()),
        }
        cfg.clique_bound = clique_bound;
        cfg.walk_horizon = walk_horizon;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Where each model variable lives in the LP.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableMap {
    /// Edge variables in `G*` edge order.
    pub x: Range<usize>,
    /// Node variables `y_v`, `v ∈ V`.
    pub y: Option<Range<usize>>,
    /// Flow variables, commodity-major: `z[v * arcs + a]`, where arc `2e` runs
    /// from the smaller to the larger endpoint of edge `e` and `2e + 1` back.
    pub z: Option<Range<usize>>,
    /// Walk variables `x_v^t` at `t * n + v`.
    pub w: Option<Range<usize>>,
    pub n: usize,
    pub horizon: Option<usize>,
}

impl VariableMap {
    pub fn x(&self, e: usize) -> usize {
        self.x.start + e
    }

    pub fn y(&self, v: usize) -> Option<usize> {
        self.y.as_ref().map(|r| r.start + v)
    }

    pub fn z(&self, commodity: usize, arc: usize) -> Option<usize> {
        let arcs = 2 * self.x.len();
        self.z.as_ref().map(|r| r.start + commodity * arcs + arc)
    }

    pub fn w(&self, v: usize, t: usize) -> Option<usize> {
        self.w.as_ref().map(|r| r.start + t * self.n + v)
    }

    pub fn total(&self) -> usize {
        [Some(&self.x), self.y.as_ref(), self.z.as_ref(), self.w.as_ref()]
            .into_iter()
            .flatten()
            .map(|r| r.end)
            .max()
            .unwrap_or(0)
    }
}

/// A built formulation ready for the branch-and-cut driver.
#[derive(Debug, Clone)]
pub struct ModelInstance {
    pub lp: LinearProgram,
    pub vars: VariableMap,
    pub config: ModelConfig,
    pub clique_rows: usize,
}

impl ModelInstance {
    /// Variables the driver branches on: node variables when present, walk
    /// variables for the walk model, edge variables otherwise. Flow variables
    /// are never branched on.
    pub fn branching_vars(&self) -> Range<usize> {
        if let Some(w) = &self.vars.w {
            w.clone()
        } else if let Some(y) = &self.vars.y {
            y.clone()
        } else {
            self.vars.x.clone()
        }
    }
}

fn push_var(lp: &mut LinearProgram, obj: f64) -> usize {
    lp.add_var(obj, 0.0, 1.0).expect("unit bounds are valid")
}

fn push_row(lp: &mut LinearProgram, row: Row) {
    lp.add_row(row).expect("model rows reference existing variables");
}

/// Base model: two star edges, and every selected edge of `E` has exactly two
/// selected neighbouring edges while every edge of `E` sees at most two.
pub fn build_base(ag: &AugmentedGraph) -> (LinearProgram, VariableMap) {
    let mut lp = LinearProgram::new();
    let m = ag.edge_count();
    for e in 0..m {
        push_var(&mut lp, if ag.is_star_edge(e) { 0.0 } else { 1.0 });
    }
    let n = ag.base().node_count();
    push_row(&mut lp, Row::new((0..n).map(|v| (ag.star_edge(v), 1.0)), Relation::Eq, 2.0));
    for e in 0..ag.base_edge_count() {
        let adj = ag.adjacent_edges(e);
        let lower = adj.iter().map(|&f| (f, 1.0)).chain([(e, -2.0)]);
        push_row(&mut lp, Row::new(lower, Relation::Ge, 0.0));
        push_row(&mut lp, Row::new(adj.iter().map(|&f| (f, 1.0)), Relation::Le, 2.0));
    }
    let vars = VariableMap { x: 0..m, y: None, z: None, w: None, n, horizon: None };
    (lp, vars)
}

/// Cut model: the base model plus optional clique rows and node variables.
/// Cut rows are added lazily by separation.
pub fn build_cut(ag: &AugmentedGraph, cfg: &ModelConfig) -> Result<ModelInstance, ModelError> {
    cfg.validate()?;
    if cfg.formulation != Formulation::Cut {
        return Err(ModelError::Config(format!("{cfg} is not a cut-model configuration")));
    }
    let (lp, vars) = build_base(ag);
    strengthen(ag, lp, vars, cfg)
}

/// Flow model: the base model plus one flow commodity per node.
pub fn build_flow(ag: &AugmentedGraph) -> (LinearProgram, VariableMap) {
    let (mut lp, mut vars) = build_base(ag);
    let n = ag.base().node_count();
    let m = ag.edge_count();
    let arcs = 2 * m;
    let start = lp.num_vars();
    for _ in 0..n * arcs {
        push_var(&mut lp, 0.0);
    }
    vars.z = Some(start..lp.num_vars());
    let z = |v: usize, a: usize| start + v * arcs + a;
    for v in 0..n {
        for e in 0..m {
            for a in [2 * e, 2 * e + 1] {
                push_row(&mut lp, Row::new([(z(v, a), 1.0), (vars.x(e), -1.0)], Relation::Le, 0.0));
            }
        }
    }
    for v in 0..n {
        for w in 0..n {
            let mut coeffs = Vec::new();
            for &e in ag.incident_edges(w) {
                let (a, _) = ag.edges()[e];
                let (out_arc, in_arc) = if a == w { (2 * e, 2 * e + 1) } else { (2 * e + 1, 2 * e) };
                coeffs.push((z(v, out_arc), 1.0));
                coeffs.push((z(v, in_arc), -1.0));
                if w == v {
                    coeffs.push((vars.x(e), -1.0));
                }
            }
            push_row(&mut lp, Row::new(coeffs, Relation::Eq, 0.0));
        }
    }
    (lp, vars)
}

/// Flow model with the optional strengthenings of `cfg`.
pub fn build_flow_model(ag: &AugmentedGraph, cfg: &ModelConfig) -> Result<ModelInstance, ModelError> {
    cfg.validate()?;
    if cfg.formulation != Formulation::Flow {
        return Err(ModelError::Config(format!("{cfg} is not a flow-model configuration")));
    }
    let (lp, vars) = build_flow(ag);
    strengthen(ag, lp, vars, cfg)
}

fn strengthen(
    ag: &AugmentedGraph,
    mut lp: LinearProgram,
    mut vars: VariableMap,
    cfg: &ModelConfig,
) -> Result<ModelInstance, ModelError> {
    let mut clique_rows = 0;
    if cfg.cliques {
        let cliques = clique_family(ag.base(), cfg.clique_bound);
        clique_rows = add_clique_constraints(&mut lp, &vars, ag, &cliques)?;
    }
    if cfg.node_vars {
        add_node_variables(&mut lp, &mut vars, ag);
    }
    Ok(ModelInstance { lp, vars, config: *cfg, clique_rows })
}

/// Cliques of size at least 3 used for clique rows: the maximal ones, or all
/// cliques up to `bound` nodes.
pub fn clique_family(g: &Graph, bound: Option<usize>) -> Vec<Clique> {
    let all = match bound {
        None => enumerate_maximal_cliques(g),
        Some(k) => enumerate_cliques_bounded(g, k),
    };
    all.into_iter().filter(|q| q.len() >= 3).collect()
}

/// One row `Σ_{e ⊆ Q} x_e <= 1` per clique. Cliques with fewer than three
/// nodes are skipped since the bounds already imply their row. Returns the
/// number of rows added.
pub fn add_clique_constraints(
    lp: &mut LinearProgram,
    vars: &VariableMap,
    ag: &AugmentedGraph,
    cliques: &[Clique],
) -> Result<usize, ModelError> {
    let g = ag.base();
    let mut rows = Vec::new();
    for q in cliques {
        if !is_clique(g, q) {
            return Err(ModelError::NotAClique(q.clone()));
        }
        if q.len() < 3 {
            continue;
        }
        let mut coeffs = Vec::new();
        for (i, &u) in q.iter().enumerate() {
            for &v in &q[i + 1..] {
                let e = g.edge_position(u, v).expect("clique pairs are edges");
                coeffs.push((vars.x(e), 1.0));
            }
        }
        rows.push(Row::new(coeffs, Relation::Le, 1.0));
    }
    let added = rows.len();
    lp.add_rows(rows)?;
    Ok(added)
}

/// Adds `y_v ∈ [0, 1]` with `2 y_v = Σ_{δ*(v)} x_e` for every `v ∈ V`.
pub fn add_node_variables(lp: &mut LinearProgram, vars: &mut VariableMap, ag: &AugmentedGraph) {
    let n = ag.base().node_count();
    let start = lp.num_vars();
    for _ in 0..n {
        push_var(lp, 0.0);
    }
    for v in 0..n {
        let coeffs = ag.incident_edges(v).iter().map(|&e| (vars.x(e), -1.0)).chain([(start + v, 2.0)]);
        push_row(lp, Row::new(coeffs, Relation::Eq, 0.0));
    }
    vars.y = Some(start..start + n);
}

/// Row `Σ_{δ*(v)} x − Σ_{δ*(W)} x <= 0` for `v ∈ W ⊆ V`.
pub fn cut_row(ag: &AugmentedGraph, vars: &VariableMap, set: &[usize], witness: usize) -> Row {
    let mut inside = vec![false; ag.node_count()];
    for &u in set {
        inside[u] = true;
    }
    let mut coeffs: Vec<(usize, f64)> = ag.incident_edges(witness).iter().map(|&e| (vars.x(e), 1.0)).collect();
    for &u in set {
        for &e in ag.incident_edges(u) {
            if !inside[ag.other_endpoint(e, u)] {
                coeffs.push((vars.x(e), -1.0));
            }
        }
    }
    Row::new(coeffs, Relation::Le, 0.0)
}

/// Walk model with horizon `T`: variable `x_v^t` is 1 iff the walk visits `v`
/// at time `t ∈ 0..=T`.
pub fn build_walk(g: &Graph, horizon: usize) -> Result<ModelInstance, ModelError> {
    let n = g.node_count();
    if horizon + 1 > n {
        return Err(ModelError::Horizon { t: horizon, n });
    }
    let t_max = horizon;
    let mut lp = LinearProgram::new();
    for t in 0..=t_max {
        for _ in 0..n {
            push_var(&mut lp, if t >= 1 { 1.0 } else { 0.0 });
        }
    }
    let w = |v: usize, t: usize| t * n + v;
    for t in 0..=t_max {
        push_row(&mut lp, Row::new((0..n).map(|v| (w(v, t), 1.0)), Relation::Le, 1.0));
    }
    for v in 0..n {
        push_row(&mut lp, Row::new((0..=t_max).map(|t| (w(v, t), 1.0)), Relation::Le, 1.0));
    }
    for t in 0..t_max {
        let coeffs = (0..n).map(|v| (w(v, t + 1), 1.0)).chain((0..n).map(|v| (w(v, t), -1.0)));
        push_row(&mut lp, Row::new(coeffs, Relation::Le, 0.0));
    }
    for v in 0..n {
        for t in 0..t_max {
            let far = (0..n).filter(|&u| u != v && !g.has_edge(u, v)).map(|u| (w(u, t + 1), 1.0));
            push_row(&mut lp, Row::new(far.chain([(w(v, t), 1.0)]), Relation::Le, 1.0));
        }
    }
    for &(a, b) in g.edges() {
        for (v, u) in [(a, b), (b, a)] {
            for t in 0..t_max.saturating_sub(1) {
                let later = (t + 2..=t_max).map(|tau| (w(u, tau), 1.0));
                push_row(&mut lp, Row::new(later.chain([(w(v, t), 1.0)]), Relation::Le, 1.0));
            }
        }
    }
    let vars = VariableMap {
        x: 0..0,
        y: None,
        z: None,
        w: Some(0..lp.num_vars()),
        n,
        horizon: Some(horizon),
    };
    let config = ModelConfig { walk_horizon: Some(horizon), ..ModelConfig::walk() };
    Ok(ModelInstance { lp, vars, config, clique_rows: 0 })
}

/// Builds the configured cut or flow model. The walk model needs a horizon,
/// see [`build_walk`].
pub fn build_model(ag: &AugmentedGraph, cfg: &ModelConfig) -> Result<ModelInstance, ModelError> {
    match cfg.formulation {
        Formulation::Cut => build_cut(ag, cfg),
        Formulation::Flow => build_flow_model(ag, cfg),
        Formulation::Walk => {
            let t = cfg.walk_horizon.ok_or_else(|| ModelError::Config("walk model needs a horizon".into()))?;
            build_walk(ag.base(), t)
        }
    }
}
