//! C ABI over the `indpath` solver.
//!
//! Graphs and results are opaque heap handles owned by the caller and released
//! with the matching `_free` function. Every fallible call returns an
//! [`IndpathStatus`]; on failure [`indpath_last_error`] describes the problem
//! for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use indpath::bnb::{solve, Limits, SolveStatus};
use indpath::graph::{parse_edge_list, Graph};
use indpath::models::{Formulation, ModelConfig};
use indpath::oracle::longest_induced_path_exact;

/// Return code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndpathStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    GraphError = 4,
    SolveError = 5,
    BudgetExceeded = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndpathModel {
    Cut = 0,
    Flow = 1,
    Walk = 2,
}

/// Outcome of a solve.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndpathOutcome {
    Optimal = 0,
    Timeout = 1,
    Infeasible = 2,
}

/// Solver configuration; start from [`indpath_config_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct IndpathConfig {
    pub model: IndpathModel,
    pub node_vars: bool,
    pub cliques: bool,
    /// Clique rows for all cliques up to this size; 0 uses maximal cliques.
    pub clique_bound: usize,
    pub frac_sep: bool,
    /// Fixed walk horizon; negative raises the horizon from the diameter.
    pub walk_horizon: i64,
    /// Wall-clock limit in seconds; zero or negative means no limit.
    pub time_limit_seconds: f64,
}

/// Opaque simple undirected graph.
pub struct IndpathGraph {
    inner: Graph,
}

/// Opaque solve or oracle result.
pub struct IndpathResult {
    outcome: IndpathOutcome,
    value: usize,
    dual_bound: usize,
    path: Vec<usize>,
    bnb_nodes: usize,
    cuts: usize,
    root_lp: f64,
    seconds: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl ToString) {
    let text = msg.to_string().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("nul bytes removed"));
}

/// Runs `f`, recording its error message and turning panics into
/// [`IndpathStatus::Panic`].
fn guarded(f: impl FnOnce() -> Result<(), (IndpathStatus, String)>) -> IndpathStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            IndpathStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            IndpathStatus::Panic
        }
    }
}

fn null(what: &str) -> (IndpathStatus, String) {
    (IndpathStatus::NullPointer, format!("{what} is null"))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn indpath_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a graph on `n` nodes from `m` edges stored as `2 * m` node ids.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (it may be null when `m` is 0)
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn indpath_graph_new(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut IndpathGraph,
) -> IndpathStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if edges.is_null() && m > 0 {
            return Err(null("edges"));
        }
        let flat = if m == 0 { &[][..] } else { std::slice::from_raw_parts(edges, 2 * m) };
        let pairs = flat.chunks_exact(2).map(|p| (p[0], p[1]));
        let g = Graph::new(n, pairs).map_err(|e| (IndpathStatus::GraphError, e.to_string()))?;
        *out = Box::into_raw(Box::new(IndpathGraph { inner: g }));
        Ok(())
    })
}

/// Parses edge-list text (`u v` per line, `#` comments).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn indpath_graph_parse(text: *const c_char, out: *mut *mut IndpathGraph) -> IndpathStatus {
    guarded(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (IndpathStatus::ParseError, format!("input is not UTF-8: {e}")))?;
        let parsed = parse_edge_list(text).map_err(|e| (IndpathStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(IndpathGraph { inner: parsed.graph }));
        Ok(())
    })
}

/// Releases a graph; null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn indpath_graph_free(g: *mut IndpathGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Writes the node and edge counts.
///
/// # Safety
/// `g` must be a live graph; `n` and `m` writable.
#[no_mangle]
pub unsafe extern "C" fn indpath_graph_counts(g: *const IndpathGraph, n: *mut usize, m: *mut usize) -> IndpathStatus {
    guarded(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if n.is_null() || m.is_null() {
            return Err(null("output"));
        }
        *n = g.inner.node_count();
        *m = g.inner.edge_count();
        Ok(())
    })
}

/// Cut model, integral separation only, 1200 s limit.
#[no_mangle]
pub extern "C" fn indpath_config_default() -> IndpathConfig {
    IndpathConfig {
        model: IndpathModel::Cut,
        node_vars: false,
        cliques: false,
        clique_bound: 0,
        frac_sep: false,
        walk_horizon: -1,
        time_limit_seconds: 1200.0,
    }
}

fn model_config(c: &IndpathConfig) -> Result<ModelConfig, (IndpathStatus, String)> {
    let formulation = match c.model {
        IndpathModel::Cut => Formulation::Cut,
        IndpathModel::Flow => Formulation::Flow,
        IndpathModel::Walk => Formulation::Walk,
    };
    let mut cfg = ModelConfig::new(formulation)
        .with_node_vars(c.node_vars)
        .with_cliques(c.cliques)
        .with_frac_sep(c.frac_sep);
    if c.clique_bound > 0 {
        cfg = cfg.with_clique_bound(Some(c.clique_bound));
    }
    cfg.walk_horizon = usize::try_from(c.walk_horizon).ok();
    cfg.validate().map_err(|e| (IndpathStatus::InvalidArgument, e.to_string()))?;
    Ok(cfg)
}

/// Solves the longest induced path problem; the graph must be connected.
///
/// # Safety
/// `g` must be a live graph, `config` readable (null selects the default) and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn indpath_solve(
    g: *const IndpathGraph,
    config: *const IndpathConfig,
    out: *mut *mut IndpathResult,
) -> IndpathStatus {
    guarded(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = config.as_ref().copied().unwrap_or_else(|| indpath_config_default());
        let cfg = model_config(&c)?;
        let limits = if c.time_limit_seconds > 0.0 && c.time_limit_seconds.is_finite() {
            Limits::with_time_limit(c.time_limit_seconds)
        } else {
            Limits::unlimited()
        };
        let r = solve(&g.inner, &cfg, &limits).map_err(|e| (IndpathStatus::SolveError, e.to_string()))?;
        let outcome = match r.status {
            SolveStatus::Optimal => IndpathOutcome::Optimal,
            SolveStatus::Timeout => IndpathOutcome::Timeout,
            SolveStatus::Infeasible => IndpathOutcome::Infeasible,
        };
        *out = Box::into_raw(Box::new(IndpathResult {
            outcome,
            value: r.opt_value,
            dual_bound: r.dual_bound,
            path: r.path,
            bnb_nodes: r.stats.bnb_nodes,
            cuts: r.stats.cuts_added,
            root_lp: r.stats.root_lp_value,
            seconds: r.stats.wall_time_seconds,
        }));
        Ok(())
    })
}

/// Exhaustive search, failing with `BudgetExceeded` after `budget` steps.
///
/// # Safety
/// `g` must be a live graph and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn indpath_oracle(g: *const IndpathGraph, budget: u64, out: *mut *mut IndpathResult) -> IndpathStatus {
    guarded(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = longest_induced_path_exact(&g.inner, budget)
            .map_err(|e| (IndpathStatus::BudgetExceeded, e.to_string()))?;
        *out = Box::into_raw(Box::new(IndpathResult {
            outcome: IndpathOutcome::Optimal,
            value: r.opt_value,
            dual_bound: r.opt_value,
            path: r.witness,
            bnb_nodes: 0,
            cuts: 0,
            root_lp: r.opt_value as f64,
            seconds: 0.0,
        }));
        Ok(())
    })
}

/// Releases a result; null is ignored.
///
/// # Safety
/// `r` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn indpath_result_free(r: *mut IndpathResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live result.
#[no_mangle]
pub unsafe extern "C" fn indpath_result_outcome(r: *const IndpathResult) -> IndpathOutcome {
    (*r).outcome
}

/// Edges on the best path found.
///
/// # Safety
/// `r` must be a live result.
#[no_mangle]
pub unsafe extern "C" fn indpath_result_value(r: *const IndpathResult) -> usize {
    (*r).value
}

/// Proven upper bound on the optimum.
///
/// # Safety
/// `r` must be a live result.
#[no_mangle]
pub unsafe extern "C" fn indpath_result_dual_bound(r: *const IndpathResult) -> usize {
    (*r).dual_bound
}

/// Number of nodes on the path.
///
/// # Safety
/// `r` must be a live result.
#[no_mangle]
pub unsafe extern "C" fn indpath_result_path_len(r: *const IndpathResult) -> usize {
    (*r).path.len()
}

/// Copies up to `cap` path nodes into `buf`; returns the number copied.
///
/// # Safety
/// `r` must be a live result and `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn indpath_result_path(r: *const IndpathResult, buf: *mut usize, cap: usize) -> usize {
    let path = &(*r).path;
    let k = path.len().min(cap);
    if k > 0 {
        ptr::copy_nonoverlapping(path.as_ptr(), buf, k);
    }
    k
}

/// # Safety
/// `r` must be a live result.
#[no_mangle]
pub unsafe extern "C" fn indpath_result_bnb_nodes(r: *const IndpathResult) -> usize {
    (*r).bnb_nodes
}

/// # Safety
/// `r` must be a live result.
#[no_mangle]
pub unsafe extern "C" fn indpath_result_cuts(r: *const IndpathResult) -> usize {
    (*r).cuts
}

/// # Safety
/// `r` must be a live result.
#[no_mangle]
pub unsafe extern "C" fn indpath_result_root_lp(r: *const IndpathResult) -> f64 {
    (*r).root_lp
}

/// # Safety
/// `r` must be a live result.
#[no_mangle]
pub unsafe extern "C" fn indpath_result_seconds(r: *const IndpathResult) -> f64 {
    (*r).seconds
}
