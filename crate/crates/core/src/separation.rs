//! Separation of the cut rows `Σ_{δ*(v)} x <= Σ_{δ*(W)} x`.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::graph::AugmentedGraph;

/// Edges with a value above this are active.
pub const ACTIVE_EPS: f64 = 1e-7;
/// Minimum violation for a cut to be reported.
pub const VIOLATION_TOL: f64 = 1e-6;
const INTEGRALITY_TOL: f64 = 1e-6;
const RESIDUAL_EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeparationError {
    #[error("edge {edge} has fractional value {value}")]
    Fractional { edge: usize, value: f64 },
    #[error("expected {expected} edge values, got {got}")]
    Length { expected: usize, got: usize },
}

/// Cut row for node set `set ⊆ V` (sorted) and witness `witness ∈ set`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutConstraint {
    pub witness: usize,
    pub set: Vec<usize>,
}

impl CutConstraint {
    pub fn new(witness: usize, mut set: Vec<usize>) -> Self {
        set.sort_unstable();
        set.dedup();
        debug_assert!(set.binary_search(&witness).is_ok());
        CutConstraint { witness, set }
    }

    /// `Σ_{δ*(v)} x − Σ_{δ*(W)} x`; positive means violated.
    pub fn violation(&self, ag: &AugmentedGraph, x: &[f64]) -> f64 {
        let mut inside = vec![false; ag.node_count()];
        for &u in &self.set {
            inside[u] = true;
        }
        let lhs: f64 = ag.incident_edges(self.witness).iter().map(|&e| x[e]).sum();
        let boundary: f64 = self
            .set
            .iter()
            .flat_map(|&u| ag.incident_edges(u).iter().map(move |&e| (u, e)))
            .filter(|&(u, e)| !inside[ag.other_endpoint(e, u)])
            .map(|(_, e)| x[e])
            .sum();
        lhs - boundary
    }
}

/// Support of an LP point on `G*`: edges with value above [`ACTIVE_EPS`],
/// with their values as capacities.
#[derive(Debug, Clone)]
pub struct ActiveSubgraph {
    adjacency: Vec<Vec<(usize, usize)>>,
    capacity: Vec<f64>,
    degree: Vec<f64>,
    endpoints: Vec<(usize, usize)>,
}

impl ActiveSubgraph {
    /// `x` holds one value per edge of `G*`.
    pub fn new(ag: &AugmentedGraph, x: &[f64]) -> Self {
        let mut adjacency = vec![Vec::new(); ag.node_count()];
        let mut capacity = vec![0.0; ag.edge_count()];
        let mut degree = vec![0.0; ag.node_count()];
        for (e, &(u, v)) in ag.edges().iter().enumerate() {
            degree[u] += x[e];
            degree[v] += x[e];
            if x[e] > ACTIVE_EPS {
                capacity[e] = x[e];
                adjacency[u].push((v, e));
                adjacency[v].push((u, e));
            }
        }
        ActiveSubgraph { adjacency, capacity, degree, endpoints: ag.edges().to_vec() }
    }

    pub fn is_active(&self, v: usize) -> bool {
        !self.adjacency[v].is_empty()
    }

    /// `Σ_{δ*(v)} x`.
    pub fn degree(&self, v: usize) -> f64 {
        self.degree[v]
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    /// Maximum `source`–`sink` flow where each active edge carries at most its
    /// value in either direction. Returns the flow value and the source side
    /// of a minimum cut, sorted.
    pub fn max_flow(&self, source: usize, sink: usize) -> (f64, Vec<usize>) {
        // flow[e] is the flow from the first endpoint of e to the second.
        let mut flow = vec![0.0; self.capacity.len()];
        let residual = |flow: &[f64], e: usize, from: usize| {
            let sign = if self.endpoints[e].0 == from { 1.0 } else { -1.0 };
            self.capacity[e] - sign * flow[e]
        };
        let nodes = self.adjacency.len();
        let mut total = 0.0;
        loop {
            let mut pred: Vec<Option<(usize, usize)>> = vec![None; nodes];
            let mut seen = vec![false; nodes];
            seen[source] = true;
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                if u == sink {
                    break;
                }
                for &(w, e) in &self.adjacency[u] {
                    if !seen[w] && residual(&flow, e, u) > RESIDUAL_EPS {
                        seen[w] = true;
                        pred[w] = Some((u, e));
                        queue.push_back(w);
                    }
                }
            }
            if !seen[sink] || source == sink {
                let mut side: Vec<usize> = (0..nodes).filter(|&v| seen[v]).collect();
                side.sort_unstable();
                return (total, side);
            }
            let mut bottleneck = f64::INFINITY;
            let mut v = sink;
            while let Some((u, e)) = pred[v] {
                bottleneck = bottleneck.min(residual(&flow, e, u));
                v = u;
            }
            let mut v = sink;
            while let Some((u, e)) = pred[v] {
                flow[e] += if self.endpoints[e].0 == u { bottleneck } else { -bottleneck };
                v = u;
            }
            total += bottleneck;
        }
    }

    /// Total capacity of active edges with exactly one endpoint in `set`.
    pub fn boundary_capacity(&self, set: &[usize]) -> f64 {
        let mut inside = vec![false; self.adjacency.len()];
        for &u in set {
            inside[u] = true;
        }
        set.iter()
            .flat_map(|&u| self.adjacency[u].iter())
            .filter(|&&(w, _)| !inside[w])
            .map(|&(_, e)| self.capacity[e])
            .sum()
    }
}

fn check_len(ag: &AugmentedGraph, x: &[f64]) -> Result<(), SeparationError> {
    if x.len() != ag.edge_count() {
        return Err(SeparationError::Length { expected: ag.edge_count(), got: x.len() });
    }
    Ok(())
}

/// Separation at an integral point.
///
/// Groups the nodes touched by selected edges of `E` into connected
/// components. A component `K` receiving `c` selected star edges violates the
/// cut row for `(K, v)` whenever some `v ∈ K` has more than `c` selected
/// incident edges. This covers cycles that avoid `s` (`c = 0`) as well as
/// branching structures that reach `s` through fewer edges than their largest
/// degree. Returns one cut per violating component, witness = the
/// highest-degree node (lowest id on ties).
pub fn separate_integral(ag: &AugmentedGraph, x: &[f64]) -> Result<Vec<CutConstraint>, SeparationError> {
    check_len(ag, x)?;
    if let Some((edge, &value)) =
        x.iter().enumerate().find(|(_, v)| (**v - v.round()).abs() > INTEGRALITY_TOL)
    {
        return Err(SeparationError::Fractional { edge, value });
    }
    let n = ag.base().node_count();
    let selected = |e: usize| x[e] > 0.5;
    let mut degree = vec![0usize; n];
    let mut star = vec![0usize; n];
    let mut adjacency = vec![Vec::new(); n];
    for (e, &(u, v)) in ag.edges().iter().enumerate() {
        if !selected(e) {
            continue;
        }
        if ag.is_star_edge(e) {
            degree[u] += 1;
            star[u] += 1;
        } else {
            degree[u] += 1;
            degree[v] += 1;
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut cuts = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX || adjacency[start].is_empty() {
            continue;
        }
        comp[start] = start;
        let mut members = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &adjacency[u] {
                if comp[w] == usize::MAX {
                    comp[w] = start;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        let boundary: usize = members.iter().map(|&u| star[u]).sum();
        let witness = *members
            .iter()
            .max_by_key(|&&u| (degree[u], std::cmp::Reverse(u)))
            .expect("component is non-empty");
        if degree[witness] > boundary {
            cuts.push(CutConstraint::new(witness, members));
        }
    }
    Ok(cuts)
}

/// Exact separation at an arbitrary point via one max-flow per active node.
///
/// For active `v` (skipping nodes already inside a cut found in this call),
/// a flow to `s` below `Σ_{δ*(v)} x` yields a violated row whose set is the
/// source side of the minimum cut. The returned list is empty iff no cut row
/// is violated by more than [`VIOLATION_TOL`].
pub fn separate_fractional(ag: &AugmentedGraph, x: &[f64]) -> Result<Vec<CutConstraint>, SeparationError> {
    check_len(ag, x)?;
    let asg = ActiveSubgraph::new(ag, x);
    let n = ag.base().node_count();
    let s = ag.s();
    let mut covered = vec![false; n];
    let mut seen = HashSet::new();
    let mut cuts = Vec::new();
    for v in 0..n {
        if covered[v] || !asg.is_active(v) {
            continue;
        }
        let (flow, side) = asg.max_flow(v, s);
        if flow >= asg.degree(v) - VIOLATION_TOL {
            continue;
        }
        let witness = *side
            .iter()
            .max_by(|&&a, &&b| asg.degree(a).total_cmp(&asg.degree(b)).then(b.cmp(&a)))
            .expect("source side contains the source");
        for &u in &side {
            covered[u] = true;
        }
        let cut = CutConstraint::new(witness, side);
        if cut.violation(ag, x) > VIOLATION_TOL && seen.insert(cut.clone()) {
            cuts.push(cut);
        }
    }
    Ok(cuts)
}

/// Remembers which cuts were already added so each `(W, v)` enters the LP once.
#[derive(Debug, Default, Clone)]
pub struct CutPool {
    seen: HashSet<CutConstraint>,
}

impl CutPool {
    pub fn new() -> Self {
        Self::default()
    }

    /// True if the cut was not in the pool before.
    pub fn insert(&mut self, cut: &CutConstraint) -> bool {
        if self.seen.contains(cut) {
            return false;
        }
        self.seen.insert(cut.clone());
        true
    }

    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }
}

/// Largest violation over every `(W, v)` pair; exponential, for tests and
/// small checks only.
pub fn brute_force_max_violation(ag: &AugmentedGraph, x: &[f64]) -> f64 {
    let n = ag.base().node_count();
    assert!(n <= 20, "brute force separation is limited to 20 nodes");
    let mut best = f64::NEG_INFINITY;
    for mask in 1u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        for &v in &set {
            let viol = CutConstraint { witness: v, set: set.clone() }.violation(ag, x);
            best = best.max(viol);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::FamilySpec;
    use crate::graph::Graph;
    use proptest::prelude::*;

    fn point(ag: &AugmentedGraph, on: &[(usize, usize)]) -> Vec<f64> {
        let mut x = vec![0.0; ag.edge_count()];
        for &(u, v) in on {
            x[ag.edge_index(u, v).unwrap()] = 1.0;
        }
        x
    }

    #[test]
    fn single_cycle_is_clean() {
        let ag = AugmentedGraph::new(Graph::new(3, [(0, 1), (1, 2)]).unwrap()).unwrap();
        let s = ag.s();
        let x = point(&ag, &[(s, 0), (0, 1), (1, 2), (2, s)]);
        assert!(separate_integral(&ag, &x).unwrap().is_empty());
        assert!(separate_fractional(&ag, &x).unwrap().is_empty());
    }

    fn k2_plus_k3() -> AugmentedGraph {
        // {0,1} edge, triangle {2,3,4}, linked by edge 1–2.
        AugmentedGraph::new(Graph::new(5, [(0, 1), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()).unwrap()
    }

    #[test]
    fn detached_triangle_is_cut() {
        let ag = k2_plus_k3();
        let s = ag.s();
        let x = point(&ag, &[(s, 0), (0, 1), (1, s), (2, 3), (3, 4), (2, 4)]);
        let cuts = separate_integral(&ag, &x).unwrap();
        assert_eq!(cuts, vec![CutConstraint::new(2, vec![2, 3, 4])]);
        let frac = separate_fractional(&ag, &x).unwrap();
        assert_eq!(frac.len(), 1);
        assert_eq!(frac[0].set, vec![2, 3, 4]);
        assert!(frac[0].violation(&ag, &x) >= 2.0 - 1e-9);
    }

    #[test]
    fn branching_component_is_cut() {
        // Node 0 touches 1, 2 and s; the second star edge goes to 3.
        let g = Graph::new(4, [(0, 1), (0, 2), (2, 3)]).unwrap();
        let ag = AugmentedGraph::new(g).unwrap();
        let s = ag.s();
        let x = point(&ag, &[(0, 1), (0, 2), (0, s), (3, s)]);
        let cuts = separate_integral(&ag, &x).unwrap();
        assert_eq!(cuts, vec![CutConstraint::new(0, vec![0, 1, 2])]);
        assert!(cuts[0].violation(&ag, &x) > 1.5);
        assert!(!separate_fractional(&ag, &x).unwrap().is_empty());
    }

    #[test]
    fn no_active_base_edges_means_no_cut() {
        let ag = k2_plus_k3();
        let s = ag.s();
        let x = point(&ag, &[(s, 0), (s, 3)]);
        assert!(separate_integral(&ag, &x).unwrap().is_empty());
    }

    #[test]
    fn fractional_input_is_rejected_by_integral_separation() {
        let ag = k2_plus_k3();
        let mut x = vec![0.0; ag.edge_count()];
        x[0] = 0.5;
        assert_eq!(separate_integral(&ag, &x), Err(SeparationError::Fractional { edge: 0, value: 0.5 }));
    }

    #[test]
    fn half_star_edges_with_detached_triangle() {
        // Two disjoint triangles; s sends 0.5 + 0.5 into the first one, the
        // second one is fully selected.
        let g = Graph::new(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        let ag = AugmentedGraph::new(g).unwrap();
        let s = ag.s();
        let mut x = point(&ag, &[(3, 4), (3, 5), (4, 5)]);
        x[ag.edge_index(s, 0).unwrap()] = 0.5;
        x[ag.edge_index(s, 1).unwrap()] = 0.5;
        x[ag.edge_index(0, 1).unwrap()] = 0.5;
        let cuts = separate_fractional(&ag, &x).unwrap();
        assert!(cuts.iter().any(|c| c.set == vec![3, 4, 5]));
        // Independent check over all W with |W| <= 3.
        let mut best: f64 = 0.0;
        for a in 0..6 {
            for b in a..6 {
                for c in b..6 {
                    let mut set = vec![a, b, c];
                    set.dedup();
                    for &v in &set {
                        best = best.max(CutConstraint::new(v, set.clone()).violation(&ag, &x));
                    }
                }
            }
        }
        assert!(best > 1.0);
    }

    #[test]
    fn max_flow_examples() {
        // Unit capacities between v_L and v_R in theta(3) without s edges.
        let g = FamilySpec::Theta { l: 3 }.generate().unwrap();
        let ag = AugmentedGraph::new(g.clone()).unwrap();
        let mut x = vec![0.0; ag.edge_count()];
        for e in 0..g.edge_count() {
            x[e] = 1.0;
        }
        let asg = ActiveSubgraph::new(&ag, &x);
        let (f, side) = asg.max_flow(0, 1);
        assert!((f - 3.0).abs() < 1e-12);
        assert!((asg.boundary_capacity(&side) - f).abs() < 1e-12);

        // A path 0-1-2-s with capacities 0.5.
        let ag = AugmentedGraph::new(Graph::new(3, [(0, 1), (1, 2)]).unwrap()).unwrap();
        let s = ag.s();
        let mut x = vec![0.0; ag.edge_count()];
        for (u, v) in [(0, 1), (1, 2), (2, s)] {
            x[ag.edge_index(u, v).unwrap()] = 0.5;
        }
        let asg = ActiveSubgraph::new(&ag, &x);
        assert!((asg.max_flow(0, s).0 - 0.5).abs() < 1e-12);

        // Two disjoint routes to s with capacities 1 and 0.5.
        x[ag.edge_index(0, s).unwrap()] = 1.0;
        let asg = ActiveSubgraph::new(&ag, &x);
        let (f, side) = asg.max_flow(0, s);
        assert!((f - 1.5).abs() < 1e-12);
        assert!((asg.boundary_capacity(&side) - f).abs() < 1e-12);
    }

    #[test]
    fn pool_deduplicates() {
        let mut pool = CutPool::new();
        let c = CutConstraint::new(1, vec![2, 1]);
        assert!(pool.insert(&c));
        assert!(!pool.insert(&CutConstraint::new(1, vec![1, 2])));
        assert_eq!(pool.len(), 1);
    }

    fn graph_and_point() -> impl Strategy<Value = (Graph, Vec<f64>)> {
        (2usize..=7).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (proptest::collection::vec(any::<bool>(), pairs), proptest::collection::vec(0u8..=4, pairs + n))
                .prop_map(move |(bits, vals)| {
                    let mut edges = Vec::new();
                    let mut it = bits.into_iter();
                    for u in 0..n {
                        for v in u + 1..n {
                            if it.next().unwrap() {
                                edges.push((u, v));
                            }
                        }
                    }
                    let g = Graph::new(n, edges).unwrap();
                    let x: Vec<f64> = vals.iter().take(g.edge_count() + n).map(|&k| k as f64 / 4.0).collect();
                    (g, x)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn fractional_separation_is_exact((g, x) in graph_and_point()) {
            let ag = AugmentedGraph::new(g).unwrap();
            let cuts = separate_fractional(&ag, &x).unwrap();
            let brute = brute_force_max_violation(&ag, &x);
            prop_assert_eq!(!cuts.is_empty(), brute > VIOLATION_TOL, "brute {}", brute);
            for c in &cuts {
                prop_assert!(c.violation(&ag, &x) > VIOLATION_TOL);
            }
        }

        #[test]
        fn max_flow_equals_min_cut((g, x) in graph_and_point()) {
            let ag = AugmentedGraph::new(g).unwrap();
            let asg = ActiveSubgraph::new(&ag, &x);
            for v in 0..ag.base().node_count() {
                let (f, side) = asg.max_flow(v, ag.s());
                prop_assert!((asg.boundary_capacity(&side) - f).abs() < 1e-9);
            }
        }
    }
}
