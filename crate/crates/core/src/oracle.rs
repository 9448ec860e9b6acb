//! Exhaustive reference solver: grows induced paths node by node.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search budget of {0} extension steps exhausted")]
    BudgetExceeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Number of edges on the longest induced path.
    pub opt_value: usize,
    pub witness: Vec<usize>,
    /// Extension steps performed.
    pub explored: u64,
}

struct Search<'a> {
    g: &'a Graph,
    budget: u64,
    explored: u64,
    /// Number of path nodes adjacent to each node.
    blocked: Vec<u32>,
    on_path: Vec<bool>,
    path: Vec<usize>,
    best: Vec<usize>,
}

impl Search<'_> {
    fn push(&mut self, v: usize) {
        self.on_path[v] = true;
        self.path.push(v);
        for &w in self.g.neighbors(v) {
            self.blocked[w] += 1;
        }
    }

    fn pop(&mut self) {
        let v = self.path.pop().expect("path is non-empty");
        self.on_path[v] = false;
        for &w in self.g.neighbors(v) {
            self.blocked[w] -= 1;
        }
    }

    /// Extends from the tip. A neighbour of the tip may join iff the tip is its
    /// only neighbour on the path.
    fn extend(&mut self) -> Result<(), OracleError> {
        self.explored += 1;
        if self.explored > self.budget {
            return Err(OracleError::BudgetExceeded(self.budget));
        }
        let first = self.path[0];
        let last = *self.path.last().expect("path is non-empty");
        if self.path.len() >= 2 && first < last && self.path.len() > self.best.len() {
            self.best = self.path.clone();
        }
        for i in 0..self.g.neighbors(last).len() {
            let w = self.g.neighbors(last)[i];
            if self.on_path[w] || self.blocked[w] != 1 {
                continue;
            }
            self.push(w);
            self.extend()?;
            self.pop();
        }
        Ok(())
    }
}

/// Exact longest induced path by exhaustive search. Each path is counted once,
/// from its smaller endpoint. Fails rather than guessing when more than
/// `budget` extension steps are needed.
pub fn longest_induced_path_exact(g: &Graph, budget: u64) -> Result<OracleResult, OracleError> {
    let n = g.node_count();
    let mut search = Search {
        g,
        budget,
        explored: 0,
        blocked: vec![0; n],
        on_path: vec![false; n],
        path: Vec::new(),
        best: Vec::new(),
    };
    for v in 0..n {
        search.push(v);
        search.extend()?;
        search.pop();
    }
    let mut witness = search.best;
    if witness.is_empty() && n > 0 {
        witness.push(0);
    }
    Ok(OracleResult { opt_value: witness.len().saturating_sub(1), witness, explored: search.explored })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::FamilySpec;
    use proptest::prelude::*;

    const BUDGET: u64 = 10_000_000;

    fn solve(spec: &str) -> OracleResult {
        let g = spec.parse::<FamilySpec>().unwrap().generate().unwrap();
        let r = longest_induced_path_exact(&g, BUDGET).unwrap();
        assert!(g.is_induced_path(&r.witness).unwrap());
        r
    }

    /// Independent check: every node subset whose induced subgraph is a path.
    fn subset_brute_force(g: &Graph) -> usize {
        let n = g.node_count();
        let mut best = 0;
        for mask in 1u32..(1 << n) {
            let nodes: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let sub = g.induced_subgraph(&nodes);
            let k = nodes.len();
            if sub.edge_count() == k - 1 && sub.is_connected() && (0..k).all(|v| sub.degree(v) <= 2) {
                best = best.max(k - 1);
            }
        }
        best
    }

    #[test]
    fn known_values() {
        assert_eq!(solve("path:n=7").opt_value, 6);
        assert_eq!(solve("complete:k=5").opt_value, 1);
        assert_eq!(solve("theta:l=5").opt_value, 3);
        assert_eq!(solve("star:l=4").opt_value, 2);
        assert_eq!(solve("path:n=1").opt_value, 0);
    }

    #[test]
    fn budget_is_reported() {
        let g = FamilySpec::Complete { k: 8 }.generate().unwrap();
        assert_eq!(longest_induced_path_exact(&g, 5), Err(OracleError::BudgetExceeded(5)));
    }

    #[test]
    fn karate_longest_path_has_nine_nodes() {
        let text = include_str!("../data/karate.edgelist");
        let g = crate::graph::parse_edge_list(text).unwrap().graph;
        let r = longest_induced_path_exact(&g, 1 << 40).unwrap();
        assert_eq!(r.opt_value, 8);
        assert_eq!(r.witness.len(), 9);
        assert!(g.is_induced_path(&r.witness).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn matches_subset_enumeration(n in 1usize..=10, seed in any::<u64>(), percent in 10u32..=70) {
            let g = FamilySpec::RandomConnected { n, percent, seed }.generate().unwrap();
            let r = longest_induced_path_exact(&g, BUDGET).unwrap();
            prop_assert_eq!(r.opt_value, subset_brute_force(&g));
            prop_assert!(g.is_induced_path(&r.witness).unwrap());
        }

        #[test]
        fn pendant_on_path_end_adds_one(n in 3usize..=10, seed in any::<u64>(), percent in 10u32..=50) {
            let g = FamilySpec::RandomConnected { n, percent, seed }.generate().unwrap();
            let r = longest_induced_path_exact(&g, BUDGET).unwrap();
            let tip = *r.witness.last().unwrap();
            let mut edges = g.edges().to_vec();
            edges.push((tip, n));
            let h = Graph::new(n + 1, edges).unwrap();
            prop_assert_eq!(longest_induced_path_exact(&h, BUDGET).unwrap().opt_value, r.opt_value + 1);
        }
    }
}
