//! Undirected simple graphs, the star-augmented graph `G*`, and edge-list I/O.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: usize },
    #[error("self-loop on node {0}")]
    SelfLoopEdge(usize),
    #[error("edge ({u}, {v}) references a node outside 0..{n}")]
    NodeOutOfRange { u: usize, v: usize, n: usize },
    #[error("node {node} out of range for a graph with {n} nodes")]
    InvalidNode { node: usize, n: usize },
    #[error("node {0} appears more than once in the sequence")]
    DuplicateNode(usize),
    #[error("graph has {0} node(s); at least 2 are required")]
    Degenerate(usize),
    #[error("graph is disconnected: nodes {0} and {1} lie in different components")]
    Disconnected(usize, usize),
}

/// Undirected simple graph on nodes `0..n`.
///
/// Edges are stored canonically (`u < v`, sorted lexicographically), so two
/// graphs with the same edge set compare equal regardless of input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, collapsing duplicate edges. Self-loops and out-of-range
    /// endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        Self::with_duplicate_count(n, edges).map(|(g, _)| g)
    }

    /// Like [`Graph::new`] but also reports how many duplicate edges were dropped.
    pub fn with_duplicate_count(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<(Self, usize), GraphError> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::NodeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoopEdge(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        let before = canon.len();
        canon.dedup();
        let duplicates = before - canon.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok((Graph { n, edges: canon, adjacency }, duplicates))
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_position(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// BFS distances from `source`; `usize::MAX` marks unreachable nodes.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components as sorted node lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.bfs_distances(0).iter().all(|&d| d != usize::MAX)
    }

    /// Errors with a pair of separated nodes when the graph is disconnected.
    pub fn check_connected(&self) -> Result<(), GraphError> {
        if self.n <= 1 {
            return Ok(());
        }
        let dist = self.bfs_distances(0);
        match dist.iter().position(|&d| d == usize::MAX) {
            Some(v) => Err(GraphError::Disconnected(0, v)),
            None => Ok(()),
        }
    }

    /// Longest shortest-path distance over all node pairs.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        let mut best = 0;
        for s in 0..self.n {
            let dist = self.bfs_distances(s);
            for (v, &d) in dist.iter().enumerate() {
                if d == usize::MAX {
                    return Err(GraphError::Disconnected(s, v));
                }
                best = best.max(d);
            }
        }
        Ok(best)
    }

    /// Drops isolated nodes and relabels the rest densely. Returns the new
    /// graph and, for every new id, the original id.
    pub fn compact(&self) -> (Graph, Vec<usize>) {
        let kept: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self.edges.iter().map(|&(u, v)| (new_id[u], new_id[v]));
        let g = Graph::new(kept.len(), edges).expect("relabelled edges stay valid");
        (g, kept)
    }

    /// Subgraph induced by `nodes`, relabelled `0..nodes.len()` in the given order.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Graph {
        let index: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, &v) in nodes.iter().enumerate() {
            for &w in &self.adjacency[v] {
                if let Some(&j) = index.get(&w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        Graph::new(nodes.len(), edges).expect("induced subgraph edges stay valid")
    }

    /// True iff `G[nodes]` is exactly the path visiting `nodes` in order.
    pub fn is_induced_path(&self, nodes: &[usize]) -> Result<bool, GraphError> {
        let mut in_path = vec![false; self.n];
        for &v in nodes {
            if v >= self.n {
                return Err(GraphError::InvalidNode { node: v, n: self.n });
            }
            if in_path[v] {
                return Err(GraphError::DuplicateNode(v));
            }
            in_path[v] = true;
        }
        if nodes.is_empty() {
            return Ok(false);
        }
        if nodes.windows(2).any(|w| !self.has_edge(w[0], w[1])) {
            return Ok(false);
        }
        // Consecutive pairs give |W|-1 edges; any further induced edge is a chord.
        let induced: usize = nodes
            .iter()
            .map(|&v| self.adjacency[v].iter().filter(|&&w| in_path[w]).count())
            .sum::<usize>()
            / 2;
        Ok(induced == nodes.len() - 1)
    }

    /// Edge-list text: a `#` header with the node and edge counts, then one
    /// `u v` line per edge with `u < v`, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# nodes {} edges {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Result of parsing edge-list text.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub duplicate_edges: usize,
}

/// Parses whitespace-separated `u v` lines. Lines starting with `#` are
/// comments; a `# nodes N edges M` header fixes the node count so trailing
/// isolated nodes survive a round trip. Otherwise `n = 1 + max id`.
pub fn parse_edge_list(text: &str) -> Result<ParsedGraph, GraphError> {
    let mut edges = Vec::new();
    let mut declared_nodes: Option<usize> = None;
    let mut max_id: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let tokens: Vec<&str> = comment.split_whitespace().collect();
            if let ["nodes", n, ..] = tokens.as_slice() {
                if let Ok(n) = n.parse::<usize>() {
                    declared_nodes = Some(n);
                }
            }
            continue;
        }
        let mut fields = line.split_whitespace();
        let parse_id = |tok: Option<&str>| -> Result<usize, GraphError> {
            let tok = tok.ok_or_else(|| GraphError::Parse {
                line: line_no,
                message: "expected two node ids".into(),
            })?;
            tok.parse::<usize>().map_err(|_| GraphError::Parse {
                line: line_no,
                message: format!("invalid node id {tok:?}"),
            })
        };
        let u = parse_id(fields.next())?;
        let v = parse_id(fields.next())?;
        if let Some(extra) = fields.next() {
            return Err(GraphError::Parse {
                line: line_no,
                message: format!("unexpected trailing token {extra:?}"),
            });
        }
        if u == v {
            return Err(GraphError::SelfLoop { line: line_no, node: u });
        }
        max_id = Some(max_id.map_or(u.max(v), |m: usize| m.max(u).max(v)));
        edges.push((u, v));
    }
    let n = max_id.map_or(0, |m| m + 1).max(declared_nodes.unwrap_or(0));
    let (graph, duplicate_edges) = Graph::with_duplicate_count(n, edges)?;
    Ok(ParsedGraph { graph, duplicate_edges })
}

/// `G*`: the input graph plus a virtual node `s = n` adjacent to every node.
///
/// Variable indices follow [`AugmentedGraph::edges`]: the original edges in
/// canonical order, then the star edges `{v, s}` for `v = 0..n`.
#[derive(Debug, Clone)]
pub struct AugmentedGraph {
    base: Graph,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
}

impl AugmentedGraph {
    pub fn new(base: Graph) -> Result<Self, GraphError> {
        let n = base.node_count();
        if n < 2 {
            return Err(GraphError::Degenerate(n));
        }
        let mut edges = base.edges().to_vec();
        edges.extend((0..n).map(|v| (v, n)));
        let mut incident = vec![Vec::new(); n + 1];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        Ok(AugmentedGraph { base, edges, incident })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// Index of the virtual node.
    pub fn s(&self) -> usize {
        self.base.node_count()
    }

    /// Number of nodes of `G*`, i.e. `n + 1`.
    pub fn node_count(&self) -> usize {
        self.base.node_count() + 1
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of original edges; indices below this are in `E`.
    pub fn base_edge_count(&self) -> usize {
        self.base.edge_count()
    }

    pub fn is_star_edge(&self, e: usize) -> bool {
        e >= self.base.edge_count()
    }

    /// Index of the star edge `{v, s}`.
    pub fn star_edge(&self, v: usize) -> usize {
        self.base.edge_count() + v
    }

    /// Edge indices of `δ*(v)`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let s = self.s();
        if u == s && v < s {
            Some(self.star_edge(v))
        } else if v == s && u < s {
            Some(self.star_edge(u))
        } else {
            self.base.edge_position(u, v)
        }
    }

    /// Edges of `G*` sharing an endpoint with edge `e`, excluding `e`.
    pub fn adjacent_edges(&self, e: usize) -> Vec<usize> {
        let (u, v) = self.edges[e];
        let mut out: Vec<usize> = self.incident[u]
            .iter()
            .chain(self.incident[v].iter())
            .copied()
            .filter(|&f| f != e)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn other_endpoint(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }
}
