//! Clique enumeration: inclusion-maximal cliques via Bron–Kerbosch and all
//! cliques up to a size bound.

use crate::graph::Graph;

/// Sorted node set of a clique with at least two nodes.
pub type Clique = Vec<usize>;

/// All inclusion-maximal cliques of size at least 2, sorted lexicographically.
///
/// Outer loop follows a degeneracy ordering; each recursive call pivots on the
/// candidate covering most of `P`.
pub fn enumerate_maximal_cliques(g: &Graph) -> Vec<Clique> {
    let n = g.node_count();
    let order = degeneracy_order(g);
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut out = Vec::new();
    let mut r = Vec::new();
    for &v in &order {
        let (p, x): (Vec<usize>, Vec<usize>) = g.neighbors(v).iter().partition(|&&w| rank[w] > rank[v]);
        r.push(v);
        bron_kerbosch(g, &mut r, p, x, &mut out);
        r.pop();
    }
    out.retain(|c| c.len() >= 2);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(g: &Graph, r: &mut Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Clique>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| (p.iter().filter(|&&w| g.has_edge(u, w)).count(), std::cmp::Reverse(u)))
        .expect("p is non-empty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&w| !g.has_edge(pivot, w)).collect();
    for v in candidates {
        let np = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        let nx = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        r.push(v);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// Repeatedly removes a minimum-degree node (ties: lowest id).
fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).expect("nodes remain");
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    order
}

/// Every clique with `2 <= size <= k`, each once, sorted by size then
/// lexicographically.
pub fn enumerate_cliques_bounded(g: &Graph, k: usize) -> Vec<Clique> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    for v in 0..g.node_count() {
        let cand: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| w > v).collect();
        current.push(v);
        extend_bounded(g, k, &mut current, &cand, &mut out);
        current.pop();
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn extend_bounded(g: &Graph, k: usize, current: &mut Vec<usize>, cand: &[usize], out: &mut Vec<Clique>) {
    if current.len() >= 2 {
        out.push(current.clone());
    }
    if current.len() == k {
        return;
    }
    for (i, &v) in cand.iter().enumerate() {
        let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        current.push(v);
        extend_bounded(g, k, current, &next, out);
        current.pop();
    }
}

/// `⌈3^(n/3)⌉`, the largest possible number of maximal cliques on `n` nodes.
pub fn max_clique_count_bound(n: usize) -> f64 {
    3f64.powf(n as f64 / 3.0).ceil()
}

pub fn is_clique(g: &Graph, nodes: &[usize]) -> bool {
    nodes.iter().enumerate().all(|(i, &u)| {
        u < g.node_count() && nodes[i + 1..].iter().all(|&v| g.has_edge(u, v))
    })
}
