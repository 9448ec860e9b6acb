//! Instance families: the small proof gadgets and the Barabási–Albert
//! benchmark graphs.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid parameters for {kind}: {reason}")]
    InvalidParameters { kind: &'static str, reason: String },
    #[error("cannot parse family spec {0:?}")]
    Syntax(String),
}

/// A generated instance family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    /// Path on `n` nodes.
    Path { n: usize },
    /// One center (node 0) with `leaves` leaves.
    Star { leaves: usize },
    /// Complete graph `K_k`.
    Complete { k: usize },
    /// `v_L = 0` and `v_R = 1` joined by `l` internally disjoint paths of
    /// length two (midpoints `2..l+2`), plus a pendant `v' = l + 2` on `v_R`.
    Theta { l: usize },
    /// Barabási–Albert preferential attachment with `d` edges per new node.
    BarabasiAlbert { n: usize, d: usize, seed: u64 },
    /// Complete multipartite graph with `k` parts of three nodes each.
    Tripartite { k: usize },
    /// Random spanning tree plus each remaining pair with probability
    /// `percent / 100`.
    RandomConnected { n: usize, percent: u32, seed: u64 },
}

impl FamilySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::Path { .. } => "path",
            FamilySpec::Star { .. } => "star",
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::Theta { .. } => "theta",
            FamilySpec::BarabasiAlbert { .. } => "ba",
            FamilySpec::Tripartite { .. } => "tripartite",
            FamilySpec::RandomConnected { .. } => "random",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match *self {
            FamilySpec::BarabasiAlbert { seed, .. } | FamilySpec::RandomConnected { seed, .. } => Some(seed),
            _ => None,
        }
    }

    /// Same family with a different seed; seedless families are unchanged.
    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            FamilySpec::BarabasiAlbert { n, d, .. } => FamilySpec::BarabasiAlbert { n, d, seed },
            FamilySpec::RandomConnected { n, percent, .. } => FamilySpec::RandomConnected { n, percent, seed },
            other => other,
        }
    }

    /// Parameter part of generated file names, e.g. `n20_d3`.
    pub fn param_tag(&self) -> String {
        match *self {
            FamilySpec::Path { n } => format!("n{n}"),
            FamilySpec::Star { leaves } => format!("l{leaves}"),
            FamilySpec::Complete { k } | FamilySpec::Tripartite { k } => format!("k{k}"),
            FamilySpec::Theta { l } => format!("l{l}"),
            FamilySpec::BarabasiAlbert { n, d, .. } => format!("n{n}_d{d}"),
            FamilySpec::RandomConnected { n, percent, .. } => format!("n{n}_p{percent}"),
        }
    }

    /// `<kind>_<params>_<seed>`; deterministic families use seed 0.
    pub fn instance_name(&self) -> String {
        format!("{}_{}_{}", self.kind(), self.param_tag(), self.seed().unwrap_or(0))
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let bad = |kind, reason: &str| Err(FamilyError::InvalidParameters { kind, reason: reason.to_string() });
        match *self {
            FamilySpec::Path { n: 0 } => bad("path", "n must be at least 1"),
            FamilySpec::Complete { k: 0 } => bad("complete", "k must be at least 1"),
            FamilySpec::Theta { l } if l < 3 => bad("theta", "l must be at least 3"),
            FamilySpec::BarabasiAlbert { n, d, .. } if d == 0 || d >= n => bad("ba", "requires 1 <= d < n"),
            FamilySpec::Tripartite { k: 0 } => bad("tripartite", "k must be at least 1"),
            FamilySpec::RandomConnected { n, percent, .. } if n == 0 || percent > 100 => {
                bad("random", "requires n >= 1 and percent <= 100")
            }
            _ => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<Graph, FamilyError> {
        self.validate()?;
        let g = match *self {
            FamilySpec::Path { n } => Graph::new(n, (1..n).map(|i| (i - 1, i))),
            FamilySpec::Star { leaves } => Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))),
            FamilySpec::Complete { k } => Graph::new(k, all_pairs(k)),
            FamilySpec::Theta { l } => {
                let mut edges = Vec::with_capacity(2 * l + 1);
                for mid in 2..l + 2 {
                    edges.push((0, mid));
                    edges.push((1, mid));
                }
                edges.push((1, l + 2));
                Graph::new(l + 3, edges)
            }
            FamilySpec::BarabasiAlbert { n, d, seed } => Graph::new(n, barabasi_albert_edges(n, d, seed)),
            FamilySpec::Tripartite { k } => {
                let n = 3 * k;
                Graph::new(n, all_pairs(n).into_iter().filter(|&(u, v)| u / 3 != v / 3))
            }
            FamilySpec::RandomConnected { n, percent, seed } => Graph::new(n, random_connected_edges(n, percent, seed)),
        };
        Ok(g.expect("generators emit valid edges"))
    }
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

/// Start with `d` isolated seed nodes; every later node attaches to `d`
/// distinct earlier nodes drawn with probability proportional to degree
/// (colliding draws are redrawn). The first new node has no positive-degree
/// targets yet and attaches to all seeds.
fn barabasi_albert_edges(n: usize, d: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity((n - d) * d);
    // One entry per edge endpoint: uniform draws are degree-proportional.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * (n - d) * d);
    let mut chosen = Vec::with_capacity(d);
    for v in d..n {
        chosen.clear();
        if endpoints.is_empty() {
            chosen.extend(0..d);
        } else {
            while chosen.len() < d {
                let t = endpoints[rng.gen_range(0..endpoints.len())];
                if !chosen.contains(&t) {
                    chosen.push(t);
                }
            }
        }
        for &t in &chosen {
            edges.push((t, v));
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    edges
}

fn random_connected_edges(n: usize, percent: u32, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for (u, v) in all_pairs(n) {
        if rng.gen_range(0..100) < percent {
            edges.push((u, v));
        }
    }
    edges
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Path { n } => write!(f, "path:n={n}"),
            FamilySpec::Star { leaves } => write!(f, "star:l={leaves}"),
            FamilySpec::Complete { k } => write!(f, "complete:k={k}"),
            FamilySpec::Theta { l } => write!(f, "theta:l={l}"),
            FamilySpec::BarabasiAlbert { n, d, seed } => write!(f, "ba:n={n},d={d},seed={seed}"),
            FamilySpec::Tripartite { k } => write!(f, "tripartite:k={k}"),
            FamilySpec::RandomConnected { n, percent, seed } => write!(f, "random:n={n},p={percent},seed={seed}"),
        }
    }
}

/// Parses `kind:key=value,...`, e.g. `ba:n=20,d=3,seed=7` or `theta:l=4`.
impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || FamilyError::Syntax(s.to_string());
        let (kind, params) = s.split_once(':').unwrap_or((s, ""));
        let mut values = std::collections::HashMap::new();
        for item in params.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(syntax)?;
            let v: u64 = v.trim().parse().map_err(|_| syntax())?;
            values.insert(k.trim().to_string(), v);
        }
        let get = |key: &str| values.get(key).copied().ok_or_else(syntax);
        let seed = values.get("seed").copied().unwrap_or(0);
        let spec = match kind.trim() {
            "path" => FamilySpec::Path { n: get("n")? as usize },
            "star" => FamilySpec::Star { leaves: get("l")? as usize },
            "complete" => FamilySpec::Complete { k: get("k")? as usize },
            "theta" => FamilySpec::Theta { l: get("l")? as usize },
            "ba" => FamilySpec::BarabasiAlbert { n: get("n")? as usize, d: get("d")? as usize, seed },
            "tripartite" => FamilySpec::Tripartite { k: get("k")? as usize },
            "random" => FamilySpec::RandomConnected {
                n: get("n")? as usize,
                percent: get("p")? as u32,
                seed,
            },
            _ => return Err(syntax()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_three_has_six_nodes_seven_edges() {
        let g = FamilySpec::Theta { l: 3 }.generate().unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (6, 7));
        // v', v_R, first midpoint, v_L
        assert!(g.is_induced_path(&[5, 1, 2, 0]).unwrap());
        assert_eq!(g.diameter().unwrap(), 3);
    }

    #[test]
    fn small_families() {
        let star = FamilySpec::Star { leaves: 3 }.generate().unwrap();
        assert_eq!((star.node_count(), star.edge_count()), (4, 3));
        let k4 = FamilySpec::Complete { k: 4 }.generate().unwrap();
        assert_eq!(k4.edge_count(), 6);
        let t = FamilySpec::Tripartite { k: 3 }.generate().unwrap();
        assert_eq!((t.node_count(), t.edge_count()), (9, 27));
    }

    #[test]
    fn ba_edge_count_and_connectivity() {
        let g = FamilySpec::BarabasiAlbert { n: 20, d: 3, seed: 0 }.generate().unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (20, 51));
        assert!(g.is_connected());
        for seed in 0..30 {
            for &(n, d) in &[(20, 3), (30, 3), (40, 3), (40, 2), (12, 2)] {
                let g = FamilySpec::BarabasiAlbert { n, d, seed }.generate().unwrap();
                assert_eq!(g.edge_count(), (n - d) * d);
                assert!(g.is_connected());
            }
        }
    }

    #[test]
    fn ba_is_seed_deterministic() {
        let a = FamilySpec::BarabasiAlbert { n: 30, d: 3, seed: 11 }.generate().unwrap();
        let b = FamilySpec::BarabasiAlbert { n: 30, d: 3, seed: 11 }.generate().unwrap();
        let c = FamilySpec::BarabasiAlbert { n: 30, d: 3, seed: 12 }.generate().unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(FamilySpec::Theta { l: 2 }.generate().is_err());
        assert!(FamilySpec::BarabasiAlbert { n: 3, d: 3, seed: 0 }.generate().is_err());
        assert!(FamilySpec::BarabasiAlbert { n: 3, d: 0, seed: 0 }.generate().is_err());
        assert!("theta:l=2".parse::<FamilySpec>().is_err());
        assert!("blob:n=2".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn spec_strings_round_trip() {
        for spec in [
            FamilySpec::Path { n: 5 },
            FamilySpec::Star { leaves: 4 },
            FamilySpec::Complete { k: 6 },
            FamilySpec::Theta { l: 7 },
            FamilySpec::BarabasiAlbert { n: 20, d: 3, seed: 9 },
            FamilySpec::Tripartite { k: 3 },
            FamilySpec::RandomConnected { n: 10, percent: 30, seed: 2 },
        ] {
            assert_eq!(spec.to_string().parse::<FamilySpec>().unwrap(), spec);
        }
        assert_eq!(FamilySpec::BarabasiAlbert { n: 20, d: 3, seed: 4 }.instance_name(), "ba_n20_d3_4");
    }
}
