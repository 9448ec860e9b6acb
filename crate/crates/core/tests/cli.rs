use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use indpath::cli::{read_records, RunStatus, CSV_COLUMNS};
use indpath::graph::parse_edge_list;
use indpath::oracle::longest_induced_path_exact;

fn indpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indpath"))
        .args(args)
        .env_remove("INDPATH_TIME_LIMIT")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_karate_reports_nine_node_path() {
    let karate = data("karate.edgelist");
    let o = indpath(&["solve", "--model", "cut", "--node-vars", "--format", "json", karate.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "optimal");
    assert_eq!(v["opt"], 8);
    assert_eq!(v["path_nodes"], 9);
    let path: Vec<usize> = serde_json::from_value(v["path"].clone()).unwrap();
    let g = parse_edge_list(&fs::read_to_string(&karate).unwrap()).unwrap().graph;
    assert!(g.is_induced_path(&path).unwrap());
}

#[test]
fn solve_walk_on_star_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("star3.edgelist");
    fs::write(&file, "0 1\n0 2\n0 3\n").unwrap();
    let o = indpath(&["solve", "--model", "walk", "--format", "csv", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let recs = read_records(&o.stdout[..]).unwrap();
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0].opt, Some(2));
    assert_eq!(recs[0].instance, "star3");
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(indpath(&["solve", "--model", "cut", "missing.edgelist"]).status.code(), Some(1));
    assert_eq!(indpath(&["solve", "--no-such-flag", "x"]).status.code(), Some(1));
    assert_eq!(indpath(&["solve", "--model", "tree", "--family", "path:n=3"]).status.code(), Some(1));
    assert_eq!(indpath(&["frobnicate"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.edgelist");
    fs::write(&bad, "0 1\n1 x\n").unwrap();
    let o = indpath(&["solve", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let split = dir.path().join("split.edgelist");
    fs::write(&split, "0 1\n2 3\n").unwrap();
    assert_eq!(indpath(&["solve", split.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(indpath(&["generate", "theta", "--l", "2"]).status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    assert_eq!(indpath(&["--help"]).status.code(), Some(0));
}

#[test]
fn timeout_exits_two_with_valid_incumbent() {
    let o = indpath(&["solve", "--family", "ba:n=60,d=3,seed=2", "--time-limit", "0.01", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "timeout");
    assert!(v["opt"].as_u64().unwrap() >= 1);
    assert!(v["dual_bound"].as_u64().unwrap() >= v["opt"].as_u64().unwrap());
}

#[test]
fn time_limit_env_default_applies() {
    let o = Command::new(env!("CARGO_BIN_EXE_indpath"))
        .args(["solve", "--family", "ba:n=60,d=3,seed=2"])
        .env("INDPATH_TIME_LIMIT", "0.01")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_empty_manifest_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("empty.toml");
    fs::write(&manifest, "").unwrap();
    let o = indpath(&["bench", manifest.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("{}\n", CSV_COLUMNS.join(",")));
}

#[test]
fn bench_rows_follow_manifest_order_and_match_oracle() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(data("karate.edgelist"), dir.path().join("karate.edgelist")).unwrap();
    let manifest = dir.path().join("m.toml");
    fs::write(
        &manifest,
        r#"
time_limit = 300.0

[[instance]]
family = "ba:n=12,d=2"
seeds = "0..2"

[[instance]]
file = "missing.edgelist"
configs = ["C_{int}"]

[[instance]]
family = "theta:l=4"
configs = ["F", "W", "C^{n}_{frac}"]
"#,
    )
    .unwrap();
    let o = indpath(&["bench", "--jobs", "3", manifest.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let recs = read_records(&o.stdout[..]).unwrap();
    assert_eq!(recs.len(), 3 * 8 + 1 + 3);
    for (i, r) in recs[..24].iter().enumerate() {
        assert_eq!(r.seed, Some(i as u64 / 8));
        assert_eq!(r.m, 20);
        let g = format!("ba:n=12,d=2,seed={}", i / 8).parse::<indpath::generators::FamilySpec>().unwrap();
        let expected = longest_induced_path_exact(&g.generate().unwrap(), 1 << 30).unwrap().opt_value;
        assert_eq!((r.status, r.opt), (RunStatus::Optimal, Some(expected)), "{r:?}");
    }
    assert_eq!(recs[24].status, RunStatus::Error);
    assert_eq!(recs[24].instance, "missing");
    let theta: Vec<String> = recs[25..].iter().map(|r| r.config.to_string()).collect();
    assert_eq!(theta, ["F", "W", "C^{n}_{frac}"]);
    assert!(recs[25..].iter().all(|r| r.opt == Some(3)));
}

#[test]
fn bench_rejects_malformed_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.toml");
    fs::write(&manifest, "[[instance]]\nfamily = \"ba:n=5,d=2\"\nconfigs = [\"Q\"]\n").unwrap();
    assert_eq!(indpath(&["bench", manifest.to_str().unwrap()]).status.code(), Some(1));
    fs::write(&manifest, "[[instance]]\n").unwrap();
    assert_eq!(indpath(&["bench", manifest.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn generate_writes_named_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = indpath(&["generate", "ba", "--n", "20", "--d", "3", "--seeds", "0..29", "--out", out]);
    assert_eq!(o.status.code(), Some(0));
    for seed in 0..30 {
        let text = fs::read_to_string(dir.path().join(format!("ba_n20_d3_{seed}.edgelist"))).unwrap();
        let g = parse_edge_list(&text).unwrap().graph;
        assert_eq!((g.node_count(), g.edge_count()), (20, 51));
        assert!(g.is_connected());
    }
    assert_eq!(indpath(&["generate", "theta", "--l", "3", "--out", out]).status.code(), Some(0));
    let theta = parse_edge_list(&fs::read_to_string(dir.path().join("theta_l3_0.edgelist")).unwrap()).unwrap().graph;
    assert_eq!((theta.node_count(), theta.edge_count()), (6, 7));
    assert_eq!(indpath(&["generate", "complete", "--k", "4", "--out", out]).status.code(), Some(0));
    let k4 = parse_edge_list(&fs::read_to_string(dir.path().join("complete_k4_0.edgelist")).unwrap()).unwrap().graph;
    assert_eq!((k4.node_count(), k4.edge_count()), (4, 6));
}

#[test]
fn analyze_reports_clique_effects() {
    let o = indpath(&[
        "analyze",
        "--family",
        "complete:k=6",
        "--baseline-bound",
        "5",
        "--clique-bound",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v[0]["root_lp"].as_f64().unwrap() >= 1.5 - 1e-6);
    assert!((v[0]["root_lp_cliques"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert_eq!(v[0]["max_clique"], 6);

    let o = indpath(&["analyze", "--family", "theta:l=4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v[0]["root_lp"].as_f64().unwrap() - v[0]["root_lp_cliques"].as_f64().unwrap()).abs() < 1e-9);
    assert_eq!(v[0]["opt"], 3);
}
