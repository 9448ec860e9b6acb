//! Command-line front end: single solves, manifest-driven benchmarks, root
//! relaxation analysis and instance generation.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bnb::{root_relaxation, solve, Limits, SolveError, SolveResult, SolveStatus};
use crate::cliques::enumerate_maximal_cliques;
use crate::generators::{FamilyError, FamilySpec};
use crate::graph::{parse_edge_list, Graph, GraphError};
use crate::models::{Formulation, ModelConfig, ModelError};

/// Exit code for a proven optimum (and for commands without a solve status).
pub const EXIT_OK: i32 = 0;
/// Exit code for bad input: unknown flags, unreadable files, invalid graphs.
pub const EXIT_INPUT_ERROR: i32 = 1;
/// Exit code when the time limit stopped the search.
pub const EXIT_TIMEOUT: i32 = 2;

/// Fixed column order of benchmark CSV output.
pub const CSV_COLUMNS: [&str; 11] =
    ["instance", "n", "m", "config", "status", "opt", "root_lp", "bnb_nodes", "cuts", "time_s", "seed"];

const DEFAULT_TIME_LIMIT_SECS: &str = "1200";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Graph { path: String, source: GraphError },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("manifest {path}: {message}")]
    Manifest { path: PathBuf, message: String },
    #[error("invalid seed range {0:?}; expected A..B (inclusive) or a single seed")]
    SeedRange(String),
    #[error("invalid time limit {0}")]
    TimeLimit(f64),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

#[derive(Debug, Parser)]
#[command(name = "indpath", version, about = "Exact longest induced path solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance and print its run record.
    Solve(SolveArgs),
    /// Run every (instance, configuration) pair of a manifest; CSV to stdout.
    Bench(BenchArgs),
    /// Compare cut-model root relaxations with and without clique rows.
    Analyze(AnalyzeArgs),
    /// Write generated instances as edge-list files.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Edge-list file.
    #[arg(required_unless_present = "family", conflicts_with = "family")]
    pub input: Option<PathBuf>,
    /// Generated instance instead of a file, e.g. `ba:n=20,d=3,seed=4`.
    #[arg(long)]
    pub family: Option<FamilySpec>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, default_value = "cut")]
    pub model: Formulation,
    /// Separate cut rows at fractional LP points too (cut model).
    #[arg(long)]
    pub frac_sep: bool,
    /// Add node variables and branch on them.
    #[arg(long)]
    pub node_vars: bool,
    /// Add one row per maximal clique.
    #[arg(long)]
    pub cliques: bool,
    /// Add rows for all cliques with at most K nodes (implies --cliques).
    #[arg(long, value_name = "K")]
    pub clique_bound: Option<usize>,
    /// Fixed walk horizon T; by default the walk model raises T from the diameter.
    #[arg(long, value_name = "T")]
    pub horizon: Option<usize>,
    /// Wall-clock limit in seconds.
    #[arg(long, value_name = "S", env = "INDPATH_TIME_LIMIT", default_value = DEFAULT_TIME_LIMIT_SECS)]
    pub time_limit: f64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
    #[command(flatten)]
    pub instance: InstanceArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// TOML manifest listing instances and configurations.
    pub manifest: PathBuf,
    /// Worker threads; each runs whole solves.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Default per-solve limit when the manifest sets none.
    #[arg(long, value_name = "S", env = "INDPATH_TIME_LIMIT", default_value = DEFAULT_TIME_LIMIT_SECS)]
    pub time_limit: f64,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Edge-list files.
    pub inputs: Vec<PathBuf>,
    /// Generated instances, e.g. `complete:k=6`.
    #[arg(long = "family")]
    pub families: Vec<FamilySpec>,
    /// Clique rows for all cliques up to K nodes instead of maximal cliques.
    #[arg(long, value_name = "K")]
    pub clique_bound: Option<usize>,
    /// Give the baseline clique rows up to K nodes instead of none.
    #[arg(long, value_name = "K")]
    pub baseline_bound: Option<usize>,
    /// Limit for computing OPT; the column is empty on timeout.
    #[arg(long, value_name = "S", env = "INDPATH_TIME_LIMIT", default_value = DEFAULT_TIME_LIMIT_SECS)]
    pub time_limit: f64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Family: path, star, complete, theta, ba, tripartite or random.
    pub kind: String,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub l: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    /// Edge probability in percent (random family).
    #[arg(long)]
    pub p: Option<u64>,
    /// Inclusive seed range `A..B`, or one seed.
    #[arg(long, default_value = "0")]
    pub seeds: String,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Optimal,
    Timeout,
    Infeasible,
    /// The solve failed; the row carries no result.
    Error,
}

impl From<SolveStatus> for RunStatus {
    fn from(s: SolveStatus) -> Self {
        match s {
            SolveStatus::Optimal => RunStatus::Optimal,
            SolveStatus::Timeout => RunStatus::Timeout,
            SolveStatus::Infeasible => RunStatus::Infeasible,
        }
    }
}

/// One solve, as written to benchmark CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    #[serde(with = "config_string")]
    pub config: ModelConfig,
    pub status: RunStatus,
    /// Edges on the best path found.
    pub opt: Option<usize>,
    pub root_lp: Option<f64>,
    pub bnb_nodes: usize,
    pub cuts: usize,
    pub time_s: f64,
    pub seed: Option<u64>,
}

mod config_string {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::models::ModelConfig;

    pub fn serialize<S: Serializer>(cfg: &ModelConfig, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(cfg)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ModelConfig, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

impl RunRecord {
    pub fn from_result(inst: &Instance, config: ModelConfig, r: &SolveResult) -> Self {
        RunRecord {
            instance: inst.name.clone(),
            n: inst.graph.node_count(),
            m: inst.graph.edge_count(),
            config,
            status: r.status.into(),
            opt: Some(r.opt_value),
            root_lp: Some(r.stats.root_lp_value),
            bnb_nodes: r.stats.bnb_nodes,
            cuts: r.stats.cuts_added,
            time_s: r.stats.wall_time_seconds,
            seed: inst.seed,
        }
    }

    fn failed(name: &str, n: usize, m: usize, config: ModelConfig, seed: Option<u64>) -> Self {
        RunRecord {
            instance: name.to_string(),
            n,
            m,
            config,
            status: RunStatus::Error,
            opt: None,
            root_lp: None,
            bnb_nodes: 0,
            cuts: 0,
            time_s: 0.0,
            seed,
        }
    }
}

/// JSON report of a single solve: the record plus the certificate path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    #[serde(flatten)]
    pub record: RunRecord,
    pub dual_bound: usize,
    pub path_nodes: usize,
    pub path: Vec<usize>,
    pub walk_horizon: Option<usize>,
}

/// A named graph ready to solve.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
    pub seed: Option<u64>,
}

impl Instance {
    pub fn from_family(spec: FamilySpec) -> Result<Self, CliError> {
        Ok(Instance { name: spec.instance_name(), graph: spec.generate()?, seed: spec.seed() })
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        let parsed = parse_edge_list(&text)
            .map_err(|source| CliError::Graph { path: path.display().to_string(), source })?;
        let name = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        Ok(Instance { name, graph: parsed.graph, seed: None })
    }
}

/// Parses `A..B` (inclusive), `A..=B` or a single seed.
pub fn parse_seed_range(text: &str) -> Result<Vec<u64>, CliError> {
    let bad = || CliError::SeedRange(text.to_string());
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    match text.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![num(text)?]),
    }
}

fn limits(secs: f64) -> Result<Limits, CliError> {
    if !(secs.is_finite() && secs > 0.0) {
        return Err(CliError::TimeLimit(secs));
    }
    Ok(Limits::with_time_limit(secs))
}

/// Parses arguments and runs the command; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

pub fn run(command: Command) -> Result<i32, CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Solve(args) => cmd_solve(&args, &mut out),
        Command::Bench(args) => cmd_bench(&args, &mut out),
        Command::Analyze(args) => cmd_analyze(&args, &mut out),
        Command::Generate(args) => cmd_generate(&args, &mut out),
    }
}

pub fn solve_config(args: &SolveArgs) -> Result<ModelConfig, CliError> {
    let mut cfg = ModelConfig::new(args.model)
        .with_node_vars(args.node_vars)
        .with_cliques(args.cliques)
        .with_frac_sep(args.frac_sep);
    if args.clique_bound.is_some() {
        cfg = cfg.with_clique_bound(args.clique_bound);
    }
    cfg.walk_horizon = args.horizon;
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_solve(args: &SolveArgs, out: &mut impl Write) -> Result<i32, CliError> {
    let cfg = solve_config(args)?;
    let limits = limits(args.time_limit)?;
    let inst = match (&args.instance.input, args.instance.family) {
        (_, Some(spec)) => Instance::from_family(spec)?,
        (Some(path), None) => Instance::from_file(path)?,
        (None, None) => return Err(CliError::Usage("an input file or --family is required".into())),
    };
    let r = solve(&inst.graph, &cfg, &limits)?;
    let report = SolveReport {
        record: RunRecord::from_result(&inst, cfg, &r),
        dual_bound: r.dual_bound,
        path_nodes: r.path.len(),
        path: r.path.clone(),
        walk_horizon: r.walk_horizon,
    };
    match args.format {
        OutputFormat::Text => out.write_all(text_report(&report).as_bytes())?,
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => write_records(out, std::slice::from_ref(&report.record))?,
    }
    Ok(match r.status {
        SolveStatus::Optimal | SolveStatus::Infeasible => EXIT_OK,
        SolveStatus::Timeout => EXIT_TIMEOUT,
    })
}

fn text_report(r: &SolveReport) -> String {
    let rec = &r.record;
    let mut s = String::new();
    let _ = writeln!(s, "instance   {}", rec.instance);
    let _ = writeln!(s, "graph      {} nodes, {} edges", rec.n, rec.m);
    let _ = writeln!(s, "config     {}", rec.config);
    let _ = writeln!(s, "status     {:?}", rec.status);
    let _ = writeln!(s, "opt        {} edges ({} nodes)", rec.opt.unwrap_or(0), r.path_nodes);
    let _ = writeln!(s, "dual bound {}", r.dual_bound);
    if let Some(t) = r.walk_horizon {
        let _ = writeln!(s, "horizon    {t}");
    }
    let _ = writeln!(s, "root lp    {:.6}", rec.root_lp.unwrap_or(0.0));
    let _ = writeln!(s, "bnb nodes  {}", rec.bnb_nodes);
    let _ = writeln!(s, "cuts       {}", rec.cuts);
    let _ = writeln!(s, "time       {:.3}s", rec.time_s);
    let path: Vec<String> = r.path.iter().map(usize::to_string).collect();
    let _ = writeln!(s, "path       {}", path.join(" "));
    s
}

/// Writes the header and one row per record.
pub fn write_records(out: &mut impl Write, records: &[RunRecord]) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads CSV produced by [`write_records`], checking the header.
pub fn read_records(input: impl io::Read) -> Result<Vec<RunRecord>, CliError> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    if header.iter().ne(CSV_COLUMNS) {
        return Err(CliError::Usage(format!("unexpected CSV header {:?}", header.iter().collect::<Vec<_>>())));
    }
    rdr.deserialize().map(|r| r.map_err(CliError::from)).collect()
}

/// Benchmark manifest. Example:
///
/// ```toml
/// configs = ["C_{int}", "C^{n}_{int}"]   # default: all eight cut variants
/// time_limit = 60.0
///
/// [[instance]]
/// family = "ba:n=20,d=3"
/// seeds = "0..29"
///
/// [[instance]]
/// file = "karate.edgelist"             # relative to the manifest
/// configs = ["C^{n}_{frac}"]
/// ```
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub configs: Option<Vec<String>>,
    pub time_limit: Option<f64>,
    #[serde(default, rename = "instance")]
    pub instances: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub file: Option<PathBuf>,
    pub family: Option<String>,
    pub seeds: Option<String>,
    pub configs: Option<Vec<String>>,
}

enum Source {
    Loaded(Instance),
    Failed { name: String },
}

struct Job<'a> {
    source: &'a Source,
    config: ModelConfig,
}

fn parse_configs(names: &[String], path: &Path) -> Result<Vec<ModelConfig>, CliError> {
    names
        .iter()
        .map(|c| {
            let cfg: ModelConfig = c.parse().map_err(|e: ModelError| manifest_error(path, e.to_string()))?;
            cfg.validate().map_err(|e| manifest_error(path, e.to_string()))?;
            Ok(cfg)
        })
        .collect()
}

fn manifest_error(path: &Path, message: String) -> CliError {
    CliError::Manifest { path: path.to_path_buf(), message }
}

/// Runs every job of a manifest and returns the records in manifest order.
pub fn run_manifest(path: &Path, jobs: usize, default_limit: f64) -> Result<Vec<RunRecord>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let manifest: Manifest = toml::from_str(&text).map_err(|e| manifest_error(path, e.to_string()))?;
    let limits = limits(manifest.time_limit.unwrap_or(default_limit))?;
    let base_dir = path.parent().unwrap_or(Path::new("."));
    let default_configs = match &manifest.configs {
        Some(names) => parse_configs(names, path)?,
        None => ModelConfig::all_cut_variants(),
    };

    let mut sources: Vec<(Source, Vec<ModelConfig>)> = Vec::new();
    for entry in &manifest.instances {
        let configs = match &entry.configs {
            Some(names) => parse_configs(names, path)?,
            None => default_configs.clone(),
        };
        match (&entry.file, &entry.family) {
            (Some(file), None) => {
                if entry.seeds.is_some() {
                    return Err(manifest_error(path, "seeds apply only to family entries".into()));
                }
                let file = base_dir.join(file);
                let source = match Instance::from_file(&file) {
                    Ok(inst) => Source::Loaded(inst),
                    Err(e) => {
                        eprintln!("warning: {e}");
                        let name = file.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
                        Source::Failed { name }
                    }
                };
                sources.push((source, configs));
            }
            (None, Some(family)) => {
                let spec: FamilySpec = family.parse()?;
                let seeds = match &entry.seeds {
                    Some(range) => parse_seed_range(range)?,
                    None => vec![spec.seed().unwrap_or(0)],
                };
                for seed in seeds {
                    sources.push((Source::Loaded(Instance::from_family(spec.with_seed(seed))?), configs.clone()));
                }
            }
            _ => return Err(manifest_error(path, "each instance needs exactly one of `file` or `family`".into())),
        }
    }

    let work: Vec<Job> = sources
        .iter()
        .flat_map(|(source, configs)| configs.iter().map(move |&config| Job { source, config }))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(pool.install(|| work.par_iter().map(|job| run_job(job, &limits)).collect()))
}

fn run_job(job: &Job, limits: &Limits) -> RunRecord {
    match job.source {
        Source::Failed { name } => RunRecord::failed(name, 0, 0, job.config, None),
        Source::Loaded(inst) => match solve(&inst.graph, &job.config, limits) {
            Ok(r) => RunRecord::from_result(inst, job.config, &r),
            Err(e) => {
                eprintln!("warning: {} {}: {e}", inst.name, job.config);
                let (n, m) = (inst.graph.node_count(), inst.graph.edge_count());
                RunRecord::failed(&inst.name, n, m, job.config, inst.seed)
            }
        },
    }
}

pub fn cmd_bench(args: &BenchArgs, out: &mut impl Write) -> Result<i32, CliError> {
    let records = run_manifest(&args.manifest, args.jobs, args.time_limit)?;
    write_records(out, &records)?;
    Ok(EXIT_OK)
}

/// Root relaxation comparison for one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeRecord {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    /// Optimum in edges; empty when the solve timed out.
    pub opt: Option<usize>,
    pub root_lp: f64,
    pub root_lp_cliques: f64,
    /// `(root_lp - root_lp_cliques) / root_lp`.
    pub improvement: f64,
    pub max_clique: usize,
    /// A root loop stopped at its round cap, so a value is only an upper bound.
    pub flagged: bool,
}

pub fn analyze_instance(
    inst: &Instance,
    baseline_bound: Option<usize>,
    clique_bound: Option<usize>,
    limits: &Limits,
) -> Result<AnalyzeRecord, CliError> {
    let g = &inst.graph;
    let mut baseline = ModelConfig::cut().with_frac_sep(true);
    if baseline_bound.is_some() {
        baseline = baseline.with_clique_bound(baseline_bound);
    }
    let strengthened = ModelConfig::cut().with_frac_sep(true).with_cliques(true).with_clique_bound(clique_bound);
    let base = root_relaxation(g, &baseline)?;
    let with = root_relaxation(g, &strengthened)?;
    let r = solve(g, &ModelConfig::cut().with_node_vars(true).with_frac_sep(true), limits)?;
    let max_clique = enumerate_maximal_cliques(g).iter().map(Vec::len).max().unwrap_or(g.node_count().min(1));
    let improvement = if base.value.abs() > 1e-12 { (base.value - with.value) / base.value } else { 0.0 };
    Ok(AnalyzeRecord {
        instance: inst.name.clone(),
        n: g.node_count(),
        m: g.edge_count(),
        opt: (r.status == SolveStatus::Optimal).then_some(r.opt_value),
        root_lp: base.value,
        root_lp_cliques: with.value,
        improvement,
        max_clique,
        flagged: !(base.converged && with.converged),
    })
}

pub fn cmd_analyze(args: &AnalyzeArgs, out: &mut impl Write) -> Result<i32, CliError> {
    let limits = limits(args.time_limit)?;
    let mut instances = Vec::new();
    for path in &args.inputs {
        instances.push(Instance::from_file(path)?);
    }
    for &spec in &args.families {
        instances.push(Instance::from_family(spec)?);
    }
    if instances.is_empty() {
        return Err(CliError::Usage("no instances given".into()));
    }
    let records = instances
        .iter()
        .map(|inst| analyze_instance(inst, args.baseline_bound, args.clique_bound, &limits))
        .collect::<Result<Vec<_>, _>>()?;
    match args.format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &records)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in &records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        OutputFormat::Text => {
            writeln!(out, "{:<24} {:>5} {:>6} {:>5} {:>12} {:>12} {:>8} {:>7}", "instance", "n", "m", "opt", "root_lp", "with_cliques", "improv", "clique")?;
            for r in &records {
                let opt = r.opt.map_or_else(|| "-".to_string(), |v| v.to_string());
                let flag = if r.flagged { "  (round cap)" } else { "" };
                writeln!(
                    out,
                    "{:<24} {:>5} {:>6} {:>5} {:>12.6} {:>12.6} {:>7.2}% {:>7}{flag}",
                    r.instance,
                    r.n,
                    r.m,
                    opt,
                    r.root_lp,
                    r.root_lp_cliques,
                    100.0 * r.improvement,
                    r.max_clique
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Family spec text such as `ba:n=20,d=3` from the generate flags.
pub fn family_from_args(args: &GenerateArgs) -> Result<FamilySpec, CliError> {
    let params: Vec<String> = [("n", args.n), ("d", args.d), ("l", args.l), ("k", args.k), ("p", args.p)]
        .into_iter()
        .filter_map(|(key, v)| v.map(|v| format!("{key}={v}")))
        .collect();
    Ok(format!("{}:{}", args.kind, params.join(",")).parse()?)
}

pub fn cmd_generate(args: &GenerateArgs, out: &mut impl Write) -> Result<i32, CliError> {
    let spec = family_from_args(args)?;
    let seeds = match spec.seed() {
        Some(_) => parse_seed_range(&args.seeds)?,
        None => vec![0],
    };
    fs::create_dir_all(&args.out).map_err(|source| CliError::Io { path: args.out.clone(), source })?;
    for seed in seeds {
        let spec = spec.with_seed(seed);
        let g = spec.generate()?;
        let path = args.out.join(format!("{}.edgelist", spec.instance_name()));
        fs::write(&path, g.to_edge_list()).map_err(|source| CliError::Io { path: path.clone(), source })?;
        writeln!(out, "{}", path.display())?;
    }
    Ok(EXIT_OK)
}
