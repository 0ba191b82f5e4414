//! The `wgcgs` command line: `cluster` trains one model and writes its
//! partition, `compare` scores WGCGS against the classical baselines.
//!
//! Exit codes: 0 on success, 1 for data or runtime errors, 2 for usage
//! errors. Every run writes a `manifest.json` next to its outputs; its
//! timestamp honors `SOURCE_DATE_EPOCH` so repeated runs can be byte-identical.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::baselines::{self, Algorithm};
use crate::error::{validation, Error, Result};
use crate::graph::{self, export_dot, Assignment, WeightedGraph};
use crate::metrics::{render_table, MetricsReport, StructureReport};
use crate::train::{train, Anneal, OptimizerKind, StrengthScale, TrainConfig, TrainReport};

#[derive(Debug, Parser)]
#[command(name = "wgcgs", version, about = "Weighted graph node clustering via Gumbel softmax")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train a cluster model and write its partition.
    Cluster(ClusterArgs),
    /// Score WGCGS and the baselines against ground truth.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct DatasetArgs {
    /// Edge-list file (`u v [w]` per line).
    #[arg(long, required_unless_present = "karate", conflicts_with = "karate")]
    pub input: Option<PathBuf>,
    /// Use the bundled weighted karate club network.
    #[arg(long)]
    pub karate: bool,
    /// Ground-truth labels for `--input` (`id label` per line).
    #[arg(long, requires = "input")]
    pub labels: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AnnealArg {
    Exponential,
    Linear,
    Constant,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OptimizerArg {
    Sgd,
    Adam,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Master seed.
    #[arg(long, env = "WGCGS_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 300)]
    pub epochs: usize,
    #[arg(long, default_value_t = 0.05)]
    pub lr: f64,
    #[arg(long, default_value_t = 5.0)]
    pub tau_start: f64,
    #[arg(long, default_value_t = 0.5)]
    pub tau_end: f64,
    #[arg(long, default_value_t = 10)]
    pub restarts: usize,
    #[arg(long, value_enum, default_value = "exponential")]
    pub anneal: AnnealArg,
    #[arg(long, value_enum, default_value = "adam")]
    pub optimizer: OptimizerArg,
    /// Multiplier on the mean-normalized cluster strengths.
    #[arg(long, default_value_t = 0.7, conflicts_with = "raw_strength")]
    pub strength_gain: f64,
    /// Feed raw cluster strengths to the softmax.
    #[arg(long)]
    pub raw_strength: bool,
}

impl TrainArgs {
    pub fn config(&self) -> TrainConfig {
        TrainConfig {
            epochs: self.epochs,
            learning_rate: self.lr,
            tau_start: self.tau_start,
            tau_end: self.tau_end,
            anneal: match self.anneal {
                AnnealArg::Exponential => Anneal::Exponential,
                AnnealArg::Linear => Anneal::Linear,
                AnnealArg::Constant => Anneal::Constant,
            },
            seed: self.seed,
            optimizer: match self.optimizer {
                OptimizerArg::Sgd => OptimizerKind::Sgd,
                OptimizerArg::Adam => OptimizerKind::Adam,
            },
            restarts: self.restarts,
            strength_scale: if self.raw_strength {
                StrengthScale::Raw
            } else {
                StrengthScale::MeanEntry {
                    gain: self.strength_gain,
                }
            },
            ..TrainConfig::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,
    /// Number of clusters.
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub train: TrainArgs,
    /// Output directory (created if missing).
    #[arg(long, default_value = "wgcgs-out")]
    pub out: PathBuf,
    /// Also write `clusters.dot`.
    #[arg(long)]
    pub dot: bool,
}

/// A method in a comparison run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Method {
    Baseline(Algorithm),
    Wgcgs,
}

impl Method {
    fn name(self) -> String {
        match self {
            Method::Baseline(a) => a.code().to_string(),
            Method::Wgcgs => "WGCGS".to_string(),
        }
    }
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    if s.eq_ignore_ascii_case("wgcgs") {
        Ok(Method::Wgcgs)
    } else {
        s.parse::<Algorithm>().map(Method::Baseline)
    }
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,
    /// Comma-separated subset of pl,mom,ecm,eb,wgcgs.
    #[arg(long, value_delimiter = ',', value_parser = parse_method, default_value = "ecm,eb,mom,pl,wgcgs")]
    pub algorithms: Vec<Method>,
    /// Target cluster count for WGCGS, ECM and EB.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Seeds tried for stochastic methods; the best run is reported.
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,
    #[command(flatten)]
    pub train: TrainArgs,
    #[arg(long, default_value = "wgcgs-out")]
    pub out: PathBuf,
}

/// Where the graph came from, plus a SHA-256 over its edge-list and label bytes.
#[derive(Debug, Clone, Serialize)]
pub struct DatasetInfo {
    pub id: String,
    pub sha256: String,
    pub n_nodes: usize,
    pub n_edges: usize,
}

/// Audit record written alongside every run.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: Vec<String>,
    pub config: TrainConfig,
    pub dataset: DatasetInfo,
    pub results: serde_json::Value,
    pub outputs: Vec<String>,
    pub timestamp: String,
}

fn timestamp() -> String {
    let secs = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse::<i64>().ok());
    let time = match secs.and_then(|s| chrono::DateTime::from_timestamp(s, 0)) {
        Some(t) => t,
        None => chrono::Utc::now(),
    };
    time.to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn load_dataset(args: &DatasetArgs) -> Result<(WeightedGraph, DatasetInfo)> {
    let mut hasher = Sha256::new();
    let (graph, id) = if args.karate {
        hasher.update(graph::KARATE_EDGES);
        hasher.update(graph::KARATE_LABELS);
        (graph::karate_club(), "karate".to_string())
    } else {
        let path = args.input.as_ref().ok_or_else(|| validation("no dataset given"))?;
        let read = |p: &Path| fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())));
        let text = read(path)?;
        hasher.update(&text);
        let mut graph = graph::load_edge_list(&text)?;
        if let Some(label_path) = &args.labels {
            let labels = read(label_path)?;
            hasher.update(&labels);
            let parsed = graph::load_labels(&labels, graph.n_nodes())?;
            graph = graph.with_labels(parsed)?;
        }
        (graph, path.display().to_string())
    };
    let info = DatasetInfo {
        id,
        sha256: hex::encode(hasher.finalize()),
        n_nodes: graph.n_nodes(),
        n_edges: graph.edges().len(),
    };
    Ok((graph, info))
}

fn write_json(dir: &Path, name: &str, value: &impl Serialize, outputs: &mut Vec<String>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    write_file(dir, name, &text, outputs)
}

fn write_file(dir: &Path, name: &str, text: &str, outputs: &mut Vec<String>) -> Result<()> {
    fs::write(dir.join(name), text)?;
    outputs.push(name.to_string());
    Ok(())
}

/// `assignment.json` contents.
#[derive(Debug, Serialize)]
struct ClusterOutput<'a> {
    k: usize,
    clusters_used: usize,
    cluster_of: &'a [usize],
    final_loss: f64,
    best_restart: usize,
    loss_history: &'a [f64],
    restart_final_losses: &'a [f64],
    config: &'a TrainConfig,
}

fn cmd_cluster(args: &ClusterArgs, command: Vec<String>, stdout: &mut dyn Write) -> Result<()> {
    let (graph, dataset) = load_dataset(&args.dataset)?;
    let config = args.train.config();
    if args.k == 1 {
        eprintln!("warning: k = 1 is degenerate; every node lands in one cluster and the loss is 0");
    }
    let report: TrainReport = train(&graph, args.k, &config)?;
    let assignment = report.assignment();

    fs::create_dir_all(&args.out)?;
    let mut outputs = Vec::new();
    write_json(
        &args.out,
        "assignment.json",
        &ClusterOutput {
            k: args.k,
            clusters_used: assignment.n_used(),
            cluster_of: assignment.cluster_of(),
            final_loss: report.final_loss,
            best_restart: report.best_restart,
            loss_history: &report.loss_history,
            restart_final_losses: &report.restart_final_losses,
            config: &config,
        },
        &mut outputs,
    )?;

    let mut summary = String::new();
    let results = match graph.ground_truth() {
        Some(truth) => {
            let metrics = MetricsReport::evaluate(&graph, &truth, &assignment)?;
            write_json(&args.out, "metrics.json", &metrics, &mut outputs)?;
            summary.push_str(&render_table(&[(format!("WGCGS({}C)", args.k), metrics)]));
            serde_json::to_value(metrics)
        }
        None => {
            let structure = StructureReport::evaluate(&graph, &assignment)?;
            let _ = writeln!(
                summary,
                "Q {:.4}  Q(unw) {:.4}",
                structure.modularity, structure.modularity_unweighted
            );
            serde_json::to_value(structure)
        }
    }
    .map_err(|e| Error::Io(e.to_string()))?;
    let _ = writeln!(
        summary,
        "final loss {:.6} (restart {} of {}), {} clusters used",
        report.final_loss,
        report.best_restart,
        config.restarts,
        assignment.n_used()
    );

    if args.dot {
        write_file(
            &args.out,
            "clusters.dot",
            &export_dot(&graph, &assignment)?,
            &mut outputs,
        )?;
    }

    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command,
        config,
        dataset,
        results: serde_json::json!({
            "metrics": results,
            "cluster_of": assignment.cluster_of(),
            "final_loss": report.final_loss,
            "restart_final_losses": report.restart_final_losses,
        }),
        outputs: outputs.clone(),
        timestamp: timestamp(),
    };
    write_json(&args.out, "manifest.json", &manifest, &mut Vec::new())?;
    stdout.write_all(summary.as_bytes())?;
    Ok(())
}

/// One row of a comparison.
#[derive(Debug, Clone, Serialize)]
pub struct CompareRow {
    pub algorithm: String,
    /// Seed of the reported run, for stochastic methods.
    pub seed: Option<u64>,
    pub cluster_of: Vec<usize>,
    pub metrics: MetricsReport,
}

/// Best-of-seeds WGCGS run, selected by lowest final loss (earliest seed on ties).
pub fn best_wgcgs(graph: &WeightedGraph, k: usize, config: &TrainConfig, seeds: u64) -> Result<(u64, TrainReport)> {
    let mut best: Option<(u64, TrainReport)> = None;
    for seed in config.seed..config.seed + seeds {
        let report = train(graph, k, &TrainConfig { seed, ..config.clone() })?;
        if best.as_ref().is_none_or(|(_, b)| report.final_loss < b.final_loss) {
            best = Some((seed, report));
        }
    }
    best.ok_or_else(|| validation("--seeds must be at least 1"))
}

fn compare_rows(args: &CompareArgs, graph: &WeightedGraph, truth: &Assignment) -> Result<Vec<CompareRow>> {
    let config = args.train.config();
    let mut methods = args.algorithms.clone();
    methods.sort();
    methods.dedup();
    let mut rows = Vec::new();
    for method in methods {
        let (seed, assignment) = match method {
            Method::Wgcgs => {
                let (seed, report) = best_wgcgs(graph, args.k, &config, args.seeds)?;
                (Some(seed), report.assignment())
            }
            Method::Baseline(Algorithm::LabelPropagation) => {
                if args.seeds == 0 {
                    return Err(validation("--seeds must be at least 1"));
                }
                // Highest modularity wins; earliest seed on ties.
                let mut best: Option<(u64, baselines::BaselineResult)> = None;
                for seed in config.seed..config.seed + args.seeds {
                    let r = baselines::label_propagation(graph, seed);
                    if best.as_ref().is_none_or(|(_, b)| r.modularity > b.modularity) {
                        best = Some((seed, r));
                    }
                }
                let (seed, r) = best.expect("seeds >= 1");
                (Some(seed), r.assignment)
            }
            Method::Baseline(a) => (None, baselines::run(a, graph, args.k, config.seed)?.assignment),
        };
        rows.push(CompareRow {
            algorithm: method.name(),
            seed,
            metrics: MetricsReport::evaluate(graph, truth, &assignment)?,
            cluster_of: assignment.cluster_of().to_vec(),
        });
    }
    Ok(rows)
}

/// RFC 4180 CSV: `algorithm,ari,nmi,homo,comp,vmes,modularity,modularity_unweighted`.
pub fn rows_to_csv(rows: &[CompareRow]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    writer
        .write_record([
            "algorithm",
            "ari",
            "nmi",
            "homo",
            "comp",
            "vmes",
            "modularity",
            "modularity_unweighted",
        ])
        .map_err(io)?;
    for row in rows {
        let m = &row.metrics;
        let values = [
            m.ari,
            m.nmi,
            m.homogeneity,
            m.completeness,
            m.v_measure,
            m.modularity,
            m.modularity_unweighted,
        ];
        let mut record = vec![row.algorithm.clone()];
        record.extend(values.iter().map(|v| v.to_string()));
        writer.write_record(&record).map_err(io)?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn cmd_compare(args: &CompareArgs, command: Vec<String>, stdout: &mut dyn Write) -> Result<()> {
    let (graph, dataset) = load_dataset(&args.dataset)?;
    let truth = graph
        .ground_truth()
        .ok_or_else(|| validation("compare needs ground-truth labels (use --karate or --labels)"))?;
    let rows = compare_rows(args, &graph, &truth)?;

    fs::create_dir_all(&args.out)?;
    let mut outputs = Vec::new();
    write_file(&args.out, "compare.csv", &rows_to_csv(&rows)?, &mut outputs)?;
    write_json(&args.out, "compare.json", &rows, &mut outputs)?;
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command,
        config: args.train.config(),
        dataset,
        results: serde_json::to_value(&rows).map_err(|e| Error::Io(e.to_string()))?,
        outputs,
        timestamp: timestamp(),
    };
    write_json(&args.out, "manifest.json", &manifest, &mut Vec::new())?;

    let columns: Vec<(String, MetricsReport)> = rows.iter().map(|r| (r.algorithm.clone(), r.metrics)).collect();
    stdout.write_all(render_table(&columns).as_bytes())?;
    Ok(())
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return err.exit_code();
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let result = match &cli.command {
        Command::Cluster(a) => cmd_cluster(a, echo, stdout),
        Command::Compare(a) => cmd_compare(a, echo, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}
