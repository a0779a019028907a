//! Command definitions and dispatch for the `hosil` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use hosil_core::baselines::linkage_cluster;
use hosil_core::datagen::{generate, DgpSpec};
use hosil_core::distance::{pairwise_distances, DataMatrix, DistanceMatrix, Metric};
use hosil_core::engine::{hosil, to_dendrogram};
use hosil_core::silhouette::{silhouette_report, Labeling};
use hosil_core::validation::ari;

use crate::error::{AppError, Result};
use crate::experiment::{
    aggregate, aggregate_csv, frequency_csv, records_csv, run_experiment, ExperimentConfig,
};
use crate::formats::{ClusterReport, DendrogramJson, HierarchyJson};
use crate::io::{load_data, load_distances, write_dataset_csv, write_labels_csv};
use crate::methods::{parse_method, run_auto, run_fixed, MethodKind};

#[derive(Parser)]
#[command(name = "hosil", version, about = "Silhouette-optimizing hierarchical clustering")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic dataset from one of the ten built-in models.
    Gen(GenArgs),
    /// Cluster a dataset or a precomputed distance matrix.
    Cluster(ClusterArgs),
    /// Run a replicated simulation study from a JSON config.
    Experiment(ExperimentArgs),
    /// Time the distance and clustering phases on a built-in model.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Model id, 1..=10.
    #[arg(long)]
    model: u32,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Factor on per-cluster sizes (min 2 points per cluster).
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Output CSV path; a `<out>.meta.json` sidecar is written next to it.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ClusterArgs {
    /// Input CSV: observations as rows, or a distance matrix with --dist.
    #[arg(long)]
    input: PathBuf,
    /// Input is a distance matrix (square, or condensed one-value-per-line).
    #[arg(long)]
    dist: bool,
    /// The input's last column is a ground-truth label; report agreement.
    #[arg(long, conflicts_with = "dist")]
    truth: bool,
    /// euclidean, manhattan, or minkowski:<q>.
    #[arg(long, default_value = "euclidean")]
    metric: String,
    /// hosil, kmeans, pam, pamsil, single, complete, average, ward, mcquitty.
    #[arg(long)]
    method: String,
    /// Fixed cluster count.
    #[arg(long, group = "kmode")]
    k: Option<usize>,
    /// Select the ASW-maximizing k within <min>:<max>.
    #[arg(long, value_name = "MIN:MAX", group = "kmode")]
    k_range: Option<String>,
    /// Select the ASW-maximizing k in 2..=k-max.
    #[arg(long, group = "kmode")]
    auto: bool,
    #[arg(long, default_value_t = 15)]
    k_max: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Restarts for kmeans.
    #[arg(long, default_value_t = 100)]
    nstart: usize,
    /// Output prefix; writes <out>.labels.csv, <out>.report.json, and for
    /// hierarchical methods <out>.hierarchy.json / <out>.dendrogram.json.
    /// Without it the report JSON goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON config: models, methods, replicates, seed, scale, k_mode,
    /// k_max, nstart.
    #[arg(long)]
    config: PathBuf,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Output directory for records.csv/json, aggregate.csv, and per-model
    /// frequency tables.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    model: u32,
    #[arg(long, default_value = "hosil")]
    method: String,
    #[arg(long, default_value_t = 3)]
    reps: u32,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
}

pub fn run() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Cluster(a) => cmd_cluster(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

fn parse_metric(s: &str) -> Result<Metric> {
    match s.to_ascii_lowercase().as_str() {
        "euclidean" => Ok(Metric::Euclidean),
        "manhattan" => Ok(Metric::Manhattan),
        other => match other.strip_prefix("minkowski:") {
            Some(q) => {
                let q: f64 = q
                    .parse()
                    .map_err(|_| AppError::usage(format!("bad minkowski exponent '{q}'")))?;
                Ok(Metric::Minkowski(q))
            }
            None => Err(AppError::usage(format!(
                "unknown metric '{s}' (expected euclidean, manhattan, minkowski:<q>)"
            ))),
        },
    }
}

#[derive(Serialize)]
struct GenMeta {
    model: u32,
    seed: u64,
    scale: f64,
    n: usize,
    p: usize,
    sizes: Vec<usize>,
}

fn cmd_gen(a: GenArgs) -> Result<()> {
    let ds = generate(&DgpSpec::with_scale(a.model, a.seed, a.scale))?;
    write_dataset_csv(&a.out, &ds.data, &ds.truth)?;
    let meta = GenMeta {
        model: a.model,
        seed: a.seed,
        scale: a.scale,
        n: ds.data.n(),
        p: ds.data.p(),
        sizes: ds.truth.sizes().to_vec(),
    };
    let sidecar = sidecar_path(&a.out);
    fs::write(&sidecar, serde_json::to_string_pretty(&meta)?)
        .map_err(|e| AppError::data(format!("{}: {e}", sidecar.display())))?;
    println!(
        "wrote {} ({} observations, {} features + label) and {}",
        a.out.display(),
        ds.data.n(),
        ds.data.p(),
        sidecar.display()
    );
    Ok(())
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn parse_k_range(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| AppError::usage(format!("bad k range '{s}', expected <min>:<max>")))?;
    let lo: usize =
        a.trim().parse().map_err(|_| AppError::usage(format!("bad k range '{s}'")))?;
    let hi: usize =
        b.trim().parse().map_err(|_| AppError::usage(format!("bad k range '{s}'")))?;
    if lo < 2 || hi < lo {
        return Err(AppError::usage(format!("bad k range '{s}': need 2 <= min <= max")));
    }
    Ok((lo, hi))
}

fn cmd_cluster(a: ClusterArgs) -> Result<()> {
    let kind = parse_method(&a.method)?;
    let metric = parse_metric(&a.metric)?;
    let selection: Selection = if let Some(k) = a.k {
        Selection::Fixed(k)
    } else if let Some(r) = &a.k_range {
        let (lo, hi) = parse_k_range(r)?;
        Selection::Range(lo, hi)
    } else if a.auto {
        Selection::Range(2, a.k_max)
    } else {
        return Err(AppError::usage("one of --k, --k-range, --auto is required"));
    };

    let (data, truth, dist): (Option<DataMatrix>, Option<Labeling>, DistanceMatrix) = if a.dist {
        if matches!(kind, MethodKind::Kmeans) {
            return Err(AppError::usage(
                "kmeans needs coordinate data; --dist input is incompatible",
            ));
        }
        (None, None, load_distances(&a.input)?)
    } else {
        let (data, truth) = load_data(&a.input, a.truth)?;
        let dist = pairwise_distances(&data, metric)?;
        (Some(data), truth, dist)
    };

    let auto_mode = !matches!(selection, Selection::Fixed(_));
    let (outcome, hierarchy) = match kind {
        MethodKind::Hosil => {
            let stop = match selection {
                Selection::Fixed(k) => Some(k),
                Selection::Range(lo, _) => Some(lo.max(2)),
            };
            let h = hosil(&dist, stop)?;
            let out = match selection {
                Selection::Fixed(k) => {
                    let labels = h.labels_at(k).cloned().ok_or_else(|| {
                        AppError::numeric(format!("hierarchy has no level with k = {k}"))
                    })?;
                    let asw = silhouette_report(&dist, &labels)?.asw;
                    crate::methods::MethodOutcome { labels, asw, k_hat: k }
                }
                Selection::Range(lo, hi) => {
                    run_auto(kind, &dist, data.as_ref(), lo, hi, a.nstart, a.seed)?
                }
            };
            (out, Some(h))
        }
        _ => {
            let out = match selection {
                Selection::Fixed(k) => run_fixed(kind, &dist, data.as_ref(), k, a.nstart, a.seed)?,
                Selection::Range(lo, hi) => {
                    run_auto(kind, &dist, data.as_ref(), lo, hi, a.nstart, a.seed)?
                }
            };
            (out, None)
        }
    };

    let rep = silhouette_report(&dist, &outcome.labels)?;
    let report = ClusterReport {
        method: a.method.clone(),
        n: dist.n(),
        k: outcome.labels.k(),
        selected_k: auto_mode.then_some(outcome.k_hat),
        asw: rep.asw,
        silhouettes: rep.per_point.clone(),
        labels: outcome.labels.labels().iter().map(|&l| l + 1).collect(),
        ari: match &truth {
            Some(t) => Some(ari(&outcome.labels, t)?),
            None => None,
        },
    };

    match &a.out {
        None => println!("{}", serde_json::to_string_pretty(&report)?),
        Some(prefix) => {
            let p = |suffix: &str| {
                let mut s = prefix.as_os_str().to_owned();
                s.push(suffix);
                PathBuf::from(s)
            };
            write_labels_csv(&p(".labels.csv"), &outcome.labels)?;
            fs::write(p(".report.json"), serde_json::to_string_pretty(&report)?)?;
            if let Some(h) = &hierarchy {
                let hj = HierarchyJson::from_hierarchy(h)?;
                fs::write(p(".hierarchy.json"), serde_json::to_string_pretty(&hj)?)?;
                if !h.truncated {
                    let dj = DendrogramJson::from_dendrogram(&to_dendrogram(h)?);
                    fs::write(p(".dendrogram.json"), serde_json::to_string_pretty(&dj)?)?;
                }
            } else if let MethodKind::Linkage(l) = kind {
                // Lance-Williams methods get their merge tree exported too.
                let tree = linkage_cluster(&dist, l)?;
                #[derive(Serialize)]
                struct StepJson {
                    a: usize,
                    b: usize,
                    height: f64,
                    size: usize,
                }
                let steps: Vec<StepJson> = tree
                    .steps
                    .iter()
                    .map(|s| StepJson { a: s.a + 1, b: s.b + 1, height: s.height, size: s.size })
                    .collect();
                fs::write(p(".merges.json"), serde_json::to_string_pretty(&steps)?)?;
            }
            println!(
                "method={} n={} k={} asw={:.6}{}",
                a.method,
                dist.n(),
                outcome.labels.k(),
                rep.asw,
                report.ari.map(|v| format!(" ari={v:.6}")).unwrap_or_default()
            );
        }
    }
    Ok(())
}

enum Selection {
    Fixed(usize),
    Range(usize, usize),
}

fn cmd_experiment(a: ExperimentArgs) -> Result<()> {
    let text = fs::read_to_string(&a.config)
        .map_err(|e| AppError::data(format!("{}: {e}", a.config.display())))?;
    let config: ExperimentConfig = serde_json::from_str(&text)
        .map_err(|e| AppError::usage(format!("{}: {e}", a.config.display())))?;
    if a.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(a.threads)
            .build_global()
            .map_err(|e| AppError::usage(e.to_string()))?;
    }
    let result = run_experiment(&config)?;
    fs::create_dir_all(&a.out)
        .map_err(|e| AppError::data(format!("{}: {e}", a.out.display())))?;
    fs::write(a.out.join("records.csv"), records_csv(&result.records))?;
    fs::write(a.out.join("records.json"), serde_json::to_string_pretty(&result.records)?)?;
    let agg = aggregate(&result.records);
    fs::write(a.out.join("aggregate.csv"), aggregate_csv(&agg))?;
    for (model, ft) in &result.frequency {
        fs::write(a.out.join(format!("frequency_model{model}.csv")), frequency_csv(*model, ft))?;
    }
    println!(
        "{} records over {} models written to {}",
        result.records.len(),
        config.models.len(),
        a.out.display()
    );
    Ok(())
}

fn cmd_bench(a: BenchArgs) -> Result<()> {
    let kind = parse_method(&a.method)?;
    if a.reps == 0 {
        return Err(AppError::usage("--reps must be at least 1"));
    }
    let mut dist_ms = Vec::new();
    let mut cluster_ms = Vec::new();
    let mut n = 0;
    for rep in 0..a.reps {
        let seed = hosil_core::datagen::replicate_seed(a.seed, a.model, rep);
        let ds = generate(&DgpSpec::with_scale(a.model, seed, a.scale))?;
        n = ds.data.n();
        let t = Instant::now();
        let dist = pairwise_distances(&ds.data, Metric::Euclidean)?;
        dist_ms.push(t.elapsed().as_millis() as u64);
        let t = Instant::now();
        match kind {
            // The full hierarchy is the expensive, interesting case.
            MethodKind::Hosil => {
                hosil(&dist, None)?;
            }
            _ => {
                run_fixed(kind, &dist, Some(&ds.data), ds.truth.k(), 100, seed)?;
            }
        }
        cluster_ms.push(t.elapsed().as_millis() as u64);
    }
    dist_ms.sort_unstable();
    cluster_ms.sort_unstable();
    let med = |v: &[u64]| v[v.len() / 2];
    println!("model,method,n,reps,dist_millis_median,cluster_millis_median");
    println!(
        "{},{},{},{},{},{}",
        a.model,
        a.method,
        n,
        a.reps,
        med(&dist_ms),
        med(&cluster_ms)
    );
    Ok(())
}
