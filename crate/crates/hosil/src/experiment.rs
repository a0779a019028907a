//! Replicated simulation harness: generate model data, run each method at
//! the generating cluster count and/or with ASW-based selection, and record
//! quality, agreement, estimated counts, and timing.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use hosil_core::datagen::{generate, replicate_seed, DgpSpec};
use hosil_core::distance::{pairwise_distances, Metric};
use hosil_core::silhouette::silhouette_report;
use hosil_core::validation::{ari, FrequencyTable};

use crate::error::{AppError, Result};
use crate::methods::{parse_method, run_auto, run_fixed};

fn default_scale() -> f64 {
    1.0
}
fn default_k_mode() -> String {
    "both".to_string()
}
fn default_k_max() -> usize {
    15
}
fn default_nstart() -> usize {
    100
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub models: Vec<u32>,
    pub methods: Vec<String>,
    pub replicates: u32,
    pub seed: u64,
    #[serde(default = "default_scale")]
    pub scale: f64,
    /// "fixed" runs at the generating cluster count, "auto" selects by ASW,
    /// "both" does both.
    #[serde(default = "default_k_mode")]
    pub k_mode: String,
    #[serde(default = "default_k_max")]
    pub k_max: usize,
    #[serde(default = "default_nstart")]
    pub nstart: usize,
}

/// One method run on one replicate. `millis` covers the clustering phase
/// only, never the distance computation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub model: u32,
    pub rep: u32,
    pub method: String,
    pub k_mode: String,
    pub k: usize,
    pub asw: f64,
    pub ari: f64,
    pub k_hat: usize,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AggregateRow {
    pub model: u32,
    pub method: String,
    pub k_mode: String,
    pub replicates: usize,
    pub mean_asw: f64,
    pub mean_ari: f64,
    pub mean_millis: f64,
}

pub struct ExperimentResult {
    pub records: Vec<RunRecord>,
    /// Per model, counts of the auto-selected cluster count per method.
    pub frequency: Vec<(u32, FrequencyTable)>,
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    let (fixed, auto) = match config.k_mode.as_str() {
        "fixed" => (true, false),
        "auto" => (false, true),
        "both" => (true, true),
        other => return Err(AppError::usage(format!("k_mode '{other}' not one of fixed, auto, both"))),
    };
    for m in &config.methods {
        parse_method(m)?;
    }
    let jobs: Vec<(u32, u32)> = config
        .models
        .iter()
        .flat_map(|&m| (0..config.replicates).map(move |r| (m, r)))
        .collect();

    // Replicates are independent; each derives its own seed from the master
    // seed, so results do not depend on the schedule.
    let per_job: Vec<Vec<RunRecord>> = jobs
        .par_iter()
        .map(|&(model, rep)| run_replicate(config, model, rep, fixed, auto))
        .collect::<Result<_>>()?;

    let records: Vec<RunRecord> = per_job.into_iter().flatten().collect();

    let mut frequency = Vec::new();
    if auto {
        for &model in &config.models {
            let mut ft = FrequencyTable::new(config.methods.clone(), config.k_max);
            for rec in &records {
                if rec.model == model && rec.k_mode == "auto" && rec.error.is_none() {
                    if let Some(mi) = config.methods.iter().position(|m| *m == rec.method) {
                        ft.record(mi, rec.k_hat);
                    }
                }
            }
            frequency.push((model, ft));
        }
    }
    Ok(ExperimentResult { records, frequency })
}

fn run_replicate(
    config: &ExperimentConfig,
    model: u32,
    rep: u32,
    fixed: bool,
    auto: bool,
) -> Result<Vec<RunRecord>> {
    let seed = replicate_seed(config.seed, model, rep);
    let ds = generate(&DgpSpec::with_scale(model, seed, config.scale))?;
    let dist = pairwise_distances(&ds.data, Metric::Euclidean)?;
    let k_true = ds.truth.k();
    let mut records = Vec::new();

    // ASW of the generating labels, recorded as a pseudo-method row so the
    // "true" column of the aggregate table can be reproduced.
    let true_asw = silhouette_report(&dist, &ds.truth)?.asw;
    records.push(RunRecord {
        model,
        rep,
        method: "truth".to_string(),
        k_mode: "truth".to_string(),
        k: k_true,
        asw: true_asw,
        ari: 1.0,
        k_hat: k_true,
        millis: 0,
        error: None,
    });

    for name in &config.methods {
        let kind = parse_method(name)?;
        if fixed {
            let t = Instant::now();
            let out = run_fixed(kind, &dist, Some(&ds.data), k_true, config.nstart, seed);
            records.push(record_from(model, rep, name, "fixed", k_true, out, t, &ds.truth));
        }
        if auto {
            let t = Instant::now();
            let out =
                run_auto(kind, &dist, Some(&ds.data), 2, config.k_max, config.nstart, seed);
            records.push(record_from(model, rep, name, "auto", k_true, out, t, &ds.truth));
        }
    }
    Ok(records)
}

fn record_from(
    model: u32,
    rep: u32,
    method: &str,
    k_mode: &str,
    k: usize,
    out: Result<crate::methods::MethodOutcome>,
    started: Instant,
    truth: &hosil_core::silhouette::Labeling,
) -> RunRecord {
    let millis = started.elapsed().as_millis() as u64;
    match out.and_then(|o| {
        let a = ari(&o.labels, truth)?;
        Ok((o, a))
    }) {
        Ok((o, a)) => RunRecord {
            model,
            rep,
            method: method.to_string(),
            k_mode: k_mode.to_string(),
            k,
            asw: o.asw,
            ari: a,
            k_hat: o.k_hat,
            millis,
            error: None,
        },
        // Method failures are recorded, not fatal: the row survives with
        // NaN quality fields.
        Err(e) => RunRecord {
            model,
            rep,
            method: method.to_string(),
            k_mode: k_mode.to_string(),
            k,
            asw: f64::NAN,
            ari: f64::NAN,
            k_hat: 0,
            millis,
            error: Some(e.to_string()),
        },
    }
}

pub fn records_csv(records: &[RunRecord]) -> String {
    let mut out = String::from("model,rep,method,k_mode,k,asw,ari,k_hat,millis\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.model, r.rep, r.method, r.k_mode, r.k, r.asw, r.ari, r.k_hat, r.millis
        ));
    }
    out
}

pub fn aggregate(records: &[RunRecord]) -> Vec<AggregateRow> {
    let mut rows: Vec<AggregateRow> = Vec::new();
    for r in records {
        if r.error.is_some() {
            continue;
        }
        match rows
            .iter_mut()
            .find(|a| a.model == r.model && a.method == r.method && a.k_mode == r.k_mode)
        {
            Some(a) => {
                a.replicates += 1;
                a.mean_asw += r.asw;
                a.mean_ari += r.ari;
                a.mean_millis += r.millis as f64;
            }
            None => rows.push(AggregateRow {
                model: r.model,
                method: r.method.clone(),
                k_mode: r.k_mode.clone(),
                replicates: 1,
                mean_asw: r.asw,
                mean_ari: r.ari,
                mean_millis: r.millis as f64,
            }),
        }
    }
    for a in &mut rows {
        let c = a.replicates as f64;
        a.mean_asw /= c;
        a.mean_ari /= c;
        a.mean_millis /= c;
    }
    rows
}

pub fn aggregate_csv(rows: &[AggregateRow]) -> String {
    let mut out = String::from("model,method,k_mode,replicates,mean_asw,mean_ari,mean_millis\n");
    for a in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            a.model, a.method, a.k_mode, a.replicates, a.mean_asw, a.mean_ari, a.mean_millis
        ));
    }
    out
}

/// Rows are methods, columns the selected cluster count 1..=k_max.
pub fn frequency_csv(model: u32, ft: &FrequencyTable) -> String {
    let mut out = String::from("model,method");
    for k in 1..=ft.k_max {
        out.push_str(&format!(",k{k}"));
    }
    out.push('\n');
    for (mi, method) in ft.methods.iter().enumerate() {
        out.push_str(&format!("{model},{method}"));
        for c in &ft.counts[mi] {
            out.push_str(&format!(",{c}"));
        }
        out.push('\n');
    }
    out
}
