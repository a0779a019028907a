//! Shared method dispatch for the cluster command and the experiment
//! harness.

use hosil_core::baselines::{
    asw_sweep, kmeans, linkage_cluster, pam, pamsil, LinkageKind, SweepMethod,
};
use hosil_core::distance::{DataMatrix, DistanceMatrix};
use hosil_core::engine::{best_k, hosil};
use hosil_core::silhouette::{silhouette_report, Labeling};

use crate::error::{AppError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MethodKind {
    Hosil,
    Kmeans,
    Pam,
    Pamsil,
    Linkage(LinkageKind),
}

pub fn parse_method(name: &str) -> Result<MethodKind> {
    match name.to_ascii_lowercase().as_str() {
        "hosil" => Ok(MethodKind::Hosil),
        "kmeans" => Ok(MethodKind::Kmeans),
        "pam" => Ok(MethodKind::Pam),
        "pamsil" => Ok(MethodKind::Pamsil),
        "single" => Ok(MethodKind::Linkage(LinkageKind::Single)),
        "complete" => Ok(MethodKind::Linkage(LinkageKind::Complete)),
        "average" => Ok(MethodKind::Linkage(LinkageKind::Average)),
        "ward" => Ok(MethodKind::Linkage(LinkageKind::WardD2)),
        "mcquitty" => Ok(MethodKind::Linkage(LinkageKind::McQuitty)),
        other => Err(AppError::usage(format!(
            "unknown method '{other}' (expected hosil, kmeans, pam, pamsil, single, complete, average, ward, mcquitty)"
        ))),
    }
}

pub struct MethodOutcome {
    pub labels: Labeling,
    pub asw: f64,
    pub k_hat: usize,
}

/// Runs `kind` at a fixed cluster count.
pub fn run_fixed(
    kind: MethodKind,
    dist: &DistanceMatrix,
    data: Option<&DataMatrix>,
    k: usize,
    nstart: usize,
    seed: u64,
) -> Result<MethodOutcome> {
    let labels = match kind {
        MethodKind::Hosil => {
            let h = hosil(dist, Some(k))?;
            h.labels_at(k)
                .cloned()
                .ok_or_else(|| AppError::numeric(format!("hierarchy has no level with k = {k}")))?
        }
        MethodKind::Kmeans => {
            let data = data.ok_or_else(|| {
                AppError::usage("kmeans needs coordinate data, not a distance matrix")
            })?;
            kmeans(data, k, nstart, seed)?
        }
        MethodKind::Pam => pam(dist, k)?.labeling,
        MethodKind::Pamsil => pamsil(dist, k)?.labeling,
        MethodKind::Linkage(l) => linkage_cluster(dist, l)?.cut(k)?,
    };
    let asw = silhouette_report(dist, &labels)?.asw;
    Ok(MethodOutcome { labels, asw, k_hat: k })
}

/// Runs `kind` over k in `[k_min, k_max]`, selecting the ASW-maximizing k.
pub fn run_auto(
    kind: MethodKind,
    dist: &DistanceMatrix,
    data: Option<&DataMatrix>,
    k_min: usize,
    k_max: usize,
    nstart: usize,
    seed: u64,
) -> Result<MethodOutcome> {
    let n = dist.n();
    let k_min = k_min.max(2);
    let k_max = k_max.min(n - 1);
    if k_min > k_max {
        return Err(AppError::usage(format!(
            "empty cluster-count range {k_min}..={k_max} for n = {n}"
        )));
    }
    match kind {
        MethodKind::Hosil => {
            let h = hosil(dist, Some(k_min))?;
            let (bk, basw) = if k_min == 2 && k_max == n - 1 {
                best_k(&h)?
            } else {
                // Restrict selection to the requested range; ties toward
                // smaller k, as everywhere.
                h.records
                    .iter()
                    .filter(|r| r.k >= k_min && r.k <= k_max)
                    .fold(None::<(usize, f64)>, |best, r| match best {
                        None => Some((r.k, r.asw)),
                        Some((bk, basw)) if r.asw > basw || (r.asw == basw && r.k < bk) => {
                            Some((r.k, r.asw))
                        }
                        keep => keep,
                    })
                    .ok_or_else(|| AppError::usage("no hierarchy level in the requested range"))?
            };
            let labels = h.labels_at(bk).cloned().ok_or_else(|| {
                AppError::numeric(format!("hierarchy has no level with k = {bk}"))
            })?;
            Ok(MethodOutcome { labels, asw: basw, k_hat: bk })
        }
        _ => {
            let sweep = match kind {
                MethodKind::Kmeans => SweepMethod::Kmeans { nstart },
                MethodKind::Pam => SweepMethod::Pam,
                MethodKind::Pamsil => SweepMethod::Pamsil,
                MethodKind::Linkage(l) => SweepMethod::Linkage(l),
                MethodKind::Hosil => unreachable!(),
            };
            if matches!(kind, MethodKind::Kmeans) && data.is_none() {
                return Err(AppError::usage(
                    "kmeans needs coordinate data, not a distance matrix",
                ));
            }
            let res = asw_sweep(dist, data, sweep, k_min..=k_max, seed)?;
            // Methods are deterministic given (k, seed); rebuilding at the
            // chosen k reproduces the sweep's labeling.
            let out = run_fixed(kind, dist, data, res.best_k, nstart, seed)?;
            Ok(MethodOutcome { labels: out.labels, asw: res.best_asw, k_hat: res.best_k })
        }
    }
}
