//! Comparison clustering methods: Lance–Williams hierarchical linkages,
//! k-means, PAM and PAMSIL, plus the ASW sweep over a range of cluster
//! counts.

mod kmeans;
mod linkage;
mod medoids;

pub use kmeans::kmeans;
pub use linkage::{linkage_cluster, LinkageKind, MergeStep, MergeTree};
pub use medoids::{build_phase_asw, pam, pamsil, pamsil_with_trace, MedoidSet};

use alloc::vec::Vec;

use crate::distance::{DataMatrix, DistanceMatrix};
use crate::error::{Error, Result};
use crate::silhouette::{silhouette_report, Labeling};

/// Method selector for [`asw_sweep`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepMethod {
    Kmeans { nstart: usize },
    Pam,
    Pamsil,
    Linkage(LinkageKind),
}

/// Per-k ASW values and the ASW-maximizing k of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// (k, asw) for every k in the requested range.
    pub per_k: Vec<(usize, f64)>,
    pub best_k: usize,
    pub best_asw: f64,
}

/// Clusters at every k in `k_range` with `method`, evaluates the ASW of each
/// labeling, and returns the ASW-maximizing k (ties toward smaller k).
///
/// `data` is required for k-means only; all other methods work from the
/// distance matrix.
pub fn asw_sweep(
    dist: &DistanceMatrix,
    data: Option<&DataMatrix>,
    method: SweepMethod,
    k_range: impl IntoIterator<Item = usize>,
    seed: u64,
) -> Result<SweepResult> {
    let n = dist.n();
    // Hierarchical methods build the merge tree once and cut per k.
    let tree = match method {
        SweepMethod::Linkage(kind) => Some(linkage_cluster(dist, kind)?),
        _ => None,
    };
    let mut per_k = Vec::new();
    let mut best: Option<(usize, f64)> = None;
    for k in k_range {
        if k < 2 || k > n - 1 {
            return Err(Error::InvalidK { k, min: 2, max: n - 1 });
        }
        let labels: Labeling = match method {
            SweepMethod::Kmeans { nstart } => {
                let data = data.ok_or(Error::NeedsCoordinates)?;
                kmeans(data, k, nstart, seed)?
            }
            SweepMethod::Pam => pam(dist, k)?.labeling,
            SweepMethod::Pamsil => pamsil(dist, k)?.labeling,
            SweepMethod::Linkage(_) => tree.as_ref().unwrap().cut(k)?,
        };
        let asw = silhouette_report(dist, &labels)?.asw;
        per_k.push((k, asw));
        best = Some(match best {
            None => (k, asw),
            Some((bk, basw)) => {
                if asw > basw || (asw == basw && k < bk) {
                    (k, asw)
                } else {
                    (bk, basw)
                }
            }
        });
    }
    let (best_k, best_asw) = best.ok_or(Error::InvalidK { k: 0, min: 2, max: n - 1 })?;
    Ok(SweepResult { per_k, best_k, best_asw })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{pairwise_distances, Metric};
    use alloc::vec::Vec;

    fn three_pairs() -> (DataMatrix, DistanceMatrix) {
        let pts = [0.0, 1.0, 10.0, 11.0, 20.0, 21.0];
        let data = DataMatrix::new(6, 1, pts.to_vec()).unwrap();
        let dist = pairwise_distances(&data, Metric::Euclidean).unwrap();
        (data, dist)
    }

    #[test]
    fn pam_sweep_finds_three() {
        let (_, dist) = three_pairs();
        let res = asw_sweep(&dist, None, SweepMethod::Pam, 2..=5, 1).unwrap();
        assert_eq!(res.best_k, 3);
    }

    #[test]
    fn single_linkage_sweep_finds_three() {
        let (_, dist) = three_pairs();
        let res =
            asw_sweep(&dist, None, SweepMethod::Linkage(LinkageKind::Single), 2..=5, 1).unwrap();
        assert_eq!(res.best_k, 3);
    }

    #[test]
    fn singleton_range_returns_that_k() {
        let (_, dist) = three_pairs();
        let res = asw_sweep(&dist, None, SweepMethod::Pam, [4], 1).unwrap();
        assert_eq!(res.best_k, 4);
        assert_eq!(res.per_k.len(), 1);
    }

    #[test]
    fn kmeans_without_coordinates_rejected() {
        let (_, dist) = three_pairs();
        let err = asw_sweep(&dist, None, SweepMethod::Kmeans { nstart: 5 }, 2..=3, 1).unwrap_err();
        assert_eq!(err, Error::NeedsCoordinates);
    }

    #[test]
    fn per_k_covers_requested_range() {
        let (data, dist) = three_pairs();
        let res =
            asw_sweep(&dist, Some(&data), SweepMethod::Kmeans { nstart: 10 }, 2..=5, 7).unwrap();
        let ks: Vec<usize> = res.per_k.iter().map(|&(k, _)| k).collect();
        assert_eq!(ks, [2, 3, 4, 5]);
    }
}
