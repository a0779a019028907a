//! Silhouette widths, average silhouette width (ASW), and the incremental
//! cluster cache used to evaluate candidate merges cheaply.
//!
//! For observation i in cluster l(i), a(i) is the mean distance to the other
//! members of its cluster and b(i) the minimum over other clusters r of the
//! mean distance to cluster r. The silhouette width is
//! (b(i) - a(i)) / max{a(i), b(i)}, and the ASW is its mean over all points.
//!
//! Singletons get silhouette 0 (a(i) is undefined there); a point with
//! a(i) == b(i) also gets 0.

use alloc::vec;
use alloc::vec::Vec;

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};

/// A flat partition: per-observation cluster label in 0..k, no empty clusters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    labels: Vec<usize>,
    k: usize,
    sizes: Vec<usize>,
}

impl Labeling {
    /// Builds a labeling from 0-based labels; every cluster in 0..k must be
    /// nonempty.
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidK { k, min: 1, max: labels.len() });
        }
        let mut sizes = vec![0usize; k];
        for (i, &l) in labels.iter().enumerate() {
            if l >= k {
                return Err(Error::LabelOutOfRange { index: i, label: l, k });
            }
            sizes[l] += 1;
        }
        if let Some(c) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::EmptyCluster { cluster: c });
        }
        Ok(Labeling { labels, k, sizes })
    }

    /// Relabels arbitrary integers to contiguous 0..k in first-appearance order.
    pub fn from_raw(raw: &[i64]) -> Result<Self> {
        let mut map: Vec<i64> = Vec::new();
        let mut labels = Vec::with_capacity(raw.len());
        for &v in raw {
            let l = match map.iter().position(|&m| m == v) {
                Some(l) => l,
                None => {
                    map.push(v);
                    map.len() - 1
                }
            };
            labels.push(l);
        }
        Labeling::new(labels, map.len())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    /// The labeling with clusters r and s replaced by their union, relabeled
    /// to contiguous 0..k-1 in first-appearance order.
    pub fn merged(&self, r: usize, s: usize) -> Result<Labeling> {
        check_merge_args(self.k, r, s)?;
        let (lo, hi) = if r < s { (r, s) } else { (s, r) };
        let labels = self
            .labels
            .iter()
            .map(|&l| {
                if l == hi {
                    lo
                } else if l > hi {
                    l - 1
                } else {
                    l
                }
            })
            .collect();
        Labeling::new(labels, self.k - 1)
    }
}

fn check_merge_args(k: usize, r: usize, s: usize) -> Result<()> {
    if r == s {
        return Err(Error::SelfMerge { cluster: r });
    }
    let hi = r.max(s);
    if hi >= k {
        return Err(Error::InvalidK { k: hi, min: 0, max: k - 1 });
    }
    Ok(())
}

/// Per-point silhouette widths and their mean.
#[derive(Debug, Clone, PartialEq)]
pub struct SilhouetteReport {
    pub per_point: Vec<f64>,
    pub asw: f64,
}

#[inline]
fn silhouette_value(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (b - a) / a.max(b)
    }
}

/// Number of "other cluster" slots tracked per point; merge evaluation
/// excludes at most two clusters, so three smallest means always suffice.
const NEAR: usize = 3;

/// Per-observation sums of distances to each current cluster.
///
/// `sums[i * k + r]` is the total distance from point i to the members of
/// cluster r (including d(i, i) = 0 for its own cluster), so mean distances
/// to any cluster are O(1). The cache additionally keeps, per point, the
/// three smallest mean distances to other clusters, which makes a candidate
/// merge evaluable in O(n) regardless of k.
#[derive(Debug, Clone)]
pub struct ClusterCache {
    labels: Labeling,
    sums: Vec<f64>,
    // Per point: mean within-cluster distance a(i) (0.0 for singletons) and
    // the NEAR smallest (mean distance, cluster) pairs over clusters != l(i).
    a: Vec<f64>,
    near_val: Vec<[f64; NEAR]>,
    near_idx: Vec<[usize; NEAR]>,
}

impl ClusterCache {
    pub fn labels(&self) -> &Labeling {
        &self.labels
    }

    pub fn k(&self) -> usize {
        self.labels.k()
    }

    pub fn n(&self) -> usize {
        self.labels.n()
    }

    /// Sum of distances from point i to the members of cluster r.
    pub fn sum(&self, i: usize, r: usize) -> f64 {
        self.sums[i * self.k() + r]
    }

    fn refresh_point_stats(&mut self) {
        let n = self.n();
        let k = self.k();
        for i in 0..n {
            let li = self.labels.label(i);
            let row = &self.sums[i * k..(i + 1) * k];
            let size_li = self.labels.sizes()[li];
            self.a[i] = if size_li >= 2 { row[li] / (size_li - 1) as f64 } else { 0.0 };
            let mut vals = [f64::INFINITY; NEAR];
            let mut idxs = [usize::MAX; NEAR];
            for r in 0..k {
                if r == li {
                    continue;
                }
                let m = row[r] / self.labels.sizes()[r] as f64;
                // insertion into the sorted top-NEAR list
                let mut j = NEAR;
                while j > 0 && m < vals[j - 1] {
                    j -= 1;
                }
                if j < NEAR {
                    for t in (j + 1..NEAR).rev() {
                        vals[t] = vals[t - 1];
                        idxs[t] = idxs[t - 1];
                    }
                    vals[j] = m;
                    idxs[j] = r;
                }
            }
            self.near_val[i] = vals;
            self.near_idx[i] = idxs;
        }
    }

    /// Smallest cached mean distance from point i to a cluster not in
    /// {skip_a, skip_b}; infinite when no such cluster exists.
    #[inline]
    fn min_excluding(&self, i: usize, skip_a: usize, skip_b: usize) -> f64 {
        let vals = &self.near_val[i];
        let idxs = &self.near_idx[i];
        for t in 0..NEAR {
            if idxs[t] != skip_a && idxs[t] != skip_b {
                return vals[t];
            }
        }
        f64::INFINITY
    }

    /// Merges clusters r and s in place: the merged column is the elementwise
    /// sum of the former columns, labels are relabeled to contiguous 0..k-1
    /// in first-appearance order, and per-point stats are refreshed. O(n·k).
    pub fn apply_merge(&mut self, r: usize, s: usize) -> Result<()> {
        let k = self.k();
        if k < 3 {
            return Err(Error::InvalidK { k: k - 1, min: 2, max: self.n() - 1 });
        }
        check_merge_args(k, r, s)?;
        let (lo, hi) = if r < s { (r, s) } else { (s, r) };
        let n = self.n();
        let mut new_sums = Vec::with_capacity(n * (k - 1));
        for i in 0..n {
            let row = &self.sums[i * k..(i + 1) * k];
            for c in 0..k {
                if c == hi {
                    continue;
                }
                new_sums.push(if c == lo { row[lo] + row[hi] } else { row[c] });
            }
        }
        self.sums = new_sums;
        self.labels = self.labels.merged(lo, hi)?;
        self.refresh_point_stats();
        Ok(())
    }
}

/// Populates the per-point distance sums for `labels`. O(n²).
pub fn build_cache(dist: &DistanceMatrix, labels: &Labeling) -> Result<ClusterCache> {
    let n = dist.n();
    if labels.n() != n {
        return Err(Error::LengthMismatch { left: labels.n(), right: n });
    }
    let k = labels.k();
    if k < 2 {
        return Err(Error::InvalidK { k, min: 2, max: n - 1 });
    }
    let mut sums = vec![0.0f64; n * k];
    let cond = dist.condensed();
    let lab = labels.labels();
    let mut idx = 0;
    for i in 0..n {
        for h in (i + 1)..n {
            let d = cond[idx];
            idx += 1;
            sums[i * k + lab[h]] += d;
            sums[h * k + lab[i]] += d;
        }
    }
    let mut cache = ClusterCache {
        labels: labels.clone(),
        sums,
        a: vec![0.0; n],
        near_val: vec![[f64::INFINITY; NEAR]; n],
        near_idx: vec![[usize::MAX; NEAR]; n],
    };
    cache.refresh_point_stats();
    Ok(cache)
}

/// Per-point silhouettes and ASW for a labeling with 2 <= k <= n-1.
pub fn silhouette_report(dist: &DistanceMatrix, labels: &Labeling) -> Result<SilhouetteReport> {
    let n = dist.n();
    let k = labels.k();
    if k < 2 || k > n.saturating_sub(1) {
        return Err(Error::InvalidK { k, min: 2, max: n.saturating_sub(1) });
    }
    let cache = build_cache(dist, labels)?;
    Ok(report_from_cache(&cache))
}

pub(crate) fn report_from_cache(cache: &ClusterCache) -> SilhouetteReport {
    let n = cache.n();
    let mut per_point = Vec::with_capacity(n);
    let mut total = 0.0;
    for i in 0..n {
        let li = cache.labels.label(i);
        let s = if cache.labels.sizes()[li] < 2 {
            0.0
        } else {
            silhouette_value(cache.a[i], cache.near_val[i][0])
        };
        per_point.push(s);
        total += s;
    }
    SilhouetteReport { per_point, asw: total / n as f64 }
}

/// ASW of the labeling obtained by replacing clusters r and s with their
/// union, computed from the cache without mutating it. O(n).
///
/// Requires k >= 3 so that the merged labeling still has at least two
/// clusters.
pub fn eval_merge_candidate(cache: &ClusterCache, r: usize, s: usize) -> Result<f64> {
    let k = cache.k();
    if k < 3 {
        return Err(Error::InvalidK { k: k - 1, min: 2, max: cache.n() - 1 });
    }
    check_merge_args(k, r, s)?;
    let n = cache.n();
    let sizes = cache.labels.sizes();
    let merged_size = sizes[r] + sizes[s];
    let mut total = 0.0;
    for i in 0..n {
        let li = cache.labels.label(i);
        let row = &cache.sums[i * k..(i + 1) * k];
        let s_i = if li == r || li == s {
            // Point joins the merged cluster; size >= 2 always.
            let a = (row[r] + row[s]) / (merged_size - 1) as f64;
            let other = if li == r { s } else { r };
            let b = cache.min_excluding(i, other, usize::MAX);
            silhouette_value(a, b)
        } else if sizes[li] < 2 {
            0.0
        } else {
            let a = cache.a[i];
            let merged_mean = (row[r] + row[s]) / merged_size as f64;
            let b = cache.min_excluding(i, r, s).min(merged_mean);
            silhouette_value(a, b)
        };
        total += s_i;
    }
    Ok(total / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{pairwise_distances, DataMatrix, Metric};

    fn dist_1d(points: &[f64]) -> DistanceMatrix {
        let data = DataMatrix::new(points.len(), 1, points.to_vec()).unwrap();
        pairwise_distances(&data, Metric::Euclidean).unwrap()
    }

    #[test]
    fn four_point_example() {
        let dist = dist_1d(&[0.0, 1.0, 10.0, 11.0]);
        let labels = Labeling::new(vec![0, 0, 1, 1], 2).unwrap();
        let rep = silhouette_report(&dist, &labels).unwrap();
        let expected = [9.5 / 10.5, 8.5 / 9.5, 8.5 / 9.5, 9.5 / 10.5];
        for (got, want) in rep.per_point.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!((rep.asw - expected.iter().sum::<f64>() / 4.0).abs() < 1e-12);
        assert!((rep.asw - 0.899749).abs() < 1e-6);
        assert!((rep.per_point[0] - 0.904762).abs() < 1e-6);
        assert!((rep.per_point[1] - 0.894737).abs() < 1e-6);
    }

    #[test]
    fn singleton_gets_zero() {
        let dist = dist_1d(&[0.0, 5.0, 6.0]);
        let labels = Labeling::new(vec![0, 1, 1], 2).unwrap();
        let rep = silhouette_report(&dist, &labels).unwrap();
        assert_eq!(rep.per_point[0], 0.0);
        // S_2: a = 1, b = 5; S_3: a = 1, b = 6.
        assert!((rep.per_point[1] - 4.0 / 5.0).abs() < 1e-12);
        assert!((rep.per_point[2] - 5.0 / 6.0).abs() < 1e-12);
        assert!((rep.asw - (0.0 + 4.0 / 5.0 + 5.0 / 6.0) / 3.0).abs() < 1e-12);
    }

    #[test]
    fn equal_a_b_gives_zero() {
        assert_eq!(silhouette_value(2.5, 2.5), 0.0);
        assert_eq!(silhouette_value(0.0, 0.0), 0.0);
    }

    #[test]
    fn k_out_of_range_rejected() {
        let dist = dist_1d(&[0.0, 1.0, 2.0]);
        let one = Labeling::new(vec![0, 0, 0], 1).unwrap();
        assert!(silhouette_report(&dist, &one).is_err());
        let all = Labeling::new(vec![0, 1, 2], 3).unwrap();
        assert!(silhouette_report(&dist, &all).is_err());
    }

    #[test]
    fn two_point_cache_sums() {
        let dist = dist_1d(&[0.0, 3.0]);
        let labels = Labeling::new(vec![0, 1], 2).unwrap();
        let cache = build_cache(&dist, &labels).unwrap();
        assert_eq!(cache.sum(0, 0), 0.0);
        assert_eq!(cache.sum(0, 1), 3.0);
        assert_eq!(cache.sum(1, 0), 3.0);
        assert_eq!(cache.sum(1, 1), 0.0);
    }

    #[test]
    fn merge_candidate_matches_direct_evaluation() {
        let dist = dist_1d(&[0.0, 1.0, 10.0, 11.0, 20.0, 21.0]);
        let labels = Labeling::new(vec![0, 0, 1, 1, 2, 2], 3).unwrap();
        let cache = build_cache(&dist, &labels).unwrap();
        let asw = eval_merge_candidate(&cache, 1, 2).unwrap();
        let merged = labels.merged(1, 2).unwrap();
        let direct = silhouette_report(&dist, &merged).unwrap();
        assert!((asw - direct.asw).abs() < 1e-10);
    }

    #[test]
    fn merge_of_singletons_matches_direct_evaluation() {
        let dist = dist_1d(&[0.0, 1.0, 10.0, 20.0]);
        let labels = Labeling::new(vec![0, 0, 1, 2], 3).unwrap();
        let cache = build_cache(&dist, &labels).unwrap();
        let asw = eval_merge_candidate(&cache, 1, 2).unwrap();
        let direct = silhouette_report(&dist, &labels.merged(1, 2).unwrap()).unwrap();
        assert!((asw - direct.asw).abs() < 1e-10);
    }

    #[test]
    fn merge_to_single_cluster_rejected() {
        let dist = dist_1d(&[0.0, 1.0, 10.0, 11.0]);
        let labels = Labeling::new(vec![0, 0, 1, 1], 2).unwrap();
        let cache = build_cache(&dist, &labels).unwrap();
        assert!(eval_merge_candidate(&cache, 0, 1).is_err());
        assert!(eval_merge_candidate(&cache, 0, 0).is_err());
    }

    #[test]
    fn apply_merge_matches_rebuild() {
        let dist = dist_1d(&[0.0, 1.0, 10.0, 11.0, 20.0, 21.0]);
        let labels = Labeling::new(vec![0, 0, 1, 1, 2, 2], 3).unwrap();
        let mut cache = build_cache(&dist, &labels).unwrap();
        cache.apply_merge(1, 2).unwrap();
        let rebuilt = build_cache(&dist, cache.labels()).unwrap();
        assert_eq!(cache.labels(), rebuilt.labels());
        for i in 0..6 {
            for r in 0..2 {
                assert!((cache.sum(i, r) - rebuilt.sum(i, r)).abs() < 1e-12);
            }
        }
        let max = cache.labels().labels().iter().max().copied().unwrap();
        assert_eq!(max, 1);
    }

    #[test]
    fn relabel_first_appearance_order() {
        let labels = Labeling::new(vec![0, 1, 2, 3], 4).unwrap();
        let merged = labels.merged(1, 3).unwrap();
        assert_eq!(merged.labels(), &[0, 1, 2, 1]);
        assert_eq!(merged.k(), 3);
    }

    #[test]
    fn from_raw_relabels() {
        let l = Labeling::from_raw(&[7, 7, -2, 9, -2]).unwrap();
        assert_eq!(l.labels(), &[0, 0, 1, 2, 1]);
        assert_eq!(l.k(), 3);
    }
}
