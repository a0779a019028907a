//! The HOSil algorithm: greedy ASW-maximizing agglomeration.
//!
//! Starting from singletons, the two closest observations are joined first
//! (ASW is undefined while every cluster is a singleton). From then on,
//! every unordered cluster pair is tried at each level and the pair whose
//! union gives the highest ASW is merged, until two clusters remain or a
//! requested cluster count is reached. The level with the maximal ASW gives
//! the best number of clusters.

use alloc::vec::Vec;

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::silhouette::{build_cache, eval_merge_candidate, report_from_cache, Labeling};

/// Two candidate ASW values within this of each other are treated as tied;
/// the lexicographically smallest cluster pair wins.
const TIE_EPS: f64 = 1e-12;

/// One hierarchy level: the state after its merge.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeRecord {
    /// Hierarchy level, 2..=n-1.
    pub level: usize,
    /// Cluster count at this level; k = n - level + 1.
    pub k: usize,
    /// Cluster pair merged to reach this state. `None` at level 2, where
    /// `joined_observations` records the initial nearest-observation join.
    pub merged_pair: Option<(usize, usize)>,
    /// Observation pair joined at level 2.
    pub joined_observations: Option<(usize, usize)>,
    /// ASW of the labeling at this level.
    pub asw: f64,
    pub labels: Labeling,
}

/// Ordered merge records from k = n-1 down to k = 2 (or a stop level).
#[derive(Debug, Clone, PartialEq)]
pub struct Hierarchy {
    pub records: Vec<MergeRecord>,
    /// True when the run was stopped before reaching k = 2; best-k is then
    /// computed over the available levels only.
    pub truncated: bool,
}

impl Hierarchy {
    pub fn n(&self) -> usize {
        self.records.first().map(|r| r.labels.n()).unwrap_or(0)
    }

    /// Labeling at cluster count k, if that level was computed.
    pub fn labels_at(&self, k: usize) -> Option<&Labeling> {
        self.records.iter().find(|r| r.k == k).map(|r| &r.labels)
    }
}

/// The k with maximal ASW over the hierarchy's levels; ties go to the
/// smaller k.
pub fn best_k(h: &Hierarchy) -> Result<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for rec in &h.records {
        best = Some(match best {
            None => (rec.k, rec.asw),
            Some((bk, basw)) => {
                if rec.asw > basw || (rec.asw == basw && rec.k < bk) {
                    (rec.k, rec.asw)
                } else {
                    (bk, basw)
                }
            }
        });
    }
    best.ok_or(Error::TooFewObservations { n: 0, min: 1 })
}

/// Builds the HOSil hierarchy for `dist`.
///
/// `stop_at_k` truncates the run once that cluster count is reached;
/// without it the hierarchy covers k = n-1 down to k = 2. Requires n >= 4
/// and a not identically-zero distance matrix.
pub fn hosil(dist: &DistanceMatrix, stop_at_k: Option<usize>) -> Result<Hierarchy> {
    let n = dist.n();
    if n < 4 {
        return Err(Error::TooFewObservations { n, min: 4 });
    }
    if dist.is_identically_zero() {
        return Err(Error::DegenerateDistances);
    }
    let stop = match stop_at_k {
        Some(k) if k < 2 || k > n - 1 => {
            return Err(Error::InvalidK { k, min: 2, max: n - 1 })
        }
        Some(k) => k,
        None => 2,
    };

    // Initial join: the observation pair at minimum distance, smallest
    // (i, h) on ties.
    let (mut ji, mut jh, mut jd) = (0, 1, f64::INFINITY);
    for i in 0..n {
        for h in (i + 1)..n {
            let d = dist.lookup(i, h);
            if d < jd {
                (ji, jh, jd) = (i, h, d);
            }
        }
    }
    let mut raw: Vec<i64> = (0..n as i64).collect();
    raw[jh] = ji as i64;
    let labels = Labeling::from_raw(&raw)?;

    let mut cache = build_cache(dist, &labels)?;
    let mut level = 2;
    let mut records = Vec::with_capacity(n - 2);
    records.push(MergeRecord {
        level,
        k: n - 1,
        merged_pair: None,
        joined_observations: Some((ji, jh)),
        asw: report_from_cache(&cache).asw,
        labels,
    });

    while cache.k() > stop && cache.k() > 2 {
        let k = cache.k();
        let mut best = (f64::NEG_INFINITY, 0usize, 0usize);
        for i in 0..k {
            for j in (i + 1)..k {
                let f = eval_merge_candidate(&cache, i, j)?;
                if f > best.0 + TIE_EPS {
                    best = (f, i, j);
                }
            }
        }
        cache.apply_merge(best.1, best.2)?;
        level += 1;
        records.push(MergeRecord {
            level,
            k: k - 1,
            merged_pair: Some((best.1, best.2)),
            joined_observations: None,
            asw: best.0,
            labels: cache.labels().clone(),
        });
    }

    Ok(Hierarchy { records, truncated: stop > 2 })
}

/// A node of the merge tree. Leaves carry an observation id; internal nodes
/// carry the ASW height of the level that created them and a flag marking a
/// drop in ASW relative to the previous level.
#[derive(Debug, Clone, PartialEq)]
pub enum Dendrogram {
    Leaf {
        id: usize,
    },
    Node {
        children: Vec<Dendrogram>,
        height: f64,
        decreasing: bool,
    },
}

impl Dendrogram {
    pub fn leaf_count(&self) -> usize {
        match self {
            Dendrogram::Leaf { .. } => 1,
            Dendrogram::Node { children, .. } => children.iter().map(|c| c.leaf_count()).sum(),
        }
    }

    /// Internal node count, including the root.
    pub fn internal_count(&self) -> usize {
        match self {
            Dendrogram::Leaf { .. } => 0,
            Dendrogram::Node { children, .. } => {
                1 + children.iter().map(|c| c.internal_count()).sum::<usize>()
            }
        }
    }

    /// Levels flagged as decreasing, gathered over the whole tree.
    pub fn decreasing_count(&self) -> usize {
        match self {
            Dendrogram::Leaf { .. } => 0,
            Dendrogram::Node { children, decreasing, .. } => {
                usize::from(*decreasing)
                    + children.iter().map(|c| c.decreasing_count()).sum::<usize>()
            }
        }
    }
}

/// Merge tree over the full hierarchy, node heights being the per-level ASW
/// values. The final two clusters are joined under a synthetic root at the
/// k = 2 height. Heights need not be monotone; a node whose ASW is below the
/// previous level's is flagged `decreasing`.
pub fn to_dendrogram(h: &Hierarchy) -> Result<Dendrogram> {
    if h.truncated {
        return Err(Error::TruncatedHierarchy);
    }
    let first = h.records.first().ok_or(Error::TooFewObservations { n: 0, min: 4 })?;
    let n = first.labels.n();

    // Nodes indexed by current cluster label, maintained level by level.
    let (ji, jh) = first.joined_observations.ok_or(Error::TruncatedHierarchy)?;
    let mut nodes: Vec<Dendrogram> = Vec::with_capacity(n - 1);
    // Cluster labels at level 2 follow first-appearance order: the joined
    // pair shares the label of its earlier member.
    for i in 0..n {
        if i == jh {
            continue;
        }
        if i == ji {
            nodes.push(Dendrogram::Node {
                children: alloc::vec![Dendrogram::Leaf { id: ji }, Dendrogram::Leaf { id: jh }],
                height: first.asw,
                decreasing: false,
            });
        } else {
            nodes.push(Dendrogram::Leaf { id: i });
        }
    }

    let mut prev_asw = first.asw;
    for rec in &h.records[1..] {
        let (r, s) = rec.merged_pair.ok_or(Error::TruncatedHierarchy)?;
        let (lo, hi) = if r < s { (r, s) } else { (s, r) };
        let right = nodes.remove(hi);
        let left = core::mem::replace(&mut nodes[lo], Dendrogram::Leaf { id: usize::MAX });
        nodes[lo] = Dendrogram::Node {
            children: alloc::vec![left, right],
            height: rec.asw,
            decreasing: rec.asw < prev_asw,
        };
        prev_asw = rec.asw;
    }

    // Two clusters remain; join them under a synthetic root at the final
    // level's height (ASW is undefined at k = 1).
    debug_assert_eq!(nodes.len(), 2);
    let right = nodes.pop().unwrap();
    let left = nodes.pop().unwrap();
    Ok(Dendrogram::Node {
        children: alloc::vec![left, right],
        height: prev_asw,
        decreasing: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{pairwise_distances, DataMatrix, Metric};
    use alloc::vec;

    fn dist_1d(points: &[f64]) -> DistanceMatrix {
        let data = DataMatrix::new(points.len(), 1, points.to_vec()).unwrap();
        pairwise_distances(&data, Metric::Euclidean).unwrap()
    }

    fn fig1_hierarchy() -> Hierarchy {
        // Published per-level ASW sequence of a 12-point demo run; labels
        // are placeholders since only (k, asw) matters for selection.
        let seq = [
            (11, 0.0613),
            (10, 0.2014),
            (9, 0.3177),
            (8, 0.3811),
            (7, 0.5049),
            (6, 0.5496),
            (5, 0.7117),
            (4, 0.7218),
            (3, 0.6408),
            (2, 0.6080),
        ];
        let n = 12;
        let records = seq
            .iter()
            .enumerate()
            .map(|(idx, &(k, asw))| {
                let mut raw: Vec<i64> = (0..n as i64).collect();
                for v in raw.iter_mut().skip(k) {
                    *v = 0;
                }
                MergeRecord {
                    level: idx + 2,
                    k,
                    merged_pair: if idx == 0 { None } else { Some((0, 1)) },
                    joined_observations: if idx == 0 { Some((0, 11)) } else { None },
                    asw,
                    labels: Labeling::from_raw(&raw).unwrap(),
                }
            })
            .collect();
        Hierarchy { records, truncated: false }
    }

    #[test]
    fn three_pairs_best_k() {
        let dist = dist_1d(&[0.0, 1.0, 10.0, 11.0, 20.0, 21.0]);
        let h = hosil(&dist, None).unwrap();
        let ks: Vec<usize> = h.records.iter().map(|r| r.k).collect();
        assert_eq!(ks, vec![5, 4, 3, 2]);
        let (k, asw) = best_k(&h).unwrap();
        assert_eq!(k, 3);
        assert!((asw - 0.898079).abs() < 1e-6);
        let labels = h.labels_at(3).unwrap();
        assert_eq!(labels.labels(), &[0, 0, 1, 1, 2, 2]);
    }

    #[test]
    fn fig1_sequence_selects_four() {
        let h = fig1_hierarchy();
        let (k, asw) = best_k(&h).unwrap();
        assert_eq!(k, 4);
        assert!((asw - 0.7218).abs() < 1e-12);
    }

    #[test]
    fn fig1_dendrogram_flags() {
        let h = fig1_hierarchy();
        let d = to_dendrogram(&h).unwrap();
        // ASW drops exactly at the k=3 and k=2 levels.
        assert_eq!(d.decreasing_count(), 2);
    }

    #[test]
    fn best_k_tie_goes_to_smaller_k() {
        let mut h = fig1_hierarchy();
        h.records[7].asw = 0.7117; // tie with k=5
        let (k, _) = best_k(&h).unwrap();
        assert_eq!(k, 4);
    }

    #[test]
    fn stop_at_k_truncates() {
        let dist = dist_1d(&[0.0, 1.0, 10.0, 11.0, 20.0, 21.0]);
        let h = hosil(&dist, Some(4)).unwrap();
        assert!(h.truncated);
        assert_eq!(h.records.last().unwrap().k, 4);
        assert!(to_dendrogram(&h).is_err());
    }

    #[test]
    fn small_and_degenerate_inputs_rejected() {
        let dist = dist_1d(&[0.0, 1.0, 2.0]);
        assert!(hosil(&dist, None).is_err());
        let zero = DistanceMatrix::from_condensed(vec![0.0; 6]).unwrap();
        assert!(hosil(&zero, None).is_err());
    }

    #[test]
    fn four_point_dendrogram_shape() {
        let dist = dist_1d(&[0.0, 1.0, 10.0, 11.5]);
        let h = hosil(&dist, None).unwrap();
        let d = to_dendrogram(&h).unwrap();
        assert_eq!(d.leaf_count(), 4);
        assert_eq!(d.internal_count(), 3);
    }

    #[test]
    fn recorded_asw_matches_direct_report() {
        let dist = dist_1d(&[0.0, 1.5, 3.0, 10.0, 11.0, 20.0, 22.0, 30.0]);
        let h = hosil(&dist, None).unwrap();
        for rec in &h.records {
            let direct = crate::silhouette::silhouette_report(&dist, &rec.labels).unwrap();
            assert!((rec.asw - direct.asw).abs() < 1e-10);
        }
    }
}
