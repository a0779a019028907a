//! Agglomerative clustering under the Lance–Williams recurrence.
//!
//! The output is a stepwise merge tree: step t merges two clusters into a
//! new cluster with id n + t, leaves having ids 0..n. Ward's method follows
//! the "ward.D2" convention: the recurrence runs on squared distances and
//! merge heights are reported as square roots.

use alloc::vec;
use alloc::vec::Vec;

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::silhouette::Labeling;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkageKind {
    Single,
    Complete,
    Average,
    WardD2,
    McQuitty,
}

/// One merge: cluster ids `a` < `b` joined at `height` into a cluster of
/// `size` observations.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeStep {
    pub a: usize,
    pub b: usize,
    pub height: f64,
    pub size: usize,
}

/// Full agglomeration history over n observations (n - 1 steps).
#[derive(Debug, Clone, PartialEq)]
pub struct MergeTree {
    pub n: usize,
    pub steps: Vec<MergeStep>,
}

impl MergeTree {
    /// Labeling after the first n - k merges, i.e. with k clusters, labeled
    /// in first-appearance order.
    pub fn cut(&self, k: usize) -> Result<Labeling> {
        let n = self.n;
        if k < 1 || k > n {
            return Err(Error::InvalidK { k, min: 1, max: n });
        }
        // Union-find over leaf and step ids.
        let mut parent: Vec<usize> = (0..n + self.steps.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (t, step) in self.steps.iter().take(n - k).enumerate() {
            let ra = find(&mut parent, step.a);
            let rb = find(&mut parent, step.b);
            parent[ra] = n + t;
            parent[rb] = n + t;
        }
        let raw: Vec<i64> = (0..n).map(|i| find(&mut parent, i) as i64).collect();
        Labeling::from_raw(&raw)
    }
}

/// Standard agglomerative clustering of `dist` under the chosen linkage.
pub fn linkage_cluster(dist: &DistanceMatrix, kind: LinkageKind) -> Result<MergeTree> {
    let n = dist.n();
    // Working inter-cluster distances, full square matrix for simplicity;
    // Ward operates on squares.
    let squared = kind == LinkageKind::WardD2;
    let mut work = vec![0.0f64; n * n];
    for i in 0..n {
        for h in (i + 1)..n {
            let d = dist.lookup(i, h);
            let w = if squared { d * d } else { d };
            work[i * n + h] = w;
            work[h * n + i] = w;
        }
    }
    // active[c] = Some((tree id, size)) while cluster slot c is alive.
    let mut active: Vec<Option<(usize, usize)>> = (0..n).map(|i| Some((i, 1))).collect();
    let mut steps = Vec::with_capacity(n - 1);
    for t in 0..n - 1 {
        // Closest active pair, lexicographically smallest slots on ties.
        let mut best = (f64::INFINITY, usize::MAX, usize::MAX);
        for i in 0..n {
            if active[i].is_none() {
                continue;
            }
            for j in (i + 1)..n {
                if active[j].is_none() {
                    continue;
                }
                let w = work[i * n + j];
                if w < best.0 {
                    best = (w, i, j);
                }
            }
        }
        let (wij, i, j) = best;
        let (id_i, ni) = active[i].unwrap();
        let (id_j, nj) = active[j].unwrap();
        let (a, b) = if id_i < id_j { (id_i, id_j) } else { (id_j, id_i) };
        let height = if squared { libm::sqrt(wij) } else { wij };
        steps.push(MergeStep { a, b, height, size: ni + nj });
        // Lance–Williams update of every other active cluster against the
        // merged cluster, stored in slot i.
        for h in 0..n {
            if h == i || h == j || active[h].is_none() {
                continue;
            }
            let nh = active[h].unwrap().1;
            let dih = work[i * n + h];
            let djh = work[j * n + h];
            let new = match kind {
                LinkageKind::Single => dih.min(djh),
                LinkageKind::Complete => dih.max(djh),
                LinkageKind::Average => {
                    (ni as f64 * dih + nj as f64 * djh) / (ni + nj) as f64
                }
                LinkageKind::McQuitty => 0.5 * (dih + djh),
                LinkageKind::WardD2 => {
                    ((ni + nh) as f64 * dih + (nj + nh) as f64 * djh - nh as f64 * wij)
                        / (ni + nj + nh) as f64
                }
            };
            work[i * n + h] = new;
            work[h * n + i] = new;
        }
        active[i] = Some((n + t, ni + nj));
        active[j] = None;
    }
    Ok(MergeTree { n, steps })
}
