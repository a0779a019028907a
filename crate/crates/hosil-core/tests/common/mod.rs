#![allow(dead_code)] // each test binary uses a subset of the oracles

//! Test-only reference implementations, kept independent of the library's
//! cached evaluation path: silhouettes straight from the defining formulas,
//! a from-scratch greedy hierarchy, an MST single-linkage oracle, and
//! pair-counting Rand agreement.

use hosil_core::distance::DistanceMatrix;
use hosil_core::silhouette::Labeling;

/// Direct transcription of the silhouette formulas from the distance
/// matrix; no shared state with the implementation.
pub fn naive_silhouette(dist: &DistanceMatrix, labels: &Labeling) -> (Vec<f64>, f64) {
    let n = dist.n();
    let k = labels.k();
    let mut per_point = Vec::with_capacity(n);
    let mut sums = vec![0.0f64; k];
    for i in 0..n {
        let li = labels.label(i);
        if labels.sizes()[li] < 2 {
            per_point.push(0.0);
            continue;
        }
        // One pass accumulating the distance sum to every cluster.
        sums.iter_mut().for_each(|s| *s = 0.0);
        for h in 0..n {
            if h != i {
                sums[labels.label(h)] += dist.lookup(i, h);
            }
        }
        let a = sums[li] / (labels.sizes()[li] - 1) as f64;
        let mut b = f64::INFINITY;
        for r in 0..k {
            if r == li {
                continue;
            }
            let m = sums[r] / labels.sizes()[r] as f64;
            if m < b {
                b = m;
            }
        }
        let s = if a == b { 0.0 } else { (b - a) / a.max(b) };
        per_point.push(s);
    }
    let asw = per_point.iter().sum::<f64>() / n as f64;
    (per_point, asw)
}

/// Greedy ASW-maximizing agglomeration recomputed from scratch for every
/// candidate pair. Returns (merged pair, asw, labels) per level after the
/// initial nearest-observation join, using the same tie rule as the
/// implementation (first strictly-better beyond 1e-12 wins, scanned in
/// lexicographic pair order).
pub struct NaiveLevel {
    pub k: usize,
    pub merged: Option<(usize, usize)>,
    pub asw: f64,
    pub labels: Labeling,
}

pub fn naive_hosil(dist: &DistanceMatrix, stop_at_k: usize) -> Vec<NaiveLevel> {
    let n = dist.n();
    let mut best_pair = (0usize, 1usize);
    let mut best_d = f64::INFINITY;
    for i in 0..n {
        for h in (i + 1)..n {
            let d = dist.lookup(i, h);
            if d < best_d {
                best_d = d;
                best_pair = (i, h);
            }
        }
    }
    let mut raw: Vec<i64> = (0..n as i64).collect();
    raw[best_pair.1] = best_pair.0 as i64;
    let mut labels = Labeling::from_raw(&raw).unwrap();
    let mut levels = Vec::new();
    let (_, asw) = naive_silhouette(dist, &labels);
    levels.push(NaiveLevel { k: labels.k(), merged: None, asw, labels: labels.clone() });
    while labels.k() > stop_at_k.max(2) {
        let k = labels.k();
        let mut best = (f64::NEG_INFINITY, 0usize, 0usize);
        for i in 0..k {
            for j in (i + 1)..k {
                let cand = labels.merged(i, j).unwrap();
                let (_, f) = naive_silhouette(dist, &cand);
                if f > best.0 + 1e-12 {
                    best = (f, i, j);
                }
            }
        }
        labels = labels.merged(best.1, best.2).unwrap();
        levels.push(NaiveLevel {
            k: k - 1,
            merged: Some((best.1, best.2)),
            asw: best.0,
            labels: labels.clone(),
        });
    }
    levels
}

/// Single-linkage cut oracle: components left after deleting the k-1
/// heaviest edges of a minimum spanning tree.
pub fn mst_single_linkage_cut(dist: &DistanceMatrix, k: usize) -> Labeling {
    let n = dist.n();
    // Prim's algorithm.
    let mut in_tree = vec![false; n];
    let mut best_cost = vec![f64::INFINITY; n];
    let mut best_from = vec![0usize; n];
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(n - 1);
    in_tree[0] = true;
    for h in 1..n {
        best_cost[h] = dist.lookup(0, h);
    }
    for _ in 0..n - 1 {
        let mut u = usize::MAX;
        let mut c = f64::INFINITY;
        for h in 0..n {
            if !in_tree[h] && best_cost[h] < c {
                c = best_cost[h];
                u = h;
            }
        }
        edges.push((c, best_from[u], u));
        in_tree[u] = true;
        for h in 0..n {
            if !in_tree[h] {
                let d = dist.lookup(u, h);
                if d < best_cost[h] {
                    best_cost[h] = d;
                    best_from[h] = u;
                }
            }
        }
    }
    edges.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    // Keep the n - k lightest edges; union-find the components.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(_, a, b) in edges.iter().take(n - k) {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let raw: Vec<i64> = (0..n).map(|i| find(&mut parent, i) as i64).collect();
    Labeling::from_raw(&raw).unwrap()
}

/// Rand agreement by explicit pair counting, chance-corrected.
pub fn naive_ari(a: &Labeling, b: &Labeling) -> f64 {
    let n = a.n();
    let mut n11 = 0.0f64;
    let mut n_a = 0.0f64;
    let mut n_b = 0.0f64;
    let mut pairs = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let same_a = a.label(i) == a.label(j);
            let same_b = b.label(i) == b.label(j);
            if same_a && same_b {
                n11 += 1.0;
            }
            if same_a {
                n_a += 1.0;
            }
            if same_b {
                n_b += 1.0;
            }
            pairs += 1.0;
        }
    }
    let expected = n_a * n_b / pairs;
    let max_index = 0.5 * (n_a + n_b);
    if max_index == expected {
        let identical = (0..n).all(|i| {
            (0..n).all(|j| (a.label(i) == a.label(j)) == (b.label(i) == b.label(j)))
        });
        return if identical { 1.0 } else { 0.0 };
    }
    (n11 - expected) / (max_index - expected)
}

/// Same-partition check up to label renaming.
pub fn same_partition(a: &Labeling, b: &Labeling) -> bool {
    a.k() == b.k()
        && (0..a.n()).all(|i| {
            (0..a.n()).all(|j| (a.label(i) == a.label(j)) == (b.label(i) == b.label(j)))
        })
}
