//! Lloyd's k-means with seeded multi-start.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::distance::DataMatrix;
use crate::error::{Error, Result};
use crate::silhouette::Labeling;

const MAX_ITER: usize = 100;

/// Best-of-`nstart` Lloyd runs by within-cluster sum of squares,
/// deterministic given the seed. Each restart initializes centroids from k
/// distinct random observations; a cluster that empties is re-seeded from
/// the observation farthest from its centroid.
pub fn kmeans(data: &DataMatrix, k: usize, nstart: usize, seed: u64) -> Result<Labeling> {
    let n = data.n();
    if k < 1 || k > n {
        return Err(Error::InvalidK { k, min: 1, max: n });
    }
    if nstart == 0 {
        return Err(Error::InvalidParameter("nstart must be >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, Vec<usize>)> = None;
    for _ in 0..nstart {
        let init = sample(&mut rng, n, k).into_vec();
        let (wcss, labels) = lloyd(data, k, &init);
        let better = match &best {
            None => true,
            Some((bw, _)) => wcss < *bw,
        };
        if better {
            best = Some((wcss, labels));
        }
    }
    let (_, labels) = best.unwrap();
    // Lloyd never leaves empty clusters, so contiguity only needs the
    // first-appearance relabeling.
    let raw: Vec<i64> = labels.iter().map(|&l| l as i64).collect();
    Labeling::from_raw(&raw)
}

fn lloyd(data: &DataMatrix, k: usize, init: &[usize]) -> (f64, Vec<usize>) {
    let n = data.n();
    let p = data.p();
    let mut centroids = vec![0.0f64; k * p];
    for (c, &i) in init.iter().enumerate() {
        centroids[c * p..(c + 1) * p].copy_from_slice(data.row(i));
    }
    let mut labels = vec![0usize; n];
    for _ in 0..MAX_ITER {
        // Assignment step.
        let mut changed = false;
        for i in 0..n {
            let mut bc = 0;
            let mut bd = f64::INFINITY;
            for c in 0..k {
                let d = sq_dist(data.row(i), &centroids[c * p..(c + 1) * p]);
                if d < bd {
                    bd = d;
                    bc = c;
                }
            }
            if labels[i] != bc {
                labels[i] = bc;
                changed = true;
            }
        }
        // Update step.
        let mut counts = vec![0usize; k];
        let mut sums = vec![0.0f64; k * p];
        for i in 0..n {
            counts[labels[i]] += 1;
            for (j, v) in data.row(i).iter().enumerate() {
                sums[labels[i] * p + j] += v;
            }
        }
        for c in 0..k {
            if counts[c] == 0 {
                // Re-seed from the observation farthest from its centroid.
                let far = (0..n)
                    .max_by(|&x, &y| {
                        let dx = sq_dist(data.row(x), &centroids[labels[x] * p..labels[x] * p + p]);
                        let dy = sq_dist(data.row(y), &centroids[labels[y] * p..labels[y] * p + p]);
                        dx.partial_cmp(&dy).unwrap()
                    })
                    .unwrap();
                centroids[c * p..(c + 1) * p].copy_from_slice(data.row(far));
                labels[far] = c;
                changed = true;
            } else {
                for j in 0..p {
                    centroids[c * p + j] = sums[c * p + j] / counts[c] as f64;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut wcss = 0.0;
    for i in 0..n {
        wcss += sq_dist(data.row(i), &centroids[labels[i] * p..(labels[i] + 1) * p]);
    }
    (wcss, labels)
}

#[inline]
fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        acc += d * d;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_one_is_single_cluster() {
        let data = DataMatrix::new(4, 1, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let l = kmeans(&data, 1, 5, 42).unwrap();
        assert_eq!(l.k(), 1);
        assert_eq!(l.sizes(), &[4]);
    }

    #[test]
    fn two_tight_pairs_recovered() {
        let data = DataMatrix::new(4, 1, vec![0.0, 1.0, 10.0, 11.0]).unwrap();
        let l = kmeans(&data, 2, 20, 7).unwrap();
        assert_eq!(l.labels()[0], l.labels()[1]);
        assert_eq!(l.labels()[2], l.labels()[3]);
        assert_ne!(l.labels()[0], l.labels()[2]);
        // WCSS with centroids at 0.5 and 10.5 is 4 * 0.25.
        let (wcss, _) = lloyd(&data, 2, &[0, 2]);
        assert!((wcss - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k_equals_n_zero_wcss() {
        let data = DataMatrix::new(4, 1, vec![0.0, 1.0, 10.0, 11.0]).unwrap();
        let l = kmeans(&data, 4, 5, 3).unwrap();
        assert_eq!(l.k(), 4);
        assert_eq!(l.sizes(), &[1, 1, 1, 1]);
    }

    #[test]
    fn deterministic_given_seed() {
        let data = DataMatrix::new(6, 1, vec![0.0, 1.0, 10.0, 11.0, 20.0, 21.0]).unwrap();
        let a = kmeans(&data, 3, 10, 99).unwrap();
        let b = kmeans(&data, 3, 10, 99).unwrap();
        assert_eq!(a, b);
    }
}
