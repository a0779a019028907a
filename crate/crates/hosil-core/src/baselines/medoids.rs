//! PAM (partitioning around medoids) and PAMSIL, its ASW-maximizing
//! variant.
//!
//! Both start from the greedy BUILD phase. PAM's SWAP phase applies the
//! best strictly-improving (medoid, non-medoid) exchange by total distance
//! to the nearest medoid; PAMSIL applies the exchange maximizing the ASW of
//! the induced labeling instead.

use alloc::vec;
use alloc::vec::Vec;

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::silhouette::{silhouette_report, Labeling};

/// Guard against cycling on floating-point noise when comparing objectives.
const IMPROVE_EPS: f64 = 1e-12;

/// k distinct medoid indices and the labeling they induce (each point to
/// its nearest medoid, ties toward the smaller medoid index).
#[derive(Debug, Clone, PartialEq)]
pub struct MedoidSet {
    pub medoids: Vec<usize>,
    pub labeling: Labeling,
    /// Sum of distances to the nearest medoid.
    pub cost: f64,
}

fn induced_labeling(dist: &DistanceMatrix, medoids: &[usize]) -> Result<(Labeling, f64)> {
    let n = dist.n();
    let mut sorted = medoids.to_vec();
    sorted.sort_unstable();
    let mut labels = vec![0usize; n];
    let mut cost = 0.0;
    for i in 0..n {
        // A medoid belongs to its own cluster even under zero-distance ties.
        if let Some(c) = sorted.iter().position(|&m| m == i) {
            labels[i] = c;
            continue;
        }
        let mut bc = 0;
        let mut bd = f64::INFINITY;
        for (c, &m) in sorted.iter().enumerate() {
            let d = dist.lookup(i, m);
            if d < bd {
                bd = d;
                bc = c;
            }
        }
        labels[i] = bc;
        cost += bd;
    }
    Ok((Labeling::new(labels, sorted.len())?, cost))
}

/// Greedy BUILD phase: starts from the point minimizing total distance to
/// all others and adds the point giving the largest cost reduction.
fn build_phase(dist: &DistanceMatrix, k: usize) -> Vec<usize> {
    let n = dist.n();
    let first = (0..n)
        .min_by(|&a, &b| {
            let ta: f64 = (0..n).map(|h| dist.lookup(a, h)).sum();
            let tb: f64 = (0..n).map(|h| dist.lookup(b, h)).sum();
            ta.partial_cmp(&tb).unwrap()
        })
        .unwrap();
    let mut medoids = vec![first];
    let mut nearest: Vec<f64> = (0..n).map(|i| dist.lookup(i, first)).collect();
    while medoids.len() < k {
        let mut best = (f64::NEG_INFINITY, usize::MAX);
        for cand in 0..n {
            if medoids.contains(&cand) {
                continue;
            }
            let gain: f64 =
                (0..n).map(|i| (nearest[i] - dist.lookup(i, cand)).max(0.0)).sum();
            if gain > best.0 {
                best = (gain, cand);
            }
        }
        let chosen = best.1;
        medoids.push(chosen);
        for i in 0..n {
            nearest[i] = nearest[i].min(dist.lookup(i, chosen));
        }
    }
    medoids
}

/// PAM: BUILD then best-improvement SWAP on total distance to the nearest
/// medoid.
pub fn pam(dist: &DistanceMatrix, k: usize) -> Result<MedoidSet> {
    let n = dist.n();
    if k < 1 || k > n {
        return Err(Error::InvalidK { k, min: 1, max: n });
    }
    let mut medoids = build_phase(dist, k);
    let (_, mut cost) = induced_labeling(dist, &medoids)?;
    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for mi in 0..k {
            for cand in 0..n {
                if medoids.contains(&cand) {
                    continue;
                }
                let mut trial = medoids.clone();
                trial[mi] = cand;
                let (_, c) = induced_labeling(dist, &trial)?;
                let better = match best {
                    None => c < cost - IMPROVE_EPS,
                    Some((bc, _, _)) => c < bc - IMPROVE_EPS,
                };
                if better {
                    best = Some((c, mi, cand));
                }
            }
        }
        match best {
            Some((c, mi, cand)) => {
                medoids[mi] = cand;
                cost = c;
            }
            None => break,
        }
    }
    let (labeling, cost) = induced_labeling(dist, &medoids)?;
    medoids.sort_unstable();
    Ok(MedoidSet { medoids, labeling, cost })
}

/// PAMSIL: PAM's BUILD medoids, then best-improvement SWAP on the ASW of
/// the induced labeling, iterated to a local optimum.
pub fn pamsil(dist: &DistanceMatrix, k: usize) -> Result<MedoidSet> {
    pamsil_with_trace(dist, k).map(|(m, _)| m)
}

/// PAMSIL together with the objective trace: the BUILD-phase ASW followed by
/// the ASW after each accepted swap.
pub fn pamsil_with_trace(dist: &DistanceMatrix, k: usize) -> Result<(MedoidSet, Vec<f64>)> {
    let n = dist.n();
    if k < 2 || k > n - 1 {
        return Err(Error::InvalidK { k, min: 2, max: n - 1 });
    }
    let mut medoids = build_phase(dist, k);
    let mut asw = asw_of(dist, &medoids)?;
    let mut trace = vec![asw];
    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for mi in 0..k {
            for cand in 0..n {
                if medoids.contains(&cand) {
                    continue;
                }
                let mut trial = medoids.clone();
                trial[mi] = cand;
                let a = asw_of(dist, &trial)?;
                let better = match best {
                    None => a > asw + IMPROVE_EPS,
                    Some((ba, _, _)) => a > ba + IMPROVE_EPS,
                };
                if better {
                    best = Some((a, mi, cand));
                }
            }
        }
        match best {
            Some((a, mi, cand)) => {
                medoids[mi] = cand;
                asw = a;
                trace.push(a);
            }
            None => break,
        }
    }
    let (labeling, cost) = induced_labeling(dist, &medoids)?;
    medoids.sort_unstable();
    Ok((MedoidSet { medoids, labeling, cost }, trace))
}

fn asw_of(dist: &DistanceMatrix, medoids: &[usize]) -> Result<f64> {
    let (labeling, _) = induced_labeling(dist, medoids)?;
    Ok(silhouette_report(dist, &labeling)?.asw)
}

/// ASW of the labeling induced by PAM's BUILD medoids alone; the PAMSIL
/// starting point.
pub fn build_phase_asw(dist: &DistanceMatrix, k: usize) -> Result<f64> {
    let n = dist.n();
    if k < 2 || k > n - 1 {
        return Err(Error::InvalidK { k, min: 2, max: n - 1 });
    }
    asw_of(dist, &build_phase(dist, k))
}
