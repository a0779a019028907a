//! Coordinate data and condensed pairwise dissimilarity matrices.
//!
//! Distances are stored condensed: the n(n-1)/2 values for pairs (i, h)
//! with i < h, in row-major pair order (0,1), (0,2), ..., (1,2), ...

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An n×p matrix of observations, one row per observation.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    n: usize,
    p: usize,
    values: Vec<f64>,
}

impl DataMatrix {
    /// Builds a data matrix from row-major values; every entry must be finite.
    pub fn new(n: usize, p: usize, values: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewObservations { n, min: 2 });
        }
        if p == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        if values.len() != n * p {
            return Err(Error::DimensionMismatch { expected: n * p, got: values.len() });
        }
        for (idx, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { row: idx / p, col: idx % p });
            }
        }
        Ok(DataMatrix { n, p, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.p..(i + 1) * self.p]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Dissimilarity metric between coordinate rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric {
    Euclidean,
    Manhattan,
    /// L_q metric with exponent q > 0; Minkowski(1) ≡ Manhattan,
    /// Minkowski(2) ≡ Euclidean.
    Minkowski(f64),
}

impl Metric {
    fn validate(&self) -> Result<()> {
        if let Metric::Minkowski(q) = self {
            if !q.is_finite() || *q <= 0.0 {
                return Err(Error::InvalidParameter("Minkowski exponent must be finite and > 0"));
            }
        }
        Ok(())
    }

    fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        match *self {
            Metric::Euclidean => {
                let mut acc = 0.0;
                for (x, y) in a.iter().zip(b) {
                    let d = x - y;
                    acc += d * d;
                }
                libm::sqrt(acc)
            }
            Metric::Manhattan => {
                let mut acc = 0.0;
                for (x, y) in a.iter().zip(b) {
                    acc += libm::fabs(x - y);
                }
                acc
            }
            Metric::Minkowski(q) => {
                let mut acc = 0.0;
                for (x, y) in a.iter().zip(b) {
                    acc += libm::pow(libm::fabs(x - y), q);
                }
                libm::pow(acc, 1.0 / q)
            }
        }
    }
}

/// Condensed symmetric pairwise dissimilarities over n observations.
///
/// Entries are nonnegative and finite; the diagonal is implicitly zero and
/// `lookup(i, h) == lookup(h, i)` by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    values: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds from condensed values in pair order (0,1), (0,2), ..., (1,2), ...
    pub fn from_condensed(values: Vec<f64>) -> Result<Self> {
        let n = infer_n(values.len())?;
        let dm = DistanceMatrix { n, values };
        dm.validate()?;
        Ok(dm)
    }

    fn validate(&self) -> Result<()> {
        for (idx, v) in self.values.iter().enumerate() {
            if !v.is_finite() {
                let (i, h) = self.pair_of(idx);
                return Err(Error::NonFinite { row: i, col: h });
            }
            if *v < 0.0 {
                let (i, h) = self.pair_of(idx);
                return Err(Error::NegativeDistance { row: i, col: h });
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn condensed(&self) -> &[f64] {
        &self.values
    }

    /// Index into the condensed array for pair (i, h), i != h.
    #[inline]
    fn index(&self, i: usize, h: usize) -> usize {
        let (i, h) = if i < h { (i, h) } else { (h, i) };
        i * self.n - i * (i + 1) / 2 + h - i - 1
    }

    /// Pair (i, h), i < h, addressed by a condensed index.
    fn pair_of(&self, idx: usize) -> (usize, usize) {
        let mut i = 0;
        let mut offset = 0;
        loop {
            let row_len = self.n - i - 1;
            if idx < offset + row_len {
                return (i, i + 1 + idx - offset);
            }
            offset += row_len;
            i += 1;
        }
    }

    /// d(x_i, x_h); zero when i == h.
    #[inline]
    pub fn lookup(&self, i: usize, h: usize) -> f64 {
        if i == h {
            0.0
        } else {
            self.values[self.index(i, h)]
        }
    }

    /// True when every pairwise distance is zero.
    pub fn is_identically_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Returns a copy with every distance multiplied by `c` (c > 0).
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::InvalidParameter("scale factor must be finite and > 0"));
        }
        DistanceMatrix::from_condensed(self.values.iter().map(|v| v * c).collect())
    }
}

/// Solves n(n-1)/2 = len for n.
pub fn infer_n(len: usize) -> Result<usize> {
    // n = (1 + sqrt(1 + 8 len)) / 2, verified exactly.
    let n = (1.0 + libm::sqrt(1.0 + 8.0 * len as f64)) / 2.0;
    let n = n as usize;
    for cand in n.saturating_sub(1)..=n + 1 {
        if cand >= 2 && cand * (cand - 1) / 2 == len {
            return Ok(cand);
        }
    }
    Err(Error::BadCondensedLength { len })
}

/// All pairwise distances between the rows of `data` under `metric`.
pub fn pairwise_distances(data: &DataMatrix, metric: Metric) -> Result<DistanceMatrix> {
    metric.validate()?;
    let n = data.n();
    let mut values = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for h in (i + 1)..n {
            values.push(metric.distance(data.row(i), data.row(h)));
        }
    }
    DistanceMatrix::from_condensed(values)
}
