//! External validation: contingency tables, the Hubert–Arabie adjusted
//! Rand index, and frequency tables over estimated cluster counts.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::silhouette::Labeling;

/// Co-assignment counts between two labelings, with margins.
#[derive(Debug, Clone, PartialEq)]
pub struct ContingencyTable {
    pub counts: Vec<Vec<usize>>,
    pub row_sums: Vec<usize>,
    pub col_sums: Vec<usize>,
    pub n: usize,
}

impl ContingencyTable {
    pub fn from_labelings(a: &Labeling, b: &Labeling) -> Result<Self> {
        if a.n() != b.n() {
            return Err(Error::LengthMismatch { left: a.n(), right: b.n() });
        }
        let (r, c) = (a.k(), b.k());
        let mut counts = vec![vec![0usize; c]; r];
        for i in 0..a.n() {
            counts[a.label(i)][b.label(i)] += 1;
        }
        let row_sums: Vec<usize> = counts.iter().map(|row| row.iter().sum()).collect();
        let mut col_sums = vec![0usize; c];
        for row in &counts {
            for (j, v) in row.iter().enumerate() {
                col_sums[j] += v;
            }
        }
        Ok(ContingencyTable { counts, row_sums, col_sums, n: a.n() })
    }
}

#[inline]
fn choose2(x: usize) -> f64 {
    (x as f64) * (x as f64 - 1.0) / 2.0
}

/// Hubert–Arabie adjusted Rand index between two partitions of the same
/// observations; 1 for identical partitions up to relabeling.
///
/// When the chance-corrected denominator is zero (both partitions
/// all-singletons or both one-cluster), the index is defined as 1 for
/// identical partitions and 0 otherwise.
pub fn ari(a: &Labeling, b: &Labeling) -> Result<f64> {
    let t = ContingencyTable::from_labelings(a, b)?;
    let sum_ij: f64 = t.counts.iter().flatten().map(|&v| choose2(v)).sum();
    let sum_a: f64 = t.row_sums.iter().map(|&v| choose2(v)).sum();
    let sum_b: f64 = t.col_sums.iter().map(|&v| choose2(v)).sum();
    let expected = sum_a * sum_b / choose2(t.n);
    let max_index = 0.5 * (sum_a + sum_b);
    if max_index == expected {
        // Degenerate case: identical degenerate partitions count as perfect
        // agreement.
        let identical = (0..a.n()).all(|i| {
            (0..a.n()).all(|j| (a.label(i) == a.label(j)) == (b.label(i) == b.label(j)))
        });
        return Ok(if identical { 1.0 } else { 0.0 });
    }
    Ok((sum_ij - expected) / (max_index - expected))
}

/// Counts of estimated cluster numbers per method over replicates, columns
/// covering k̂ = 1..=k_max.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyTable {
    pub methods: Vec<alloc::string::String>,
    pub k_max: usize,
    /// counts[m][k - 1] = replicates in which method m estimated k.
    pub counts: Vec<Vec<usize>>,
}

impl FrequencyTable {
    pub fn new(methods: Vec<alloc::string::String>, k_max: usize) -> Self {
        let counts = vec![vec![0usize; k_max]; methods.len()];
        FrequencyTable { methods, k_max, counts }
    }

    pub fn record(&mut self, method: usize, k_hat: usize) {
        if k_hat >= 1 && k_hat <= self.k_max {
            self.counts[method][k_hat - 1] += 1;
        }
    }

    pub fn row_sum(&self, method: usize) -> usize {
        self.counts[method].iter().sum()
    }
}
