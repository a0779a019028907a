//! JSON shapes for hierarchies, dendrograms, and clustering reports.
//! Observation ids and cluster labels are 1-based externally.

use serde::{Deserialize, Serialize};

use hosil_core::engine::{best_k, Dendrogram, Hierarchy};
use hosil_core::error::Result;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelJson {
    pub l: usize,
    pub k: usize,
    pub asw: f64,
    /// Cluster pair merged to reach this level; null at the first level,
    /// where `joined` records the initial observation pair instead.
    pub merged: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub joined: Option<(usize, usize)>,
    pub labels: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HierarchyJson {
    pub n: usize,
    pub levels: Vec<LevelJson>,
    pub best_k: usize,
    pub best_asw: f64,
    pub truncated: bool,
}

impl HierarchyJson {
    pub fn from_hierarchy(h: &Hierarchy) -> Result<Self> {
        let (bk, basw) = best_k(h)?;
        let levels = h
            .records
            .iter()
            .map(|r| LevelJson {
                l: r.level,
                k: r.k,
                asw: r.asw,
                merged: r.merged_pair.map(|(a, b)| (a + 1, b + 1)),
                joined: r.joined_observations.map(|(a, b)| (a + 1, b + 1)),
                labels: r.labels.labels().iter().map(|&l| l + 1).collect(),
            })
            .collect();
        Ok(HierarchyJson { n: h.n(), levels, best_k: bk, best_asw: basw, truncated: h.truncated })
    }
}

/// Nested merge-tree shape: leaves are `{"id": ...}`, internal nodes carry
/// children, an ASW height, and the decreasing flag.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DendrogramJson {
    Leaf { id: usize },
    Node { children: Vec<DendrogramJson>, height: f64, decreasing: bool },
}

impl DendrogramJson {
    pub fn from_dendrogram(d: &Dendrogram) -> Self {
        match d {
            Dendrogram::Leaf { id } => DendrogramJson::Leaf { id: id + 1 },
            Dendrogram::Node { children, height, decreasing } => DendrogramJson::Node {
                children: children.iter().map(Self::from_dendrogram).collect(),
                height: *height,
                decreasing: *decreasing,
            },
        }
    }
}

/// Summary emitted by the cluster command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClusterReport {
    pub method: String,
    pub n: usize,
    pub k: usize,
    /// Selected cluster count when running in auto mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selected_k: Option<usize>,
    pub asw: f64,
    pub silhouettes: Vec<f64>,
    pub labels: Vec<usize>,
    /// Agreement with supplied ground truth, when given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ari: Option<f64>,
}
