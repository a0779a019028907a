//! Clustering toolkit built around silhouette-width maximization.
//!
//! The centrepiece is [`engine::hosil`], an agglomerative hierarchical
//! clustering routine whose linkage criterion is the average silhouette
//! width (ASW) of the candidate merge: at every hierarchy level all cluster
//! pairs are tried and the pair whose union yields the highest ASW is
//! merged. The level with the maximal ASW gives the number of clusters.
//!
//! The crate also ships the machinery needed to evaluate such clusterings:
//!
//! * [`distance`] — condensed pairwise dissimilarity matrices under
//!   Euclidean, Manhattan and Minkowski metrics;
//! * [`silhouette`] — per-point silhouette widths, ASW, and the incremental
//!   [`silhouette::ClusterCache`] that makes merge evaluation cheap;
//! * [`baselines`] — Lance–Williams linkages, k-means, PAM and PAMSIL;
//! * [`validation`] — adjusted Rand index and frequency tables;
//! * [`datagen`] — seeded generators for ten synthetic cluster models.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the CLI
//! live in the companion `hosil` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod baselines;
pub mod datagen;
pub mod distance;
pub mod engine;
pub mod error;
pub mod silhouette;
pub mod validation;

pub use distance::{DataMatrix, DistanceMatrix, Metric};
pub use engine::{best_k, hosil, Dendrogram, Hierarchy, MergeRecord};
pub use error::{Error, Result};
pub use silhouette::{silhouette_report, ClusterCache, Labeling, SilhouetteReport};
