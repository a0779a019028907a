//! File formats, experiment harness, and command-line front end for the
//! silhouette-optimizing clustering library.

pub mod cli;
pub mod error;
pub mod experiment;
pub mod formats;
pub mod io;
pub mod methods;

pub use hosil_core as core;
