//! Error type shared by all modules of the crate.

use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Validation and algorithm failures.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A matrix entry is NaN or infinite.
    NonFinite { row: usize, col: usize },
    /// A distance entry is negative.
    NegativeDistance { row: usize, col: usize },
    /// Fewer observations than the operation supports.
    TooFewObservations { n: usize, min: usize },
    /// Matrix dimensions do not match the expectation.
    DimensionMismatch { expected: usize, got: usize },
    /// A condensed length that is not n(n-1)/2 for any n.
    BadCondensedLength { len: usize },
    /// Cluster count outside the valid range for the operation.
    InvalidK { k: usize, min: usize, max: usize },
    /// A label outside 0..k.
    LabelOutOfRange { index: usize, label: usize, k: usize },
    /// A cluster index in 0..k with no members.
    EmptyCluster { cluster: usize },
    /// Two labelings (or a labeling and a matrix) differ in length.
    LengthMismatch { left: usize, right: usize },
    /// Merge of a cluster with itself requested.
    SelfMerge { cluster: usize },
    /// All pairwise distances are zero; silhouettes are undefined.
    DegenerateDistances,
    /// Operation needs coordinate data but only distances were given.
    NeedsCoordinates,
    /// Hierarchy was truncated but the operation needs the full one.
    TruncatedHierarchy,
    /// A distribution or model parameter outside its domain.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite { row, col } => {
                write!(f, "non-finite entry at row {row}, column {col}")
            }
            Error::NegativeDistance { row, col } => {
                write!(f, "negative distance at ({row}, {col})")
            }
            Error::TooFewObservations { n, min } => {
                write!(f, "{n} observations given, at least {min} required")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "expected dimension {expected}, got {got}")
            }
            Error::BadCondensedLength { len } => {
                write!(f, "{len} values do not form a condensed matrix (not n(n-1)/2)")
            }
            Error::InvalidK { k, min, max } => {
                write!(f, "cluster count {k} outside valid range {min}..={max}")
            }
            Error::LabelOutOfRange { index, label, k } => {
                write!(f, "label {label} at observation {index} outside 0..{k}")
            }
            Error::EmptyCluster { cluster } => write!(f, "cluster {cluster} has no members"),
            Error::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
            Error::SelfMerge { cluster } => {
                write!(f, "cannot merge cluster {cluster} with itself")
            }
            Error::DegenerateDistances => {
                write!(f, "all pairwise distances are zero; silhouettes undefined")
            }
            Error::NeedsCoordinates => {
                write!(f, "method requires coordinate data, only distances given")
            }
            Error::TruncatedHierarchy => {
                write!(f, "operation requires a full (untruncated) hierarchy")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}
