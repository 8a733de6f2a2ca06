use thiserror::Error;

use crate::tensor::Slot;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("valence error: {0}")]
    Valence(String),

    #[error("slot {slot} is {found:?}, expected {expected:?}")]
    SlotKind {
        slot: usize,
        expected: Slot,
        found: Slot,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("degenerate metric: {0}")]
    DegenerateMetric(String),

    #[error("degenerate plane: vectors do not span a nondegenerate 2-plane")]
    DegeneratePlane,

    #[error("operation requires dimension {expected}, got {found}")]
    UnsupportedDimension { expected: usize, found: usize },

    #[error("unsupported dimension {0} (supported: 1..=4)")]
    DimensionOutOfRange(usize),

    #[error(
        "inconsistent jet: dd[{i}][{j}] - dd[{j}][{i}] = {lhs} but C^k_{{{i}{j}}} d_k = {rhs}"
    )]
    InconsistentJet {
        i: usize,
        j: usize,
        lhs: String,
        rhs: String,
    },

    #[error("m-quasi Einstein parameter m must be nonzero")]
    ZeroM,

    #[error("connection kind {found} where {expected} is required")]
    ConnectionKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("unknown probe id {0:?}")]
    UnknownProbe(String),

    #[error("invalid geometry: {0}")]
    Invalid(String),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
