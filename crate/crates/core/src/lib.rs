//! Exact curvature engine for left-invariant frames with a semi-symmetric
//! non-metric connection built from a distinguished vector field.
//!
//! All arithmetic is rational and exact. Geometries are given by structure
//! constants of a frame Lie algebra, a constant metric in that frame and a
//! constant distinguished field `ξ` with dual one-form `ψ = g(ξ, ·)`.

pub mod connection;
pub mod curvature;
pub mod error;
pub mod frame;
pub mod probes;
pub mod rat;
pub mod soliton;
pub mod tensor;

pub use connection::{Connection, ConnectionKind};
pub use curvature::CurvatureBundle;
pub use error::{GeometryError, Result};
pub use frame::{DistinguishedField, FrameAlgebra, GeometrySpec, MetricFrame, ScalarJet};
pub use probes::{Analysis, ProbeId, ProbeResult, ProbeStatus, ProbeValue};
pub use rat::Rat;
pub use soliton::{SolitonKind, SolitonProblem, SolitonVerdict};
pub use tensor::{Slot, Tensor};
