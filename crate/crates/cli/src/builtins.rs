//! Built-in oracle geometries.

use sscurv_core::frame::{FrameAlgebra, GeometrySpec, MetricFrame};
use sscurv_core::{GeometryError, Rat, Result};

pub const NAMES: [&str; 3] = ["example1", "h2xr", "flat"];

fn e3() -> Vec<Rat> {
    vec![Rat::zero(), Rat::zero(), Rat::one()]
}

/// `name` is one of [`NAMES`]. All three use the identity metric and ξ = e3.
pub fn builtin(name: &str) -> Result<GeometrySpec> {
    let minus = Rat::from_int(-1);
    let (frame, label) = match name {
        // [k1,k3] = -k1, [k2,k3] = -k2
        "example1" => (
            FrameAlgebra::from_brackets(3, &[(0, 2, 0, minus.clone()), (1, 2, 1, minus)])?,
            "k",
        ),
        // hyperbolic plane times a line: [e1,e2] = -e1
        "h2xr" => (FrameAlgebra::from_brackets(3, &[(0, 1, 0, minus)])?, "e"),
        "flat" => (FrameAlgebra::abelian(3)?, "e"),
        other => {
            return Err(GeometryError::Invalid(format!(
                "unknown builtin '{other}' (expected one of {})",
                NAMES.join(", ")
            )))
        }
    };
    Ok(GeometrySpec::new(name, frame, MetricFrame::identity(3)?, e3())?.with_label(label))
}
