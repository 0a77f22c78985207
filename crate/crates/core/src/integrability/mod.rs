//! Integrability of planar derivations: exact companions for the affine case
//! and a numeric check of the rectifying map built from a commuting pair.

mod flow;
mod linear;
mod numeric;

pub use flow::{
    example_fixture, rectification_defect, rectification_defect_with_reference, ExampleFixture,
    FlowCheckReport, PathChoice,
};
pub use linear::{companion_for_linear, linear_grid, AffineCoefficients, LinearCase, LinearizationResult};
pub use numeric::{adaptive_simpson, rk4, Trajectory};
