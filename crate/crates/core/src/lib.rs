//! Exact computations around the commutant of the planar Newton derivation
//! `δ_f = y ∂/∂x + f(x) ∂/∂y`.

pub mod algebra;
pub mod commutant;
pub mod derivation;
pub mod error;
pub mod integrability;
pub mod laurent_family;
pub mod linalg;
pub mod obstruction;
pub mod parity;
pub mod selftest;

pub use error::{Error, Result};
