//! Finite-temperature Casimir force between a metallic sphere and a plate.
//!
//! The force follows from the Lifshitz formula summed over Matsubara
//! frequencies, with the sphere-plate geometry handled by the proximity force
//! approximation. The crate computes the sum with two treatments of the
//! zero-frequency term, the zero-temperature integral form, and the
//! linear-in-temperature correction that survives for real metals.

// Quadrature tables and reference constants carry full published digits, and
// `!(x > 0.0)` is the intended NaN-rejecting form throughout.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod constants;
pub mod corrections;
pub mod dielectric;
pub mod error;
pub mod lifshitz;
pub mod quadrature;
pub mod settings;
pub mod system;
pub mod validation;

pub use constants::{PhysicalConstants, ZETA3};
pub use corrections::CorrectionReport;
pub use error::{CasimirError, Result};
pub use lifshitz::{force_integral, force_sum, force_sum_alt, ForceResult};
pub use settings::NumericSettings;
pub use system::{bare_force, matsubara_x, Geometry, Material, Model, ThermalGrid};
