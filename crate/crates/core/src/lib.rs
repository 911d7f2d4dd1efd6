//! Delaminating folds in multi-ply plates.
//!
//! The crate builds explicit deformations of a layered strip `[-L, L] x [0, h]`
//! bent by an angle `alpha` (uniform plate bend, piecewise-affine fold, rounded
//! multilayer fold with open interfaces), measures their elastic and
//! delamination energies, certifies their admissibility, and compares optimized
//! energies with the analytic scaling bounds.
//!
//! Geometry (`linalg`, `angles`, `construct`, `energy`, `verify`) is generic over
//! [`Scalar`] (`f32`/`f64`); the optimizer and the scaling analysis work in `f64`.

// `!(x > 0)` is how NaN inputs get rejected alongside out-of-range ones
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angles;
pub mod construct;
pub mod energy;
pub mod error;
pub mod linalg;
pub mod model;
mod scalar;
pub mod scaling;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{dist_so2_squared, rotation};
pub use model::{BendAngle, EnergyBreakdown, MaterialSpec};
pub use scalar::Scalar;

/// Double-precision aliases used by the scaling layer and the CLI.
pub type Mat2 = linalg::Mat2<f64>;
pub type Spec = MaterialSpec<f64>;
pub type Params = construct::ConstructionParams<f64>;
pub type Field = construct::DeformationField<f64>;
pub type Breakdown = EnergyBreakdown<f64>;
pub type Kinematics = angles::FoldKinematics<f64>;
