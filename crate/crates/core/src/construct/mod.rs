//! Explicit deformation fields: uniform plate bend, piecewise-affine fold and
//! the rounded multilayer fold with delaminated interfaces.

mod curve;
mod field;
mod params;

pub use curve::{LayerCurve, Midline, Piece};
pub use field::{
    build_cpa, build_multilayer, build_multilayer_unchecked, build_plate, DeformationField, FieldDoc, FieldKind,
};
pub use params::{choose_boundaries, ConstructionParams};

#[cfg(test)]
mod tests;
