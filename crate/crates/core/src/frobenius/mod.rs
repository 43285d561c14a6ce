//! Explicit 2-Frobenius groups built as semilinear groups over two finite
//! fields, with exhaustive element-order sweeps.

pub mod field;
pub mod group;

pub use field::FiniteField;
pub use group::{
    admissible_exponents, BuildOptions, Check, Element, Preset, Spectrum, StructureReport,
    TwoFrobeniusGroup,
};
