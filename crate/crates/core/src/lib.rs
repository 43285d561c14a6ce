//! Prime (Gruenberg-Kegel) graphs of finite groups.
//!
//! The crate computes prime graphs, degree patterns and order components
//! from element-order spectra, carries a catalog of the simple groups whose
//! orders have all prime divisors at most 29, enumerates the graphs that
//! realize a prescribed degree pattern, and explicitly builds two solvable
//! 2-Frobenius groups whose spectra are swept exhaustively.

pub mod arith;
pub mod catalog;
pub mod error;
pub mod families;
pub mod frobenius;
pub mod gkgraph;
pub mod realizer;
pub mod spectrum;

pub use arith::{factor, mult_order, nu_abelian, FactoredNat};
pub use catalog::{frobenius_feasible, Catalog, GroupRecord, Kind};
pub use error::{Error, Result};
pub use families::{Family, FamilySpec, Profile};
pub use frobenius::{Preset, TwoFrobeniusGroup};
pub use gkgraph::{DegreePattern, PrimeGraph};
pub use realizer::{classes_up_to_symmetry, enumerate_graphs, PatternInstance};
pub use spectrum::{graph_from_mu, MuSet};
