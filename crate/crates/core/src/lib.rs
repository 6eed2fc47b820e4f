//! Exact computations for Koszul resolutions, twisted Hochschild homology,
//! equivariant trace complexes, finite-group cohomology and root data.

pub mod acceptance;
pub mod algebra;
pub mod error;
pub mod hochschild;
pub mod koszul;
pub mod exact;
pub mod groups;
pub mod bg;
pub mod cli;
pub mod orbits;
pub mod rootdata;

pub use error::{Error, Result};
