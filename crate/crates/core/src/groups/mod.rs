//! Finite groups, their cohomology with coefficients in finitely generated
//! abelian groups, and Schur multipliers.

pub mod checks;
pub mod cohomology;
pub mod group;
pub mod homology;
pub mod module;

pub use checks::{
    central_sequence_check, product_formula_check, section4_report, semidirect_sequence_check, CentralReport, Claim,
    ClaimStatus, ProductFormulaReport, Section4Report, SemidirectReport,
};
pub use cohomology::{cohomology, restriction, CocycleClass, Cohomology, RestrictionMap};
pub use group::{named, FiniteGroup, GroupSpec};
pub use homology::{abelianization, multiplier_map, multiplier_restriction, schur_multiplier, MultiplierMap};
pub use module::{GModule, GModuleSpec};
