//! Basic graded algebras, their modules, bimodules and morphisms.

pub mod graded;
pub mod hom;
pub mod module;
pub mod morphism;
pub mod quiver;
pub mod tensor;

pub use graded::{semisimple, BasisElement, GradedAlgebra};
pub use hom::{graded_hom, indecomposable_projectives, simple_modules, GradedHom};
pub use module::{BimoduleSpec, GradedBimodule, GradedModule, Side};
pub use morphism::{AlgebraMap, MorphismSpec};
pub use quiver::{from_quiver, AlgebraSpec, ArrowSpec, QuiverCaps, RelationTerm};
