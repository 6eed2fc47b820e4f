//! Exact scalars, sparse matrices, Smith forms and chain complexes.

pub mod abelian;
pub mod complex;
pub mod echelon;
pub mod integer;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod snf;
pub mod vector;

pub use abelian::AbelianGroupStructure;
pub use complex::ChainComplex;
pub use echelon::{integer_kernel, kernel_basis, rank, IntRow, QEchelon, Rref, ZLattice};
pub use integer::Integer;
pub use matrix::{ExactMatrix, Ring, SparseRow};
pub use rational::Rational;
pub use snf::{invariant_factors, smith_normal_form, SmithForm};
