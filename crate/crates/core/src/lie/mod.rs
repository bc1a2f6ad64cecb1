//! Lie algebras by structure constants and the calculus of left-invariant
//! forms and endomorphisms on them.

mod algebra;
mod calculus;

pub use algebra::{validate_lie, Bracket, LieAlgebra, LieReport, Subspace};
pub use calculus::{ce_differential, differential_of_covector, is_closed, is_subalgebra, nijenhuis, NijenhuisTensor};
