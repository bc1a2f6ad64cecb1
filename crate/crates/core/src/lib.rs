//! Recursion operators of pairs and triples of symplectic forms.
//!
//! For two non-degenerate 2-forms `ω`, `η` the recursion operator is the
//! unique invertible `A` with `i_X ω = i_{AX} η`. This crate computes it
//! exactly over the rationals, classifies pairs and triples of forms by the
//! squares of their operators, builds the induced pseudo-Riemannian metrics,
//! and numerically realizes simultaneous Moser isotopies on flat tori.

pub mod error;
pub mod cli;
pub mod exterior;
pub mod lie;
pub mod matrix;
pub mod moser;
pub mod recursion;
pub mod scalar;
pub mod triples;

pub use error::{Error, Result};
