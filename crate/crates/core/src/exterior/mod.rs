//! Exact multilinear algebra over a fixed frame.
//!
//! Sign convention shared by every module: a 2-form `ω` has matrix
//! `M[i][j] = ω(e_i, e_j)`, so `ω(X, Y) = Xᵀ M Y` and `e¹∧e²` in dimension 2
//! is `[[0, 1], [−1, 0]]`. The covector `i_X ω` is `Mᵀ X = −M X`.

mod form;
mod invariants;

pub use form::{contract, contract_covector, form_matrix, matrix_form, wedge, KForm};
pub use invariants::{is_nondegenerate, pfaffian, rank_2form, signature, Signature};
