//! Simultaneous Moser isotopies on flat tori.
//!
//! Coefficients are finite trigonometric polynomials, so closedness is
//! checked symbolically and cohomology classes are grid averages. Families
//! are stored as a constant base plus a primitive, which makes `ω̇_t = dα_t`
//! hold by construction.

mod document;
mod family;
mod field;
mod flow;
mod trig;

pub use document::{FamilySpec, FlowSpec, PrimitiveTerm};
pub use family::FormFamily;
pub use field::{exterior_derivative_field, OneFormField, TwoFormField};
pub use flow::{
    cohomology_drift, convergence_study, field_residual, integrate_flow, intertwining_check, moser_vector_field,
    sample_points, CheckpointReport, ConvergenceRow, FlowFamily, FlowResult, IntertwiningReport, SampleTrajectory,
    CHECKPOINTS, CONDITION_LIMIT,
};
pub use trig::{TrigPoly, TrigTerm};

#[cfg(test)]
mod tests;
