//! Exact Poisson algebra over canonical phase-space polynomials,
//! constraint classification and point-evaluated Dirac brackets.
//!
//! Coefficients are exact rationals so that algebraic identities (the
//! involution of the abelianized constraints, Jacobi, Leibniz) hold
//! exactly; only Dirac brackets, which need the inverse constraint
//! matrix, are evaluated numerically at phase-space points.

mod dirac;
mod poly;
pub mod systems;

pub use dirac::{
    classify_constraints, constraint_matrix, dirac_bracket_at, Classification, ConstraintClass,
    ConstraintMatrix,
};
pub use poly::{poisson_bracket, PhasePoint, PhasePoly, PhaseVar};
