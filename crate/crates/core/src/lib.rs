//! Workbench for quantum mechanics confined to curves and surfaces.
//!
//! The crate computes the curvature-induced quantum potential that appears
//! when a particle is restricted to a hypersurface, and cross-checks it
//! three independent ways:
//!
//! * closed forms from the embedded geometry (`geometry` + `potential`),
//! * a general normal-profile operator acting on the layer metric
//!   determinant (`potential::vq_normal_profile`),
//! * full band simulations in a thin layer of finite thickness with the
//!   transverse energy renormalized away (`layersim`).
//!
//! The classical side of the story lives in `brackets`: exact Poisson
//! algebra over phase-space polynomials, constraint classification and
//! point-evaluated Dirac brackets for the sphere constraints and their
//! abelianized counterparts. `spectral` holds the discretized 1D
//! Hamiltonians, a dense symmetric eigensolver and the recipe-comparison
//! table for the sphere.

pub mod brackets;
pub mod error;
pub mod geometry;
pub mod layersim;
pub mod numeric;
pub mod potential;
pub mod spectral;

pub use error::{Error, Result};
