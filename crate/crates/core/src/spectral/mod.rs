//! Discretized 1D Hamiltonians on closed curves, a dense symmetric
//! eigensolver, analytic circle/sphere spectra and the quantization
//! recipe-comparison table.

mod analytic;
mod jacobi;
mod operator;

pub use analytic::{
    recipe_table, sphere_spectrum_analytic, LevelEntry, Recipe, RecipeGeometry, RecipeRow,
    RecipeTable,
};
pub use jacobi::jacobi_eigen;
pub use operator::{
    build_curve_hamiltonian, eigensolve_symmetric, GridDomain, Spectrum, SymmetricOperator,
};
