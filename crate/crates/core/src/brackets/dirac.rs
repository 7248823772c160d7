//! Constraint matrices, point-evaluated Dirac brackets and the
//! first/second class decision.

use crate::error::{Error, Result};
use crate::numeric::{determinant, solve_dense};

use super::poly::{poisson_bracket, PhasePoint, PhasePoly};

/// The matrix `C_ij = {phi_i, phi_j}` evaluated at a phase-space point.
#[derive(Debug, Clone)]
pub struct ConstraintMatrix {
    pub entries: Vec<Vec<f64>>,
    pub det: f64,
}

/// Evaluate the antisymmetric constraint bracket matrix and its
/// determinant at `pt`.
pub fn constraint_matrix(constraints: &[PhasePoly], pt: &PhasePoint) -> Result<ConstraintMatrix> {
    if constraints.is_empty() {
        return Err(Error::Usage("need at least one constraint".into()));
    }
    let k = constraints.len();
    let mut entries = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let value = poisson_bracket(&constraints[i], &constraints[j]).eval(pt);
            entries[i][j] = value;
            entries[j][i] = -value;
        }
    }
    let flat: Vec<f64> = entries.iter().flatten().copied().collect();
    let det = determinant(&flat, k);
    Ok(ConstraintMatrix { entries, det })
}

/// Dirac bracket `{f, g}_D = {f, g} - {f, phi_i} (C^-1)_ij {phi_j, g}`
/// evaluated at `pt`. Requires the constraints to be second class there.
pub fn dirac_bracket_at(
    f: &PhasePoly,
    g: &PhasePoly,
    constraints: &[PhasePoly],
    pt: &PhasePoint,
) -> Result<f64> {
    let k = constraints.len();
    let c = constraint_matrix(constraints, pt)?;
    let flat: Vec<f64> = c.entries.iter().flatten().copied().collect();
    let plain = poisson_bracket(f, g).eval(pt);
    let f_phi: Vec<f64> = constraints
        .iter()
        .map(|phi| poisson_bracket(f, phi).eval(pt))
        .collect();
    let phi_g: Vec<f64> = constraints
        .iter()
        .map(|phi| poisson_bracket(phi, g).eval(pt))
        .collect();
    let solved = solve_dense(&flat, k, &[phi_g]).ok_or(Error::NotSecondClassAtPoint)?;
    let correction: f64 = f_phi.iter().zip(&solved[0]).map(|(a, b)| a * b).sum();
    Ok(plain - correction)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintClass {
    FirstClass,
    SecondClass,
    MixedOrDegenerate,
}

impl std::fmt::Display for ConstraintClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConstraintClass::FirstClass => write!(f, "first class"),
            ConstraintClass::SecondClass => write!(f, "second class"),
            ConstraintClass::MixedOrDegenerate => write!(f, "mixed/degenerate"),
        }
    }
}

/// Classification over a set of sample points, with the witnesses that
/// broke a clean first/second class verdict.
#[derive(Debug, Clone)]
pub struct Classification {
    pub class: ConstraintClass,
    /// Sample indices where det C vanished (within tolerance).
    pub degenerate_samples: Vec<usize>,
    /// Sample indices where some bracket was nonzero.
    pub nonzero_bracket_samples: Vec<usize>,
    pub tolerance: f64,
}

const CLASS_TOL: f64 = 1e-10;

/// Second class iff `det C != 0` at every sample; first class iff every
/// bracket vanishes at every sample; mixed/degenerate otherwise.
pub fn classify_constraints(
    constraints: &[PhasePoly],
    samples: &[PhasePoint],
) -> Result<Classification> {
    if samples.is_empty() {
        return Err(Error::Usage("need at least one sample point on the constraint surface".into()));
    }
    let mut degenerate = Vec::new();
    let mut nonzero = Vec::new();
    for (idx, pt) in samples.iter().enumerate() {
        let c = constraint_matrix(constraints, pt)?;
        if c.det.abs() <= CLASS_TOL {
            degenerate.push(idx);
        }
        let max_entry = c
            .entries
            .iter()
            .flatten()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        if max_entry > CLASS_TOL {
            nonzero.push(idx);
        }
    }
    let class = if degenerate.is_empty() {
        ConstraintClass::SecondClass
    } else if nonzero.is_empty() {
        ConstraintClass::FirstClass
    } else {
        ConstraintClass::MixedOrDegenerate
    };
    Ok(Classification {
        class,
        degenerate_samples: degenerate,
        nonzero_bracket_samples: nonzero,
        tolerance: CLASS_TOL,
    })
}
