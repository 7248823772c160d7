//! Thin-layer laboratory: full Schrodinger band computations in a
//! shrinking layer around a circle, a latitude circle on a sphere, or a
//! general closed plane curve, with the divergent transverse energy
//! renormalized away analytically and the thickness extrapolated to zero.
//!
//! Discretization: the wave function is conjugated by `g^(1/4)` so the
//! problem is symmetric with respect to the plain coordinate measure,
//! then expanded in a Dirichlet sine basis across the layer (and a real
//! Fourier basis along a general curve). The sine basis keeps the flat
//! transverse kinetic energy exactly diagonal, which is what makes
//! subtracting the analytic constant `hbar^2 pi^2 / (2 eps^2)` honest at
//! finite resolution: with a second-order difference stencil the
//! subtraction error grows like `1/eps^2` and the limit is lost.

mod basis;
mod curve2d;
mod radial;

pub use curve2d::curve_band_spectrum_2d;
pub use radial::{circle_band_spectrum, latitude_band_spectrum, strip_band_spectrum};

use crate::error::{Error, Result};
use crate::numeric::least_squares;

/// Confinement holding the particle inside the layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Confinement {
    /// Hard walls at the layer borders; transverse ground energy
    /// `hbar^2 pi^2 / (2 eps^2)`.
    Dirichlet,
    /// Squeezing oscillator `gamma x^2 / 2` with `gamma = hbar^2/eps^4`,
    /// so thickness is the one dial; ground energy `hbar sqrt(gamma)/2`.
    Harmonic,
}

impl Confinement {
    pub fn name(&self) -> &'static str {
        match self {
            Confinement::Dirichlet => "dirichlet",
            Confinement::Harmonic => "harmonic",
        }
    }
}

/// Configuration of a band computation.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerConfig {
    /// Layer thicknesses to sweep (the layer is `[-eps/2, eps/2]`).
    pub eps: Vec<f64>,
    pub confinement: Confinement,
    /// Transverse basis size (>= 32).
    pub n_transverse: usize,
    /// Angular modes 0..=m_max (decoupled paths) or reported band count
    /// `2 m_max + 1` (2D path).
    pub m_max: u32,
    /// Tangential Fourier functions for the 2D path; odd.
    pub n_tangential: usize,
}

impl Default for LayerConfig {
    fn default() -> Self {
        Self {
            eps: vec![0.1, 0.05, 0.025],
            confinement: Confinement::Dirichlet,
            n_transverse: 128,
            m_max: 3,
            n_tangential: 21,
        }
    }
}

impl LayerConfig {
    pub fn validate(&self, max_abs_curvature: f64) -> Result<()> {
        if self.eps.is_empty() {
            return Err(Error::Usage("need at least one layer thickness".into()));
        }
        for &e in &self.eps {
            if !e.is_finite() || e <= 0.0 {
                return Err(Error::Usage(format!("thickness must be positive, got {e}")));
            }
            if e * max_abs_curvature >= 0.5 {
                return Err(Error::LayerBreakdown(format!(
                    "thickness {e} times max curvature {max_abs_curvature} is not < 0.5"
                )));
            }
        }
        if self.n_transverse < 32 {
            return Err(Error::Usage(format!(
                "transverse basis needs at least 32 functions, got {}",
                self.n_transverse
            )));
        }
        Ok(())
    }
}

/// One thickness sample of a band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandSample {
    pub eps: f64,
    /// Lowest eigenvalue of the confined problem.
    pub e_raw: f64,
    /// Analytic transverse ground energy subtracted in renormalization.
    pub e_perp: f64,
    pub e_renormalized: f64,
}

/// Least-squares fit `E(eps) = limit + slope*eps + curvature*eps^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtrapolationFit {
    pub limit: f64,
    pub slope: f64,
    pub curvature: f64,
    /// 2-norm of the fit residual; large values flag model failure.
    pub residual: f64,
}

/// Band of one angular mode (decoupled paths) or one band index
/// (2D path) across the thickness sweep.
#[derive(Debug, Clone)]
pub struct BandSeries {
    pub mode: u32,
    pub samples: Vec<BandSample>,
    pub extrapolation: Option<ExtrapolationFit>,
}

#[derive(Debug, Clone)]
pub struct BandResult {
    pub geometry: String,
    pub bands: Vec<BandSeries>,
    /// Per-thickness count of eigenvalues below the second transverse
    /// level (2D path diagnostics; empty for decoupled paths).
    pub first_band_counts: Vec<(f64, usize)>,
}

/// Extrapolate band samples to zero thickness with the linear+quadratic
/// model; needs at least three distinct thicknesses.
pub fn band_extrapolate(samples: &[(f64, f64)]) -> Result<ExtrapolationFit> {
    if samples.len() < 3 {
        return Err(Error::Usage(format!(
            "extrapolation needs at least 3 samples, got {}",
            samples.len()
        )));
    }
    for (i, a) in samples.iter().enumerate() {
        for b in &samples[i + 1..] {
            if a.0 == b.0 {
                return Err(Error::Usage(format!("duplicate thickness {}", a.0)));
            }
        }
    }
    let design: Vec<Vec<f64>> = samples.iter().map(|&(e, _)| vec![1.0, e, e * e]).collect();
    let ys: Vec<f64> = samples.iter().map(|&(_, y)| y).collect();
    let (c, residual) = least_squares(&design, &ys);
    Ok(ExtrapolationFit { limit: c[0], slope: c[1], curvature: c[2], residual })
}

pub(crate) fn attach_extrapolation(series: &mut BandSeries) {
    if series.samples.len() >= 3 {
        let pts: Vec<(f64, f64)> =
            series.samples.iter().map(|s| (s.eps, s.e_renormalized)).collect();
        series.extrapolation = band_extrapolate(&pts).ok();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_quadratic_data_is_reproduced() {
        let samples: Vec<(f64, f64)> = [0.1, 0.05, 0.025]
            .iter()
            .map(|&e| (e, 2.0 + e - 3.0 * e * e))
            .collect();
        let fit = band_extrapolate(&samples).unwrap();
        assert!((fit.limit - 2.0).abs() < 1e-12, "limit {}", fit.limit);
        assert!((fit.slope - 1.0).abs() < 1e-10);
        assert!((fit.curvature + 3.0).abs() < 1e-9);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn constant_data_gives_constant() {
        let samples = [(0.1, 4.0), (0.05, 4.0), (0.025, 4.0), (0.0125, 4.0)];
        let fit = band_extrapolate(&samples).unwrap();
        assert!((fit.limit - 4.0).abs() < 1e-12);
        assert!(fit.slope.abs() < 1e-9);
        assert!(fit.curvature.abs() < 1e-8);
    }

    #[test]
    fn too_few_samples_is_usage_error() {
        assert!(matches!(
            band_extrapolate(&[(0.1, 1.0), (0.05, 2.0)]),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn config_validation() {
        let mut cfg = LayerConfig::default();
        assert!(cfg.validate(1.0).is_ok());
        assert!(matches!(cfg.validate(10.0), Err(Error::LayerBreakdown(_))));
        cfg.n_transverse = 16;
        assert!(matches!(cfg.validate(1.0), Err(Error::Usage(_))));
        cfg.n_transverse = 64;
        cfg.eps.clear();
        assert!(matches!(cfg.validate(1.0), Err(Error::Usage(_))));
    }
}
