//! Decoupled per-angular-mode band solvers.
//!
//! All three geometries here (circle in the plane, flat strip, latitude
//! circle on a sphere) are surfaces of revolution in the loose sense
//! `ds^2 = a(x)^2 dphi^2 + dx^2` with `x` the proper-distance normal
//! coordinate, so one engine covers them: conjugating by `g^(1/4)` with
//! `g = a(x)^2` turns the per-mode operator into
//! `(hbar^2/2) [ (d/dx + beta)^t (d/dx + beta) + m^2 / a^2 ]`,
//! `beta = -a'/(2a)`, discretized in the Dirichlet sine basis.

use crate::error::{Error, Result};
use crate::layersim::basis::{transverse_quadrature, weighted_gram, SineBasis};
use crate::layersim::{
    attach_extrapolation, BandResult, BandSample, BandSeries, Confinement, LayerConfig,
};
use crate::potential::PhysicsParams;
use crate::spectral::jacobi_eigen;

/// Geometry of the revolution layer: the circumferential radius and its
/// x-derivative, plus how far the normal coordinate may roam.
struct RadiusProfile<'a> {
    /// `a(x)`; `None` encodes the flat strip (`a = infinity`).
    radius: Option<&'a dyn Fn(f64) -> f64>,
    radius_deriv: Option<&'a dyn Fn(f64) -> f64>,
    validity_radius: f64,
}

pub(crate) fn transverse_ground(confinement: Confinement, eps: f64, params: &PhysicsParams) -> f64 {
    let h2 = params.hbar * params.hbar;
    match confinement {
        Confinement::Dirichlet => h2 * std::f64::consts::PI.powi(2) / (2.0 * eps * eps),
        // gamma = hbar^2 / eps^4, ground = hbar sqrt(gamma) / 2.
        Confinement::Harmonic => h2 / (2.0 * eps * eps),
    }
}

/// Transverse box for the given confinement; harmonic layers need room
/// for several oscillator lengths (the length equals eps by the tie
/// gamma = hbar^2/eps^4).
pub(crate) fn transverse_box(
    confinement: Confinement,
    eps: f64,
    validity_radius: f64,
) -> Result<(f64, f64)> {
    let half = match confinement {
        Confinement::Dirichlet => 0.5 * eps,
        Confinement::Harmonic => (6.0 * eps).min(0.9 * validity_radius),
    };
    if half >= validity_radius {
        return Err(Error::LayerBreakdown(format!(
            "transverse half-width {half} reaches the coordinate validity radius {validity_radius}"
        )));
    }
    Ok((-half, half))
}

/// Lowest eigenvalue per angular mode for one thickness.
fn solve_modes(
    profile: &RadiusProfile,
    cfg: &LayerConfig,
    eps: f64,
    params: &PhysicsParams,
) -> Result<Vec<f64>> {
    let (lo, hi) = transverse_box(cfg.confinement, eps, profile.validity_radius)?;
    let basis = SineBasis::new(lo, hi, cfg.n_transverse);
    let (nodes, weights) = transverse_quadrature(lo, hi, cfg.n_transverse);
    let (phi, dphi) = basis.tables(&nodes);
    let n = cfg.n_transverse;
    let h2 = params.hbar * params.hbar;

    // (phi' + beta phi) table; beta = -a'/(2a) vanishes for the strip.
    let mut shifted = vec![vec![0.0; nodes.len()]; n];
    for (b, row) in shifted.iter_mut().enumerate() {
        for (j, &x) in nodes.iter().enumerate() {
            let beta = match (profile.radius, profile.radius_deriv) {
                (Some(a), Some(da)) => {
                    let av = a(x);
                    if av <= 0.0 {
                        return Err(Error::LayerBreakdown(format!(
                            "circumferential radius {av} <= 0 at x = {x}"
                        )));
                    }
                    -da(x) / (2.0 * av)
                }
                _ => 0.0,
            };
            row[j] = dphi[b][j] + beta * phi[b][j];
        }
    }
    let mut p_mat = vec![0.0; n * n];
    weighted_gram(&shifted, &weights, &mut p_mat);

    // Angular coupling sum_j w_j phi phi / a^2.
    let mut m2_mat = vec![0.0; n * n];
    if let Some(a) = profile.radius {
        let scaled: Vec<Vec<f64>> = phi
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&nodes)
                    .map(|(v, &x)| v / a(x))
                    .collect()
            })
            .collect();
        weighted_gram(&scaled, &weights, &mut m2_mat);
    }

    // Confinement potential.
    let mut conf_mat = vec![0.0; n * n];
    if cfg.confinement == Confinement::Harmonic {
        let gamma = h2 / eps.powi(4);
        let weighted: Vec<Vec<f64>> = phi
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&nodes)
                    .map(|(v, &x)| v * (0.5 * gamma).sqrt() * x)
                    .collect()
            })
            .collect();
        weighted_gram(&weighted, &weights, &mut conf_mat);
    }

    let mut lowest = Vec::with_capacity(cfg.m_max as usize + 1);
    for m in 0..=cfg.m_max {
        let mf = m as f64;
        let mut h = vec![0.0; n * n];
        for i in 0..n * n {
            h[i] = 0.5 * h2 * (p_mat[i] + mf * mf * m2_mat[i]) + conf_mat[i];
        }
        let eig = jacobi_eigen(&h, n)?;
        lowest.push(eig.eigenvalues[0]);
        if profile.radius.is_none() {
            // Strip modes are all identical; no need to resolve again.
            lowest = vec![eig.eigenvalues[0]; cfg.m_max as usize + 1];
            break;
        }
    }
    Ok(lowest)
}

fn run_sweep(
    profile: &RadiusProfile,
    cfg: &LayerConfig,
    params: &PhysicsParams,
    geometry: String,
) -> Result<BandResult> {
    let mut bands: Vec<BandSeries> = (0..=cfg.m_max)
        .map(|m| BandSeries { mode: m, samples: Vec::new(), extrapolation: None })
        .collect();
    for &eps in &cfg.eps {
        let e_perp = transverse_ground(cfg.confinement, eps, params);
        let lowest = solve_modes(profile, cfg, eps, params)?;
        for (m, &e_raw) in lowest.iter().enumerate() {
            bands[m].samples.push(BandSample {
                eps,
                e_raw,
                e_perp,
                e_renormalized: e_raw - e_perp,
            });
        }
    }
    for series in &mut bands {
        attach_extrapolation(series);
    }
    Ok(BandResult { geometry, bands, first_band_counts: Vec::new() })
}

/// Band spectrum of a thin layer around a circle of radius `radius`,
/// decoupled by angular mode.
pub fn circle_band_spectrum(
    radius: f64,
    cfg: &LayerConfig,
    params: &PhysicsParams,
) -> Result<BandResult> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::Usage(format!("circle radius must be positive, got {radius}")));
    }
    cfg.validate(1.0 / radius)?;
    let a = move |x: f64| radius - x;
    let da = move |_: f64| -1.0;
    let profile =
        RadiusProfile { radius: Some(&a), radius_deriv: Some(&da), validity_radius: radius };
    run_sweep(&profile, cfg, params, format!("circle radius={radius}"))
}

/// Zero-curvature control: a straight strip, where every renormalized
/// band must vanish identically.
pub fn strip_band_spectrum(cfg: &LayerConfig, params: &PhysicsParams) -> Result<BandResult> {
    cfg.validate(0.0)?;
    let profile = RadiusProfile { radius: None, radius_deriv: None, validity_radius: f64::INFINITY };
    run_sweep(&profile, cfg, params, "strip".into())
}

/// Band spectrum of a thin band around the latitude circle
/// `theta = theta0` on a sphere, decoupled by azimuthal mode. The normal
/// coordinate is the proper distance `x = R (theta - theta0)`.
pub fn latitude_band_spectrum(
    radius: f64,
    theta0: f64,
    cfg: &LayerConfig,
    params: &PhysicsParams,
) -> Result<BandResult> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::Usage(format!("sphere radius must be positive, got {radius}")));
    }
    if !(theta0 > 0.0 && theta0 < std::f64::consts::PI) {
        return Err(Error::DegenerateLatitude { theta: theta0 });
    }
    // The window must stay clear of the poles; past that, the curvature
    // of the latitude circle within the sphere sets the validity scale.
    let pole_distance = radius * theta0.min(std::f64::consts::PI - theta0);
    for &eps in &cfg.eps {
        let half = match cfg.confinement {
            Confinement::Dirichlet => 0.5 * eps,
            Confinement::Harmonic => 6.0 * eps,
        };
        if eps > 0.0 && half >= pole_distance {
            return Err(Error::DegenerateLatitude { theta: theta0 });
        }
    }
    let geodesic_curvature = (theta0.cos() / theta0.sin()).abs() / radius;
    cfg.validate(geodesic_curvature.max(1.0 / pole_distance))?;
    let a = move |x: f64| radius * (theta0 + x / radius).sin();
    let da = move |x: f64| (theta0 + x / radius).cos();
    let profile = RadiusProfile {
        radius: Some(&a),
        radius_deriv: Some(&da),
        validity_radius: pole_distance,
    };
    run_sweep(
        &profile,
        cfg,
        params,
        format!("latitude radius={radius} theta0={theta0}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn params() -> PhysicsParams {
        PhysicsParams::default()
    }

    fn fast_cfg() -> LayerConfig {
        LayerConfig { n_transverse: 48, m_max: 2, ..LayerConfig::default() }
    }

    #[test]
    fn strip_bands_renormalize_to_zero() {
        for confinement in [Confinement::Dirichlet, Confinement::Harmonic] {
            let cfg = LayerConfig { confinement, ..fast_cfg() };
            let r = strip_band_spectrum(&cfg, &params()).unwrap();
            for series in &r.bands {
                for s in &series.samples {
                    assert!(
                        s.e_renormalized.abs() < 1e-8 * s.e_perp,
                        "strip {confinement:?} band {} at eps {}: {}",
                        series.mode,
                        s.eps,
                        s.e_renormalized
                    );
                }
            }
        }
    }

    #[test]
    fn circle_ground_band_extrapolates_to_curve_potential() {
        let r = circle_band_spectrum(1.0, &fast_cfg(), &params()).unwrap();
        let fit = r.bands[0].extrapolation.unwrap();
        let rel = (fit.limit - (-0.125)) / 0.125;
        assert!(rel.abs() < 0.01, "limit {} (rel {rel})", fit.limit);
    }

    #[test]
    fn circle_mode_spacing_extrapolates_to_half_m_squared() {
        let r = circle_band_spectrum(1.0, &fast_cfg(), &params()).unwrap();
        let m0 = r.bands[0].extrapolation.unwrap().limit;
        let m2 = r.bands[2].extrapolation.unwrap().limit;
        let rel = (m2 - m0 - 2.0) / 2.0;
        assert!(rel.abs() < 0.005, "spacing {} (rel {rel})", m2 - m0);
    }

    #[test]
    fn bands_increase_with_mode() {
        let r = circle_band_spectrum(1.0, &fast_cfg(), &params()).unwrap();
        for w in r.bands.windows(2) {
            for (a, b) in w[0].samples.iter().zip(&w[1].samples) {
                assert!(b.e_raw > a.e_raw);
            }
        }
    }

    #[test]
    fn renormalized_band_error_shrinks_with_eps() {
        let r = circle_band_spectrum(1.0, &fast_cfg(), &params()).unwrap();
        let errs: Vec<f64> = r.bands[0]
            .samples
            .iter()
            .map(|s| (s.e_renormalized + 0.125).abs())
            .collect();
        for w in errs.windows(2) {
            assert!(w[1] < w[0], "errors not decreasing: {errs:?}");
        }
    }

    #[test]
    fn harmonic_circle_agrees_with_dirichlet_limit() {
        let cfg = LayerConfig { confinement: Confinement::Harmonic, ..fast_cfg() };
        let r = circle_band_spectrum(1.0, &cfg, &params()).unwrap();
        let fit = r.bands[0].extrapolation.unwrap();
        let rel = (fit.limit - (-0.125)) / 0.125;
        assert!(rel.abs() < 0.02, "harmonic limit {} (rel {rel})", fit.limit);
    }

    #[test]
    fn latitude_band_matches_formula_at_equator() {
        // At theta0 = pi/2 the m=1 - m=0 spacing is 1/(2 R^2 sin^2) = 0.5.
        let cfg = LayerConfig { m_max: 1, n_transverse: 48, ..LayerConfig::default() };
        let r = latitude_band_spectrum(1.0, PI / 2.0, &cfg, &params()).unwrap();
        let m0 = r.bands[0].extrapolation.unwrap().limit;
        let m1 = r.bands[1].extrapolation.unwrap().limit;
        let rel = (m1 - m0 - 0.5) / 0.5;
        assert!(rel.abs() < 0.01, "spacing {} (rel {rel})", m1 - m0);
    }

    #[test]
    fn latitude_minus_plane_circle_reveals_embedding() {
        // Same circumferential radius, different embedding: the band
        // difference is -hbar^2/(8 R^2).
        let theta0 = PI / 3.0;
        let cfg = LayerConfig { m_max: 0, n_transverse: 48, ..LayerConfig::default() };
        let lat = latitude_band_spectrum(1.0, theta0, &cfg, &params()).unwrap();
        let circ = circle_band_spectrum(theta0.sin(), &cfg, &params()).unwrap();
        let diff = lat.bands[0].extrapolation.unwrap().limit
            - circ.bands[0].extrapolation.unwrap().limit;
        let rel = (diff - (-0.125)) / 0.125;
        assert!(rel.abs() < 0.02, "difference {diff} (rel {rel})");
    }

    #[test]
    fn latitude_window_touching_pole_is_rejected() {
        let cfg = LayerConfig { eps: vec![0.2], ..fast_cfg() };
        assert!(matches!(
            latitude_band_spectrum(1.0, 0.05, &cfg, &params()),
            Err(Error::DegenerateLatitude { .. })
        ));
    }

    #[test]
    fn thickness_beyond_validity_is_rejected() {
        let cfg = LayerConfig { eps: vec![0.6], ..fast_cfg() };
        assert!(matches!(
            circle_band_spectrum(1.0, &cfg, &params()),
            Err(Error::LayerBreakdown(_))
        ));
    }
}
