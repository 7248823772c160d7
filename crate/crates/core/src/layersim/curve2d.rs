//! Full 2D band computation in the layer coordinates of a closed plane
//! curve, with no angular decoupling assumed.
//!
//! Galerkin discretization of the conjugated quadratic form
//! `(hbar^2/2) [ g^-1 (d1 v + b1 v)^2 + (d2 v + b2 v)^2 ]` with
//! `g = (1 - x k(s))^2`, `b1 = x k'(s) / (2(1 - x k))`,
//! `b2 = k / (2(1 - x k))`, in a tangential Fourier basis times a
//! transverse Dirichlet sine basis. The mass matrix is the identity, so
//! one dense symmetric eigensolve per thickness delivers the bands.

use crate::error::{Error, Result};
use crate::geometry::{arc_length_reparam, curve_jet, norm2, plane_curvature, CurveSpec};
use crate::geometry::curvature_t_derivative;
use crate::layersim::basis::{transverse_quadrature, weighted_gram, FourierBasis, SineBasis};
use crate::layersim::radial::{transverse_box, transverse_ground};
use crate::layersim::{
    attach_extrapolation, BandResult, BandSample, BandSeries, Confinement, LayerConfig,
};
use crate::potential::PhysicsParams;
use crate::spectral::jacobi_eigen;

/// Bands of the full 2D layer problem around a closed curve. Reports the
/// lowest `2 m_max + 1` renormalized eigenvalues per thickness, indexed
/// by position in the sorted spectrum.
pub fn curve_band_spectrum_2d(
    curve: &CurveSpec,
    cfg: &LayerConfig,
    params: &PhysicsParams,
) -> Result<BandResult> {
    if !curve.closed {
        return Err(Error::UnsupportedDomain(
            "2D band computation needs a closed curve".into(),
        ));
    }
    if cfg.n_tangential < 5 || cfg.n_tangential.is_multiple_of(2) {
        return Err(Error::Usage(format!(
            "tangential basis size must be odd and at least 5, got {}",
            cfg.n_tangential
        )));
    }
    if cfg.n_tangential * cfg.n_transverse > 4096 {
        return Err(Error::Usage(format!(
            "grid budget exceeded: {} x {} > 4096",
            cfg.n_tangential, cfg.n_transverse
        )));
    }
    let arc = arc_length_reparam(curve, 1e-9)?;
    let total = arc.total_length();

    // Tangential quadrature grid with curvature data. The trapezoid rule
    // on a uniform periodic grid is spectrally accurate here.
    let n_tang = cfg.n_tangential;
    let max_freq = (n_tang - 1) / 2;
    let q1 = (8 * max_freq).max(128);
    let mut s_nodes = Vec::with_capacity(q1);
    let mut k_vals = Vec::with_capacity(q1);
    let mut dk_vals = Vec::with_capacity(q1);
    for i in 0..q1 {
        let s = total * i as f64 / q1 as f64;
        let t = arc.t_at(s)?;
        let jet = curve_jet(curve, t)?;
        let k = plane_curvature(&jet)?;
        let dk_dt = curvature_t_derivative(&jet)?;
        s_nodes.push(s);
        k_vals.push(k);
        dk_vals.push(dk_dt / norm2(jet.d1));
    }
    let ws = total / q1 as f64;
    let max_k = k_vals.iter().fold(0.0f64, |m, k| m.max(k.abs()));
    cfg.validate(max_k)?;

    let fourier = FourierBasis::new(total, n_tang);
    let (e_tab, de_tab) = fourier.tables(&s_nodes);

    let n_report = (2 * cfg.m_max + 1) as usize;
    let mut bands: Vec<BandSeries> = (0..n_report as u32)
        .map(|m| BandSeries { mode: m, samples: Vec::new(), extrapolation: None })
        .collect();
    let mut first_band_counts = Vec::new();

    for &eps in &cfg.eps {
        let validity = if max_k > 0.0 { 1.0 / max_k } else { f64::INFINITY };
        let (lo, hi) = transverse_box(cfg.confinement, eps, validity)?;
        let n_trans = cfg.n_transverse;
        let sine = SineBasis::new(lo, hi, n_trans);
        let (x_nodes, x_weights) = transverse_quadrature(lo, hi, n_trans);
        let (phi, dphi) = sine.tables(&x_nodes);
        let h2 = params.hbar * params.hbar;

        // Confinement contribution, tangentially constant.
        let mut conf = vec![0.0; n_trans * n_trans];
        if cfg.confinement == Confinement::Harmonic {
            let gamma = h2 / eps.powi(4);
            let weighted: Vec<Vec<f64>> = phi
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&x_nodes)
                        .map(|(v, &x)| v * (0.5 * gamma).sqrt() * x)
                        .collect()
                })
                .collect();
            weighted_gram(&weighted, &x_weights, &mut conf);
        }

        let dim = n_tang * n_trans;
        let mut matrix = vec![0.0; dim * dim];
        let mut shifted = vec![vec![0.0; x_nodes.len()]; n_trans];
        let mut m_ee = vec![0.0; n_trans * n_trans];
        let mut m_dd = vec![0.0; n_trans * n_trans];
        let mut m_ed = vec![0.0; n_trans * n_trans];
        let mut scaled0 = vec![vec![0.0; x_nodes.len()]; n_trans];
        let mut scaled1 = vec![vec![0.0; x_nodes.len()]; n_trans];

        for i in 0..q1 {
            let k = k_vals[i];
            let dk = dk_vals[i];
            // Transverse integrals at this tangential node.
            for n in 0..n_trans {
                for (j, &x) in x_nodes.iter().enumerate() {
                    let factor = 1.0 - x * k;
                    if factor <= 0.0 {
                        return Err(Error::LayerBreakdown(format!(
                            "layer coordinate factor {factor} <= 0 at s index {i}"
                        )));
                    }
                    let b2 = k / (2.0 * factor);
                    let b1 = x * dk / (2.0 * factor);
                    shifted[n][j] = dphi[n][j] + b2 * phi[n][j];
                    let ginv_sqrt = 1.0 / factor;
                    scaled0[n][j] = phi[n][j] * ginv_sqrt;
                    scaled1[n][j] = phi[n][j] * ginv_sqrt * b1;
                }
            }
            weighted_gram(&shifted, &x_weights, &mut m_ee);
            weighted_gram(&scaled0, &x_weights, &mut m_dd);
            // m_ed = sum w g^-1 b1 phi phi  (cross term between
            // tangential-derivative and tangential-value factors).
            for a in 0..n_trans {
                for b in a..n_trans {
                    let mut acc = 0.0;
                    for j in 0..x_nodes.len() {
                        acc += x_weights[j] * scaled1[a][j] * scaled0[b][j];
                    }
                    m_ed[a * n_trans + b] = acc;
                    m_ed[b * n_trans + a] = acc;
                }
            }
            // m_ee also needs the g^-1 b1^2 piece.
            for a in 0..n_trans {
                for b in a..n_trans {
                    let mut acc = 0.0;
                    for j in 0..x_nodes.len() {
                        acc += x_weights[j] * scaled1[a][j] * scaled1[b][j];
                    }
                    m_ee[a * n_trans + b] += acc;
                    m_ee[b * n_trans + a] = m_ee[a * n_trans + b];
                }
            }

            // Accumulate into the big matrix: upper triangle in the
            // tangential index, mirrored at the end.
            for a in 0..n_tang {
                let (ea, dea) = (e_tab[a][i], de_tab[a][i]);
                for b in a..n_tang {
                    let (eb, deb) = (e_tab[b][i], de_tab[b][i]);
                    let w_ee = ws * ea * eb;
                    let w_dd = ws * dea * deb;
                    let w_ed = ws * (dea * eb + ea * deb);
                    let block = &mut matrix[(a * n_trans) * dim + b * n_trans..];
                    for n in 0..n_trans {
                        let row = &mut block[n * dim..n * dim + n_trans];
                        let tee = &m_ee[n * n_trans..(n + 1) * n_trans];
                        let tdd = &m_dd[n * n_trans..(n + 1) * n_trans];
                        let ted = &m_ed[n * n_trans..(n + 1) * n_trans];
                        for np in 0..n_trans {
                            row[np] += w_ee * tee[np] + w_dd * tdd[np] + w_ed * ted[np];
                        }
                    }
                }
            }
        }

        // Scale, add confinement, mirror to the lower triangle.
        for a in 0..n_tang {
            for b in a..n_tang {
                for n in 0..n_trans {
                    for np in 0..n_trans {
                        let idx = (a * n_trans + n) * dim + b * n_trans + np;
                        matrix[idx] *= 0.5 * h2;
                        if a == b {
                            matrix[idx] += conf[n * n_trans + np];
                        }
                    }
                }
            }
        }
        for r in 0..dim {
            for c in (r + 1)..dim {
                matrix[c * dim + r] = matrix[r * dim + c];
            }
        }

        let eig = jacobi_eigen(&matrix, dim)?;
        let e_perp = transverse_ground(cfg.confinement, eps, params);
        let second_band = match cfg.confinement {
            Confinement::Dirichlet => 4.0 * e_perp,
            Confinement::Harmonic => 3.0 * e_perp,
        };
        let in_first_band = eig.eigenvalues.iter().filter(|&&v| v < second_band).count();
        first_band_counts.push((eps, in_first_band));
        if in_first_band < n_report {
            return Err(Error::SolverFailure(format!(
                "only {in_first_band} eigenvalues below the second transverse level at eps = {eps}; \
                 requested {n_report} bands"
            )));
        }
        for (idx, series) in bands.iter_mut().enumerate() {
            let e_raw = eig.eigenvalues[idx];
            series.samples.push(BandSample {
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
    Ok(BandResult {
        geometry: format!("curve2d {}", curve.describe()),
        bands,
        first_band_counts,
    })
}
