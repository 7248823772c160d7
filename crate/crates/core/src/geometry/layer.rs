//! Thin-layer (tubular) coordinates: closed-form metric factors and an
//! independent numeric Jacobian oracle built on the embedding map.

use crate::error::{Error, Result};
use crate::geometry::{
    arc_length_reparam, cross3, curvatures, curve_jet, fundamental_forms, norm2, norm3,
    surface_jet, ArcLengthMap, CurveKind, CurveSpec, SurfaceSpec,
};
use crate::numeric::determinant;

/// A catalog geometry: plane curve or surface in 3-space.
#[derive(Debug, Clone, PartialEq)]
pub enum GeometrySpec {
    Curve(CurveSpec),
    Surface(SurfaceSpec),
}

/// Tangential coordinates of a layer point: arc length for curves,
/// surface parameters for surfaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tangential {
    Curve { s: f64 },
    Surface { u: f64, v: f64 },
}

/// A point of the thin layer: tangential coordinates plus normal offset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerPoint {
    pub tangential: Tangential,
    pub q_n: f64,
}

/// Metric factor `g = (1 - q2 k(s))^2` of the curve layer coordinates.
pub fn layer_metric_curve(curve: &CurveSpec, s: f64, q2: f64) -> Result<f64> {
    let k = match curve.kind {
        CurveKind::Line => 0.0,
        CurveKind::Circle { radius } => 1.0 / radius,
        _ => arc_length_reparam(curve, 1e-9)?.curvature_at_s(s)?,
    };
    let factor = 1.0 - q2 * k;
    if (q2 * k).abs() >= 1.0 {
        return Err(Error::LayerBreakdown(format!(
            "|q2 k| = {} >= 1 at s = {s}",
            (q2 * k).abs()
        )));
    }
    Ok(factor * factor)
}

/// Normalized surface layer factor `(1 - q3 k1)(1 - q3 k2)`
/// (the metric determinant is `(h1 h2)^2` times its square).
pub fn layer_metric_surface(surface: &SurfaceSpec, u: f64, v: f64, q3: f64) -> Result<f64> {
    let c = curvatures(&fundamental_forms(&surface_jet(surface, u, v)?)?)?;
    let kmax = c.k1.abs().max(c.k2.abs());
    if (q3 * kmax).abs() >= 1.0 {
        return Err(Error::LayerBreakdown(format!(
            "|q3| max|k| = {} >= 1 at (u, v) = ({u}, {v})",
            (q3 * kmax).abs()
        )));
    }
    Ok((1.0 - q3 * c.k1) * (1.0 - q3 * c.k2))
}

/// Embedding map of layer coordinates into the ambient space, with the
/// arc-length map of a curve precomputed so that repeated metric
/// evaluations stay cheap.
#[derive(Debug, Clone)]
pub enum LayerEmbedding {
    Curve { arc: ArcLengthMap },
    Surface { spec: SurfaceSpec },
}

impl LayerEmbedding {
    pub fn new(spec: &GeometrySpec) -> Result<Self> {
        match spec {
            GeometrySpec::Curve(c) => Ok(Self::Curve { arc: arc_length_reparam(c, 1e-9)? }),
            GeometrySpec::Surface(s) => Ok(Self::Surface { spec: *s }),
        }
    }

    /// Ambient position of the curve layer point `(s, q2)`:
    /// `r(t(s)) + q2 N(s)` with `N` the leftward unit normal.
    fn embed_curve(arc: &ArcLengthMap, s: f64, q2: f64) -> Result<[f64; 2]> {
        let t = arc.t_at(s)?;
        let jet = curve_jet(arc.curve(), t)?;
        let v = norm2(jet.d1);
        if v < 1e-13 {
            return Err(Error::SingularPoint { t });
        }
        let tangent = [jet.d1[0] / v, jet.d1[1] / v];
        let normal = [-tangent[1], tangent[0]];
        Ok([jet.position[0] + q2 * normal[0], jet.position[1] + q2 * normal[1]])
    }

    /// Ambient position of the surface layer point `(u, v, q3)`:
    /// `r(u, v) + q3 n(u, v)`.
    fn embed_surface(spec: &SurfaceSpec, u: f64, v: f64, q3: f64) -> Result<[f64; 3]> {
        let jet = surface_jet(spec, u, v)?;
        let raw = cross3(jet.r_u, jet.r_v);
        let len = norm3(raw);
        if len < 1e-14 {
            return Err(Error::DegenerateParametrization { u, v });
        }
        Ok([
            jet.position[0] + q3 * raw[0] / len,
            jet.position[1] + q3 * raw[1] / len,
            jet.position[2] + q3 * raw[2] / len,
        ])
    }

    fn det_at_step(&self, point: &LayerPoint, h: f64) -> Result<f64> {
        match (self, point.tangential) {
            (Self::Curve { arc }, Tangential::Curve { s }) => {
                let q = point.q_n;
                let xp = Self::embed_curve(arc, s + h, q)?;
                let xm = Self::embed_curve(arc, s - h, q)?;
                let yp = Self::embed_curve(arc, s, q + h)?;
                let ym = Self::embed_curve(arc, s, q - h)?;
                let j = [
                    (xp[0] - xm[0]) / (2.0 * h),
                    (yp[0] - ym[0]) / (2.0 * h),
                    (xp[1] - xm[1]) / (2.0 * h),
                    (yp[1] - ym[1]) / (2.0 * h),
                ];
                // J^T J entries for the 2x2 Jacobian.
                let g11 = j[0] * j[0] + j[2] * j[2];
                let g12 = j[0] * j[1] + j[2] * j[3];
                let g22 = j[1] * j[1] + j[3] * j[3];
                Ok(g11 * g22 - g12 * g12)
            }
            (Self::Surface { spec }, Tangential::Surface { u, v }) => {
                let q = point.q_n;
                let cols = [
                    (
                        Self::embed_surface(spec, u + h, v, q)?,
                        Self::embed_surface(spec, u - h, v, q)?,
                    ),
                    (
                        Self::embed_surface(spec, u, v + h, q)?,
                        Self::embed_surface(spec, u, v - h, q)?,
                    ),
                    (
                        Self::embed_surface(spec, u, v, q + h)?,
                        Self::embed_surface(spec, u, v, q - h)?,
                    ),
                ];
                let mut jac = [[0.0; 3]; 3];
                for (c, (p, m)) in cols.iter().enumerate() {
                    for r in 0..3 {
                        jac[r][c] = (p[r] - m[r]) / (2.0 * h);
                    }
                }
                let mut gram = [0.0; 9];
                for a in 0..3 {
                    for b in 0..3 {
                        gram[a * 3 + b] =
                            (0..3).map(|r| jac[r][a] * jac[r][b]).sum::<f64>();
                    }
                }
                Ok(determinant(&gram, 3))
            }
            _ => Err(Error::Usage("tangential point does not match the geometry".into())),
        }
    }

    /// Metric determinant of the embedding coordinates at a layer point,
    /// by central differences with one Richardson refinement.
    pub fn metric_det_numeric(&self, point: &LayerPoint, h: f64) -> Result<f64> {
        if h <= 0.0 || !h.is_finite() {
            return Err(Error::Usage(format!("step must be positive, got {h}")));
        }
        let coarse = self.det_at_step(point, h)?;
        let fine = self.det_at_step(point, 0.5 * h)?;
        let det = (4.0 * fine - coarse) / 3.0;
        if !det.is_finite() || det <= 0.0 {
            return Err(Error::LayerBreakdown(format!(
                "numeric layer metric determinant {det} is not positive"
            )));
        }
        Ok(det)
    }

    /// Closed-form counterpart of [`Self::metric_det_numeric`]:
    /// `(1 - q2 k)^2` for curves, `(h1 h2)^2 ((1 - q3 k1)(1 - q3 k2))^2`
    /// for surfaces.
    pub fn metric_det_closed(&self, point: &LayerPoint) -> Result<f64> {
        match (self, point.tangential) {
            (Self::Curve { arc }, Tangential::Curve { s }) => {
                let k = arc.curvature_at_s(s)?;
                let factor = 1.0 - point.q_n * k;
                if factor <= 0.0 || (point.q_n * k).abs() >= 1.0 {
                    return Err(Error::LayerBreakdown(format!(
                        "|q2 k| = {} >= 1",
                        (point.q_n * k).abs()
                    )));
                }
                Ok(factor * factor)
            }
            (Self::Surface { spec }, Tangential::Surface { u, v }) => {
                let forms = fundamental_forms(&surface_jet(spec, u, v)?)?;
                let factor = layer_metric_surface(spec, u, v, point.q_n)?;
                Ok(forms.metric_det() * factor * factor)
            }
            _ => Err(Error::Usage("tangential point does not match the geometry".into())),
        }
    }
}

/// Numeric metric determinant at a layer point (one-shot convenience; for
/// repeated sampling build a [`LayerEmbedding`] once).
pub fn layer_metric_numeric(spec: &GeometrySpec, point: &LayerPoint, h: f64) -> Result<f64> {
    LayerEmbedding::new(spec)?.metric_det_numeric(point, h)
}
