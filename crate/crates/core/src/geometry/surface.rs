//! Catalog surfaces in 3-space, fundamental forms and curvatures.

use crate::error::{Error, Result};
use crate::geometry::{cross3, dot3, norm3};

/// Catalog of surfaces. Parametrizations put the `r_u x r_v` normal on
/// the concave side, so sphere, cylinder and torus (at the outer equator)
/// have nonnegative principal curvatures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceKind {
    /// `(u, v, 0)`.
    Plane,
    /// Polar angle `u` from the south pole, clockwise azimuth `v`.
    Sphere { radius: f64 },
    /// Axial coordinate `u`, angle `v`.
    Cylinder { radius: f64 },
    /// Poloidal angle `u`, toroidal angle `v`; `big_r > small_r > 0`.
    Torus { big_r: f64, small_r: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSpec {
    pub kind: SurfaceKind,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
}

impl SurfaceSpec {
    pub fn plane() -> Self {
        Self { kind: SurfaceKind::Plane, u_range: (-5.0, 5.0), v_range: (-5.0, 5.0) }
    }

    pub fn sphere(radius: f64) -> Result<Self> {
        if radius <= 0.0 || !radius.is_finite() {
            return Err(Error::Usage(format!("sphere radius must be positive, got {radius}")));
        }
        Ok(Self {
            kind: SurfaceKind::Sphere { radius },
            // Poles are parametrization singularities and stay excluded.
            u_range: (1e-6, std::f64::consts::PI - 1e-6),
            v_range: (0.0, 2.0 * std::f64::consts::PI),
        })
    }

    pub fn cylinder(radius: f64) -> Result<Self> {
        if radius <= 0.0 || !radius.is_finite() {
            return Err(Error::Usage(format!("cylinder radius must be positive, got {radius}")));
        }
        Ok(Self {
            kind: SurfaceKind::Cylinder { radius },
            u_range: (-5.0, 5.0),
            v_range: (0.0, 2.0 * std::f64::consts::PI),
        })
    }

    pub fn torus(big_r: f64, small_r: f64) -> Result<Self> {
        if !(big_r > small_r && small_r > 0.0) {
            return Err(Error::Usage(format!(
                "torus needs big_r > small_r > 0, got ({big_r}, {small_r})"
            )));
        }
        Ok(Self {
            kind: SurfaceKind::Torus { big_r, small_r },
            u_range: (0.0, 2.0 * std::f64::consts::PI),
            v_range: (0.0, 2.0 * std::f64::consts::PI),
        })
    }
}

/// Position with first and second partials at a surface point.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceJet {
    pub position: [f64; 3],
    pub r_u: [f64; 3],
    pub r_v: [f64; 3],
    pub r_uu: [f64; 3],
    pub r_uv: [f64; 3],
    pub r_vv: [f64; 3],
}

/// Closed-form jet of a catalog surface.
pub fn surface_jet(spec: &SurfaceSpec, u: f64, v: f64) -> Result<SurfaceJet> {
    match spec.kind {
        SurfaceKind::Plane => Ok(SurfaceJet {
            position: [u, v, 0.0],
            r_u: [1.0, 0.0, 0.0],
            r_v: [0.0, 1.0, 0.0],
            r_uu: [0.0; 3],
            r_uv: [0.0; 3],
            r_vv: [0.0; 3],
        }),
        SurfaceKind::Sphere { radius: r } => {
            if u <= 0.0 || u >= std::f64::consts::PI {
                return Err(Error::OutsideDomain {
                    value: u,
                    lo: 0.0,
                    hi: std::f64::consts::PI,
                });
            }
            let (su, cu) = u.sin_cos();
            let (sv, cv) = v.sin_cos();
            // Radial unit vector; azimuth runs clockwise so that the
            // r_u x r_v normal points inward.
            let rho = [su * cv, -su * sv, cu];
            let rho_u = [cu * cv, -cu * sv, -su];
            let rho_v = [-su * sv, -su * cv, 0.0];
            let rho_uu = [-su * cv, su * sv, -cu];
            let rho_uv = [-cu * sv, -cu * cv, 0.0];
            let rho_vv = [-su * cv, su * sv, 0.0];
            let scale = |a: [f64; 3]| [r * a[0], r * a[1], r * a[2]];
            Ok(SurfaceJet {
                position: scale(rho),
                r_u: scale(rho_u),
                r_v: scale(rho_v),
                r_uu: scale(rho_uu),
                r_uv: scale(rho_uv),
                r_vv: scale(rho_vv),
            })
        }
        SurfaceKind::Cylinder { radius: r } => {
            let (sv, cv) = v.sin_cos();
            Ok(SurfaceJet {
                position: [r * cv, r * sv, u],
                r_u: [0.0, 0.0, 1.0],
                r_v: [-r * sv, r * cv, 0.0],
                r_uu: [0.0; 3],
                r_uv: [0.0; 3],
                r_vv: [-r * cv, -r * sv, 0.0],
            })
        }
        SurfaceKind::Torus { big_r, small_r } => {
            let (su, cu) = u.sin_cos();
            let (sv, cv) = v.sin_cos();
            let w = big_r + small_r * cu;
            Ok(SurfaceJet {
                position: [w * cv, w * sv, small_r * su],
                r_u: [-small_r * su * cv, -small_r * su * sv, small_r * cu],
                r_v: [-w * sv, w * cv, 0.0],
                r_uu: [-small_r * cu * cv, -small_r * cu * sv, -small_r * su],
                r_uv: [small_r * su * sv, -small_r * su * cv, 0.0],
                r_vv: [-w * cv, -w * sv, 0.0],
            })
        }
    }
}

/// First and second fundamental form coefficients and the unit normal.
#[derive(Debug, Clone, Copy)]
pub struct Forms {
    pub e: f64,
    pub f: f64,
    pub g1: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub normal: [f64; 3],
}

impl Forms {
    /// Determinant of the first form, `E G1 - F^2`.
    pub fn metric_det(&self) -> f64 {
        self.e * self.g1 - self.f * self.f
    }
}

/// E, F, G1 from the first partials; L, M, N from the second partials
/// against the unit normal `r_u x r_v / |r_u x r_v|`.
pub fn fundamental_forms(jet: &SurfaceJet) -> Result<Forms> {
    let raw = cross3(jet.r_u, jet.r_v);
    let len = norm3(raw);
    let scale = norm3(jet.r_u).max(norm3(jet.r_v));
    if len <= 1e-14 * scale * scale {
        return Err(Error::DegenerateParametrization { u: f64::NAN, v: f64::NAN });
    }
    let normal = [raw[0] / len, raw[1] / len, raw[2] / len];
    let forms = Forms {
        e: dot3(jet.r_u, jet.r_u),
        f: dot3(jet.r_u, jet.r_v),
        g1: dot3(jet.r_v, jet.r_v),
        l: dot3(normal, jet.r_uu),
        m: dot3(normal, jet.r_uv),
        n: dot3(normal, jet.r_vv),
        normal,
    };
    let det = forms.metric_det();
    if det <= 0.0 {
        return Err(Error::DegenerateMetric { det });
    }
    Ok(forms)
}

/// Mean, Gauss and principal curvatures at a surface point.
#[derive(Debug, Clone, Copy)]
pub struct Curvatures {
    pub mean: f64,
    pub gauss: f64,
    pub k1: f64,
    pub k2: f64,
}

/// `K = (L N - M^2) / (E G1 - F^2)`,
/// `H = (E N + G1 L - 2 F M) / (2 (E G1 - F^2))`,
/// principal curvatures `H ± sqrt(H^2 - K)` sorted `k1 >= k2`.
pub fn curvatures(forms: &Forms) -> Result<Curvatures> {
    let det = forms.metric_det();
    if det <= 0.0 {
        return Err(Error::DegenerateMetric { det });
    }
    let gauss = (forms.l * forms.n - forms.m * forms.m) / det;
    let mean = (forms.e * forms.n + forms.g1 * forms.l - 2.0 * forms.f * forms.m) / (2.0 * det);
    let disc = mean * mean - gauss;
    // Tiny negative discriminants are rounding at umbilic points.
    let root = disc.max(0.0).sqrt();
    Ok(Curvatures { mean, gauss, k1: mean + root, k2: mean - root })
}
