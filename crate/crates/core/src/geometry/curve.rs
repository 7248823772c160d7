//! Catalog plane curves with closed-form derivative jets.

use crate::error::{Error, Result};
use crate::geometry::{cross2, norm2};

/// Catalog of plane curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveKind {
    /// Unit-speed straight line `(t, 0)`.
    Line,
    /// Counterclockwise circle of the given radius.
    Circle { radius: f64 },
    /// `(a cos t, b sin t)`.
    Ellipse { a: f64, b: f64 },
    /// `(t, t^2 / (2 c))`; `c` is the curvature radius at the vertex.
    Parabola { scale: f64 },
}

/// A plane curve together with its parameter domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSpec {
    pub kind: CurveKind,
    pub t_start: f64,
    pub t_end: f64,
    pub closed: bool,
}

impl CurveSpec {
    pub fn line(t_start: f64, t_end: f64) -> Result<Self> {
        if t_end <= t_start {
            return Err(Error::Usage("curve domain must have t_end > t_start".into()));
        }
        Ok(Self { kind: CurveKind::Line, t_start, t_end, closed: false })
    }

    pub fn circle(radius: f64) -> Result<Self> {
        if radius <= 0.0 || !radius.is_finite() {
            return Err(Error::Usage(format!("circle radius must be positive, got {radius}")));
        }
        Ok(Self {
            kind: CurveKind::Circle { radius },
            t_start: 0.0,
            t_end: 2.0 * std::f64::consts::PI,
            closed: true,
        })
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        if a <= 0.0 || b <= 0.0 || !a.is_finite() || !b.is_finite() {
            return Err(Error::Usage(format!("ellipse semi-axes must be positive, got ({a}, {b})")));
        }
        Ok(Self {
            kind: CurveKind::Ellipse { a, b },
            t_start: 0.0,
            t_end: 2.0 * std::f64::consts::PI,
            closed: true,
        })
    }

    pub fn parabola(scale: f64, t_start: f64, t_end: f64) -> Result<Self> {
        if scale <= 0.0 || !scale.is_finite() {
            return Err(Error::Usage(format!("parabola scale must be positive, got {scale}")));
        }
        if t_end <= t_start {
            return Err(Error::Usage("curve domain must have t_end > t_start".into()));
        }
        Ok(Self { kind: CurveKind::Parabola { scale }, t_start, t_end, closed: false })
    }

    pub fn period(&self) -> f64 {
        self.t_end - self.t_start
    }

    pub fn describe(&self) -> String {
        match self.kind {
            CurveKind::Line => "line".into(),
            CurveKind::Circle { radius } => format!("circle radius={radius}"),
            CurveKind::Ellipse { a, b } => format!("ellipse a={a} b={b}"),
            CurveKind::Parabola { scale } => format!("parabola scale={scale}"),
        }
    }

    /// Wrap a parameter into the fundamental domain of a closed curve;
    /// open curves reject parameters outside their domain.
    pub(crate) fn clamp_param(&self, t: f64) -> Result<f64> {
        if self.closed {
            let p = self.period();
            let mut x = (t - self.t_start) % p;
            if x < 0.0 {
                x += p;
            }
            Ok(self.t_start + x)
        } else if t < self.t_start - 1e-12 || t > self.t_end + 1e-12 {
            Err(Error::OutsideDomain { value: t, lo: self.t_start, hi: self.t_end })
        } else {
            Ok(t)
        }
    }
}

/// Position and parameter derivatives of orders 1..3 at a curve point.
#[derive(Debug, Clone, Copy)]
pub struct CurveJet {
    pub position: [f64; 2],
    pub d1: [f64; 2],
    pub d2: [f64; 2],
    pub d3: [f64; 2],
}

/// Closed-form jet of a catalog curve; no numeric differentiation.
pub fn curve_jet(curve: &CurveSpec, t: f64) -> Result<CurveJet> {
    let t = curve.clamp_param(t)?;
    let jet = match curve.kind {
        CurveKind::Line => CurveJet {
            position: [t, 0.0],
            d1: [1.0, 0.0],
            d2: [0.0, 0.0],
            d3: [0.0, 0.0],
        },
        CurveKind::Circle { radius: r } => {
            let (s, c) = t.sin_cos();
            CurveJet {
                position: [r * c, r * s],
                d1: [-r * s, r * c],
                d2: [-r * c, -r * s],
                d3: [r * s, -r * c],
            }
        }
        CurveKind::Ellipse { a, b } => {
            let (s, c) = t.sin_cos();
            CurveJet {
                position: [a * c, b * s],
                d1: [-a * s, b * c],
                d2: [-a * c, -b * s],
                d3: [a * s, -b * c],
            }
        }
        CurveKind::Parabola { scale } => CurveJet {
            position: [t, t * t / (2.0 * scale)],
            d1: [1.0, t / scale],
            d2: [0.0, 1.0 / scale],
            d3: [0.0, 0.0],
        },
    };
    Ok(jet)
}

/// Signed curvature `(x' y'' - y' x'') / |d1|^3`, counterclockwise positive.
pub fn plane_curvature(jet: &CurveJet) -> Result<f64> {
    let speed = norm2(jet.d1);
    if speed < 1e-14 {
        return Err(Error::SingularPoint { t: f64::NAN });
    }
    Ok(cross2(jet.d1, jet.d2) / (speed * speed * speed))
}

/// Parameter derivative of the signed curvature, `dk/dt`.
///
/// Needed by the band simulations, where the tangential derivative of
/// `k(q_1)` enters the conjugated quadratic form.
pub fn curvature_t_derivative(jet: &CurveJet) -> Result<f64> {
    let speed = norm2(jet.d1);
    if speed < 1e-14 {
        return Err(Error::SingularPoint { t: f64::NAN });
    }
    let num = cross2(jet.d1, jet.d3) * speed * speed
        - 3.0 * cross2(jet.d1, jet.d2) * crate::geometry::dot2(jet.d1, jet.d2);
    Ok(num / speed.powi(5))
}
