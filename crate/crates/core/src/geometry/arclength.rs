//! Arc-length reparametrization of catalog curves.

use crate::error::{Error, Result};
use crate::geometry::{curve_jet, norm2, plane_curvature, CurveSpec};
use crate::numeric::{gauss_legendre, integrate_gl};

/// Monotone map between the curve parameter `t` and arc length `s`.
///
/// Built once by adaptive panel refinement of the speed integral; the
/// inverse is a monotone cubic interpolant polished by a Newton step
/// against the exact speed.
#[derive(Debug, Clone)]
pub struct ArcLengthMap {
    curve: CurveSpec,
    ts: Vec<f64>,
    ss: Vec<f64>,
    speeds: Vec<f64>,
    total: f64,
}

const GL_ORDER: usize = 16;

fn speed(curve: &CurveSpec, t: f64) -> Result<f64> {
    let v = norm2(curve_jet(curve, t)?.d1);
    if v < 1e-13 {
        return Err(Error::SingularPoint { t });
    }
    Ok(v)
}

/// Arc-length reparametrization with relative tolerance `tol` on the
/// accumulated length (default choice in callers: 1e-9).
pub fn arc_length_reparam(curve: &CurveSpec, tol: f64) -> Result<ArcLengthMap> {
    let tol = if tol > 0.0 { tol } else { 1e-9 };
    let (t0, t1) = (curve.t_start, curve.t_end);
    let mut panels = 64usize;
    let mut prev_total = f64::NAN;
    loop {
        // One pass at the current resolution; singular points surface here.
        let mut ts = Vec::with_capacity(panels + 1);
        let mut ss = Vec::with_capacity(panels + 1);
        let mut speeds = Vec::with_capacity(panels + 1);
        let h = (t1 - t0) / panels as f64;
        let mut acc = 0.0;
        ts.push(t0);
        ss.push(0.0);
        speeds.push(speed(curve, t0)?);
        let (nodes, weights) = gauss_legendre(GL_ORDER);
        for p in 0..panels {
            let lo = t0 + p as f64 * h;
            let mid = lo + 0.5 * h;
            let mut panel = 0.0;
            for (x, w) in nodes.iter().zip(&weights) {
                panel += w * speed(curve, mid + 0.5 * h * x)?;
            }
            acc += panel * 0.5 * h;
            let t_edge = lo + h;
            ts.push(t_edge);
            ss.push(acc);
            speeds.push(speed(curve, t_edge)?);
        }
        let converged = (acc - prev_total).abs() <= tol * acc.abs();
        prev_total = acc;
        // Keep refining until both the length converges and the sample is
        // dense enough for the cubic inverse to hold the same tolerance.
        if (converged && panels >= 512) || panels >= 1 << 14 {
            return Ok(ArcLengthMap { curve: *curve, ts, ss, speeds, total: acc });
        }
        panels *= 2;
    }
}

impl ArcLengthMap {
    pub fn total_length(&self) -> f64 {
        self.total
    }

    pub fn curve(&self) -> &CurveSpec {
        &self.curve
    }

    fn wrap_t(&self, t: f64) -> Result<f64> {
        self.curve.clamp_param(t)
    }

    fn wrap_s(&self, s: f64) -> Result<f64> {
        if self.curve.closed {
            let mut x = s % self.total;
            if x < 0.0 {
                x += self.total;
            }
            Ok(x)
        } else if s < -1e-9 * self.total || s > self.total * (1.0 + 1e-9) {
            Err(Error::OutsideDomain { value: s, lo: 0.0, hi: self.total })
        } else {
            Ok(s.clamp(0.0, self.total))
        }
    }

    /// Arc length from the start of the domain to parameter `t`.
    pub fn s_at(&self, t: f64) -> Result<f64> {
        let t = self.wrap_t(t)?;
        let i = match self.ts.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(i) => return Ok(self.ss[i]),
            Err(i) => i.saturating_sub(1).min(self.ts.len() - 2),
        };
        let curve = self.curve;
        let val = self.ss[i]
            + integrate_gl(
                |x| norm2(curve_jet(&curve, x).expect("inside domain").d1),
                self.ts[i],
                t,
                1,
                GL_ORDER,
            );
        Ok(val)
    }

    /// Parameter at arc length `s` (inverse of `s_at`).
    pub fn t_at(&self, s: f64) -> Result<f64> {
        let s = self.wrap_s(s)?;
        let i = match self.ss.binary_search_by(|x| x.partial_cmp(&s).unwrap()) {
            Ok(i) => return Ok(self.ts[i]),
            Err(i) => i.saturating_sub(1).min(self.ss.len() - 2),
        };
        // Cubic Hermite interpolation of t(s) on the panel, with exact
        // endpoint slopes dt/ds = 1/|r'|.
        let (s0, s1) = (self.ss[i], self.ss[i + 1]);
        let (t0, t1) = (self.ts[i], self.ts[i + 1]);
        let hs = s1 - s0;
        let x = (s - s0) / hs;
        let (m0, m1) = (1.0 / self.speeds[i], 1.0 / self.speeds[i + 1]);
        let h00 = (1.0 + 2.0 * x) * (1.0 - x) * (1.0 - x);
        let h10 = x * (1.0 - x) * (1.0 - x);
        let h01 = x * x * (3.0 - 2.0 * x);
        let h11 = x * x * (x - 1.0);
        let mut t = h00 * t0 + h10 * hs * m0 + h01 * t1 + h11 * hs * m1;
        // Newton polish with the exact integrand; bisection clamp keeps
        // the iterate inside the bracketing panel.
        for _ in 0..3 {
            t = t.clamp(t0, t1);
            let f = self.s_at(t)? - s;
            let v = speed(&self.curve, t)?;
            let step = f / v;
            t -= step;
            if step.abs() < 1e-14 * (1.0 + t.abs()) {
                break;
            }
        }
        Ok(t.clamp(t0, t1))
    }

    /// Signed curvature at arc length `s`.
    pub fn curvature_at_s(&self, s: f64) -> Result<f64> {
        let t = self.t_at(s)?;
        plane_curvature(&curve_jet(&self.curve, t)?)
    }
}
