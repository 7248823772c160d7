//! Orthonormal bases and quadrature tables for the band solvers.

use crate::numeric::gauss_legendre;

/// Dirichlet sine basis on `[lo, hi]`:
/// `phi_n(x) = sqrt(2/W) sin(n pi (x - lo)/W)`, `n = 1..=count`.
#[derive(Debug, Clone)]
pub struct SineBasis {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl SineBasis {
    pub fn new(lo: f64, hi: f64, count: usize) -> Self {
        assert!(hi > lo && count >= 1);
        Self { lo, hi, count }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Values and derivatives of all basis functions at the nodes:
    /// `(phi[n][j], dphi[n][j])`.
    pub fn tables(&self, nodes: &[f64]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let w = self.width();
        let amp = (2.0 / w).sqrt();
        let mut phi = vec![vec![0.0; nodes.len()]; self.count];
        let mut dphi = vec![vec![0.0; nodes.len()]; self.count];
        for n in 1..=self.count {
            let k = n as f64 * std::f64::consts::PI / w;
            for (j, &x) in nodes.iter().enumerate() {
                let arg = k * (x - self.lo);
                phi[n - 1][j] = amp * arg.sin();
                dphi[n - 1][j] = amp * k * arg.cos();
            }
        }
        (phi, dphi)
    }
}

/// Composite Gauss-Legendre nodes and weights on `[lo, hi]`, sized to
/// resolve products of the first `count` sine functions.
pub fn transverse_quadrature(lo: f64, hi: f64, count: usize) -> (Vec<f64>, Vec<f64>) {
    let panels = (count / 2).max(8);
    let order = 16;
    let (gl_nodes, gl_weights) = gauss_legendre(order);
    let h = (hi - lo) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * h;
        for (x, w) in gl_nodes.iter().zip(&gl_weights) {
            nodes.push(mid + 0.5 * h * x);
            weights.push(w * 0.5 * h);
        }
    }
    (nodes, weights)
}

/// Real Fourier basis on a periodic arc of length `total`:
/// index 0 is the constant, then cos/sin pairs of increasing frequency;
/// `count` must be odd so pairs stay complete.
#[derive(Debug, Clone)]
pub struct FourierBasis {
    pub total: f64,
    pub count: usize,
}

impl FourierBasis {
    pub fn new(total: f64, count: usize) -> Self {
        assert!(total > 0.0 && count >= 1 && count % 2 == 1);
        Self { total, count }
    }

    pub fn max_frequency_index(&self) -> usize {
        (self.count - 1) / 2
    }

    /// Values and derivatives at the nodes: `(e[idx][i], de[idx][i])`.
    pub fn tables(&self, nodes: &[f64]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let norm0 = (1.0 / self.total).sqrt();
        let norm = (2.0 / self.total).sqrt();
        let mut e = vec![vec![0.0; nodes.len()]; self.count];
        let mut de = vec![vec![0.0; nodes.len()]; self.count];
        for (i, &s) in nodes.iter().enumerate() {
            e[0][i] = norm0;
        // de[0] stays zero.
            for a in 1..=self.max_frequency_index() {
                let k = 2.0 * std::f64::consts::PI * a as f64 / self.total;
                let (sin, cos) = (k * s).sin_cos();
                e[2 * a - 1][i] = norm * cos;
                de[2 * a - 1][i] = -norm * k * sin;
                e[2 * a][i] = norm * sin;
                de[2 * a][i] = norm * k * cos;
            }
        }
        (e, de)
    }
}

/// Accumulate the symmetric Gram matrix `G[n][n'] = sum_j w_j f[n][j] f[n'][j]`.
pub fn weighted_gram(tables: &[Vec<f64>], weights: &[f64], out: &mut [f64]) {
    let n = tables.len();
    for a in 0..n {
        for b in a..n {
            let mut acc = 0.0;
            for j in 0..weights.len() {
                acc += weights[j] * tables[a][j] * tables[b][j];
            }
            out[a * n + b] = acc;
            out[b * n + a] = acc;
        }
    }
}
