//! Small dependency-free numeric utilities shared across modules:
//! Gauss-Legendre quadrature, dense LU, least squares and a seeded RNG
//! for deterministic sampling in tests.

/// Gauss-Legendre nodes and weights on [-1, 1].
///
/// Newton iteration on the Legendre polynomial; accurate to machine
/// precision for the orders used here (<= 64).
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1);
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            dp = (n as f64) * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        // Center node of odd orders is exactly zero.
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Integrate `f` over [a, b] with composite Gauss-Legendre quadrature.
pub fn integrate_gl<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        let mut acc = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            acc += w * f(mid + half * x);
        }
        total += acc * half;
    }
    total
}

/// In-place LU factorization with partial pivoting.
///
/// Returns the permutation sign and pivot indices, or `None` when a pivot
/// column is exactly zero (singular to working precision).
fn lu_factor(a: &mut [f64], n: usize) -> Option<(f64, Vec<usize>)> {
    let mut piv = vec![0usize; n];
    let mut sign = 1.0;
    for k in 0..n {
        let mut p = k;
        let mut max = a[k * n + k].abs();
        for i in (k + 1)..n {
            let v = a[i * n + k].abs();
            if v > max {
                max = v;
                p = i;
            }
        }
        if max == 0.0 {
            return None;
        }
        piv[k] = p;
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        for i in (k + 1)..n {
            let factor = a[i * n + k] / pivot;
            a[i * n + k] = factor;
            for j in (k + 1)..n {
                a[i * n + j] -= factor * a[k * n + j];
            }
        }
    }
    Some((sign, piv))
}

/// Determinant of a dense square matrix (row-major), by LU.
pub fn determinant(matrix: &[f64], n: usize) -> f64 {
    let mut a = matrix.to_vec();
    match lu_factor(&mut a, n) {
        None => 0.0,
        Some((sign, _)) => {
            let mut det = sign;
            for k in 0..n {
                det *= a[k * n + k];
            }
            det
        }
    }
}

/// Solve `A x = b` for several right-hand sides; returns `None` if the
/// matrix is singular or a pivot is negligible relative to the largest
/// entry.
pub fn solve_dense(matrix: &[f64], n: usize, rhs: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let scale = matrix.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut a = matrix.to_vec();
    let (_, piv) = lu_factor(&mut a, n)?;
    for k in 0..n {
        if a[k * n + k].abs() < 1e-13 * scale.max(f64::MIN_POSITIVE) {
            return None;
        }
    }
    let mut out = Vec::with_capacity(rhs.len());
    for b in rhs {
        let mut x = b.clone();
        for k in 0..n {
            x.swap(k, piv[k]);
            for i in (k + 1)..n {
                let f = a[i * n + k];
                x[i] -= f * x[k];
            }
        }
        for k in (0..n).rev() {
            for j in (k + 1)..n {
                let v = x[j];
                x[k] -= a[k * n + j] * v;
            }
            x[k] /= a[k * n + k];
        }
        out.push(x);
    }
    Some(out)
}

/// Least-squares fit of `ys ~ X c` by Householder QR, for a small number
/// of columns. Returns the coefficient vector and the residual 2-norm.
pub fn least_squares(design: &[Vec<f64>], ys: &[f64]) -> (Vec<f64>, f64) {
    let m = design.len();
    assert!(m >= 1 && m == ys.len());
    let p = design[0].len();
    assert!(m >= p);
    // Column-major working copy of [X | y].
    let cols = p + 1;
    let mut a = vec![0.0; m * cols];
    for (i, row) in design.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            a[j * m + i] = *v;
        }
        a[p * m + i] = ys[i];
    }
    for k in 0..p {
        // Householder vector for column k below row k.
        let mut norm = 0.0;
        for i in k..m {
            norm += a[k * m + i] * a[k * m + i];
        }
        let norm = norm.sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[k * m + k] > 0.0 { -norm } else { norm };
        let mut v = vec![0.0; m - k];
        v[0] = a[k * m + k] - alpha;
        for i in (k + 1)..m {
            v[i - k] = a[k * m + i];
        }
        let vtv: f64 = v.iter().map(|x| x * x).sum();
        if vtv == 0.0 {
            continue;
        }
        for j in k..cols {
            let mut dot = 0.0;
            for i in k..m {
                dot += v[i - k] * a[j * m + i];
            }
            let f = 2.0 * dot / vtv;
            for i in k..m {
                a[j * m + i] -= f * v[i - k];
            }
        }
    }
    // Back substitution on the triangular factor.
    let mut c = vec![0.0; p];
    for k in (0..p).rev() {
        let mut s = a[p * m + k];
        for j in (k + 1)..p {
            s -= a[j * m + k] * c[j];
        }
        c[k] = s / a[k * m + k];
    }
    let mut resid = 0.0;
    for i in p..m {
        resid += a[p * m + i] * a[p * m + i];
    }
    (c, resid.sqrt())
}

/// SplitMix64: tiny deterministic RNG for reproducible sampling.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in [0, n).
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}
