//! Cyclic Jacobi diagonalization of dense real symmetric matrices.
//!
//! Plane rotations annihilate one off-diagonal element at a time; a full
//! row-cyclic pass is one sweep. Unconditionally stable and dependency
//! free, which is all the desk-scale problems here need (N up to ~2500).

use crate::error::{Error, Result};

pub struct JacobiEigen {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors, column `k` (stride `n`) pairing with `eigenvalues[k]`.
    pub vectors: Vec<f64>,
    pub sweeps: usize,
}

const OFF_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Diagonalize a symmetric matrix (row-major, order `n`).
///
/// Converges when the off-diagonal Frobenius norm falls below
/// `1e-12 * |A|_F`; errs out after 100 sweeps.
///
/// Rotations touch rows of the transposed pair, so the workspace is kept
/// at an odd leading dimension; a power-of-two stride makes every column
/// access land in the same cache set and the solve falls off a cliff.
pub fn jacobi_eigen(matrix: &[f64], n: usize) -> Result<JacobiEigen> {
    assert_eq!(matrix.len(), n * n);
    let lda = if n.is_multiple_of(2) { n + 1 } else { n };
    let mut a = vec![0.0; lda * n];
    for r in 0..n {
        a[r * lda..r * lda + n].copy_from_slice(&matrix[r * n..(r + 1) * n]);
    }
    let mut v = vec![0.0; lda * n];
    for i in 0..n {
        v[i * lda + i] = 1.0;
    }
    let norm = {
        let mut s = 0.0;
        for x in matrix {
            s += x * x;
        }
        s.sqrt()
    };
    let off_norm = |a: &[f64]| {
        let mut sum = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                sum += a[p * lda + q] * a[p * lda + q];
            }
        }
        (2.0 * sum).sqrt()
    };
    if norm == 0.0 || n == 1 {
        let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * lda + i]).collect();
        eigenvalues.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let mut vectors = vec![0.0; n * n];
        for r in 0..n {
            vectors[r * n..(r + 1) * n].copy_from_slice(&v[r * lda..r * lda + n]);
        }
        return Ok(JacobiEigen { eigenvalues, vectors, sweeps: 0 });
    }
    let threshold = OFF_TOL * norm;
    let skip = 1e-300_f64.max(norm * 1e-20);
    let mut sweeps = 0;
    while off_norm(&a) > threshold {
        if sweeps >= MAX_SWEEPS {
            return Err(Error::SolverFailure(format!(
                "Jacobi did not converge in {MAX_SWEEPS} sweeps: off-diagonal {} vs threshold {}",
                off_norm(&a),
                threshold
            )));
        }
        sweeps += 1;
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a[p * lda + q];
                if apq.abs() <= skip {
                    a[p * lda + q] = 0.0;
                    a[q * lda + p] = 0.0;
                    continue;
                }
                let theta = 0.5 * (a[q * lda + q] - a[p * lda + p]) / apq;
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;
                a[p * lda + p] -= h;
                a[q * lda + q] += h;
                a[p * lda + q] = 0.0;
                a[q * lda + p] = 0.0;
                // Rotate rows p and q (contiguous), then mirror into the
                // columns so the matrix stays symmetric.
                let (head, tail) = a.split_at_mut(q * lda);
                let row_p = &mut head[p * lda..p * lda + n];
                let row_q = &mut tail[..n];
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = row_p[r];
                    let arq = row_q[r];
                    row_p[r] = arp - s * (arq + tau * arp);
                    row_q[r] = arq + s * (arp - tau * arq);
                }
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    a[r * lda + p] = a[p * lda + r];
                    a[r * lda + q] = a[q * lda + r];
                }
                let (head, tail) = v.split_at_mut(q * lda);
                let vrow_p = &mut head[p * lda..p * lda + n];
                let vrow_q = &mut tail[..n];
                for r in 0..n {
                    let vrp = vrow_p[r];
                    let vrq = vrow_q[r];
                    vrow_p[r] = vrp - s * (vrq + tau * vrp);
                    vrow_q[r] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }
    // Sort ascending, carrying (row-stored) vectors along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * lda + i].partial_cmp(&a[j * lda + j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * lda + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + new_col] = v[old_col * lda + r];
        }
    }
    Ok(JacobiEigen { eigenvalues, vectors, sweeps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_by_hand() {
        let r = jacobi_eigen(&[2.0, 1.0, 1.0, 2.0], 2).unwrap();
        assert!((r.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((r.eigenvalues[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn identity_spectrum() {
        let n = 5;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = 1.0;
        }
        let r = jacobi_eigen(&a, n).unwrap();
        for v in r.eigenvalues {
            assert_eq!(v, 1.0);
        }
    }

    #[test]
    fn residuals_and_trace() {
        // Random-ish symmetric matrix; check A v = lambda v and the trace.
        let n = 24;
        let mut rng = crate::numeric::SplitMix64::new(77);
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let x = rng.range(-1.0, 1.0);
                a[i * n + j] = x;
                a[j * n + i] = x;
            }
        }
        let r = jacobi_eigen(&a, n).unwrap();
        let norm: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        for k in 0..n {
            let mut resid = 0.0;
            for i in 0..n {
                let mut av = 0.0;
                for j in 0..n {
                    av += a[i * n + j] * r.vectors[j * n + k];
                }
                let d = av - r.eigenvalues[k] * r.vectors[i * n + k];
                resid += d * d;
            }
            assert!(resid.sqrt() <= 1e-10 * norm, "residual {} for pair {k}", resid.sqrt());
        }
        let trace: f64 = (0..n).map(|i| a[i * n + i]).sum();
        let sum: f64 = r.eigenvalues.iter().sum();
        assert!((trace - sum).abs() <= 1e-9 * trace.abs().max(1.0));
    }
}
