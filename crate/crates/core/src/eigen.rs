//! Cyclic Jacobi eigensolver for dense real symmetric matrices.
//!
//! Slow (`O(n³)` per sweep) but unconditionally stable and self-contained,
//! which is what an oracle should be.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Dense, DenseSymmetricMatrix};

pub const DEFAULT_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct Eigen {
    /// Descending.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector of `values[k]`.
    pub vectors: Dense<f64>,
}

/// Eigenvalues (descending) and orthonormal eigenvectors.
///
/// Stops once the off-diagonal Frobenius norm is at most
/// `tol · max(1, ‖M‖_F)`.
pub fn eigen_symmetric(m: &DenseSymmetricMatrix, tol: f64) -> Result<Eigen> {
    let n = m.order();
    let mut a: Vec<f64> = m.dense().as_slice().to_vec();
    let mut v: Vec<f64> = Dense::<f64>::identity(n).as_slice().to_vec();
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    let idx = |i: usize, j: usize| i * n + j;

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[idx(i, j)] * a[idx(i, j)];
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&a) <= tol * scale;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[idx(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[idx(q, q)] - a[idx(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[idx(k, p)], a[idx(k, q)]);
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[idx(p, k)], a[idx(q, k)]);
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
                a[idx(p, q)] = 0.0;
                a[idx(q, p)] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[idx(k, p)], v[idx(k, q)]);
                    v[idx(k, p)] = c * vkp - s * vkq;
                    v[idx(k, q)] = s * vkp + c * vkq;
                }
            }
        }
        converged = off_norm(&a) <= tol * scale;
    }
    if !converged {
        return Err(Error::NoConvergence(format!(
            "Jacobi eigensolver after {MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[idx(j, j)].total_cmp(&a[idx(i, i)]));
    let values = order.iter().map(|&i| a[idx(i, i)]).collect();
    let vectors = Dense::from_fn(n, |row, col| v[idx(row, order[col])]);
    Ok(Eigen { values, vectors })
}

pub fn eigenvalues_symmetric(m: &DenseSymmetricMatrix, tol: f64) -> Result<Vec<f64>> {
    eigen_symmetric(m, tol).map(|e| e.values)
}

impl Eigen {
    /// `Q·diag(f(λ))·Qᵀ`.
    pub fn apply(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<Complex64> = self.values.iter().map(|&l| f(l)).collect();
        let q = &self.vectors;
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| fv[k] * (q.get(i, k) * q.get(j, k)))
                .sum::<Complex64>()
        })
    }

    pub fn apply_real(&self, f: impl Fn(f64) -> f64) -> Dense<f64> {
        let n = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let q = &self.vectors;
        Dense::from_fn(n, |i, j| {
            (0..n).map(|k| fv[k] * q.get(i, k) * q.get(j, k)).sum()
        })
    }

    /// `‖QΛQᵀ − M‖_max`.
    pub fn reconstruction_error(&self, m: &DenseSymmetricMatrix) -> f64 {
        self.apply_real(|l| l).max_abs_diff(m.dense())
    }
}
