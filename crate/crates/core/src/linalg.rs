//! Small dense kernels: cyclic Jacobi eigensolvers (real symmetric and
//! complex Hermitian) and a pivoted Gaussian solve.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition `A = V diag(values) Vᵀ` of a real symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub n: usize,
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Row-major; column `k` is the eigenvector of `values[k]`.
    pub vectors: Vec<f64>,
}

impl SymmetricEigen {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.vectors[i * self.n + k]).collect()
    }
}

fn off_norm_sq(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s
}

/// Rotation `(c, s)` annihilating `a_pq` of the 2×2 block
/// `[[a_pp, a_pq], [a_pq, a_qq]]`, together with `t = s/c`.
#[inline]
fn jacobi_rotation(app: f64, aqq: f64, apq: f64) -> (f64, f64, f64) {
    let tau = (aqq - app) / (2.0 * apq);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c, t)
}

/// Cyclic Jacobi on a row-major symmetric `n×n` matrix. Stops once the
/// off-diagonal Frobenius norm falls below `tol · ‖A‖_F`.
pub fn symmetric_eigen(a: &[f64], n: usize, tol: f64) -> Result<SymmetricEigen> {
    assert_eq!(a.len(), n * n);
    let mut a = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = (tol * scale).powi(2);
    let mut sweeps = 0;
    while off_norm_sq(&a, n) > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                what: "symmetric Jacobi",
                iterations: sweeps,
                residual: off_norm_sq(&a, n).sqrt(),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let (c, s, t) = jacobi_rotation(a[p * n + p], a[q * n + q], apq);
                for r in 0..n {
                    if r != p && r != q {
                        let arp = a[r * n + p];
                        let arq = a[r * n + q];
                        let np = c * arp - s * arq;
                        let nq = s * arp + c * arq;
                        a[r * n + p] = np;
                        a[p * n + r] = np;
                        a[r * n + q] = nq;
                        a[q * n + r] = nq;
                    }
                }
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&k| a[k * n + k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (col, &k) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + col] = v[r * n + k];
        }
    }
    Ok(SymmetricEigen { n, values, vectors })
}

/// Eigenvalues (ascending) of a row-major Hermitian `n×n` matrix by cyclic
/// complex Jacobi. `a` is overwritten. Stops once the off-diagonal
/// Frobenius norm is at most `tol` (absolute).
pub fn hermitian_eigenvalues_in_place(
    a: &mut [Complex64],
    n: usize,
    tol: f64,
    out: &mut [f64],
) -> Result<()> {
    debug_assert_eq!(a.len(), n * n);
    let off = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * a[i * n + j].norm_sqr();
            }
        }
        s
    };
    let target = tol * tol;
    let mut sweeps = 0;
    while off(a) > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                what: "Hermitian Jacobi",
                iterations: sweeps,
                residual: off(a).sqrt(),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                // Rephase row/column q so that a_pq becomes real and positive.
                let phase = apq / mag;
                for r in 0..n {
                    if r != q {
                        a[r * n + q] *= phase.conj();
                        a[q * n + r] = a[r * n + q].conj();
                    }
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let (c, s, t) = jacobi_rotation(app, aqq, mag);
                for r in 0..n {
                    if r != p && r != q {
                        let arp = a[r * n + p];
                        let arq = a[r * n + q];
                        let np = arp * c - arq * s;
                        let nq = arp * s + arq * c;
                        a[r * n + p] = np;
                        a[p * n + r] = np.conj();
                        a[r * n + q] = nq;
                        a[q * n + r] = nq.conj();
                    }
                }
                a[p * n + p] = Complex64::new(app - t * mag, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * mag, 0.0);
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
            }
        }
    }
    for (i, o) in out.iter_mut().enumerate().take(n) {
        *o = a[i * n + i].re;
    }
    out[..n].sort_by(f64::total_cmp);
    Ok(())
}

pub fn hermitian_eigenvalues(a: &[Complex64], n: usize, tol: f64) -> Result<Vec<f64>> {
    let mut work = a.to_vec();
    let mut out = vec![0.0; n];
    hermitian_eigenvalues_in_place(&mut work, n, tol, &mut out)?;
    Ok(out)
}

/// Solves `A x = b` in place (`b` receives `x`) by Gaussian elimination with
/// partial pivoting. Returns `false` for a numerically singular matrix.
pub fn solve_in_place(a: &mut [f64], b: &mut [f64], n: usize) -> bool {
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let eps = scale * 1e-14 * n as f64;
    for col in 0..n {
        let mut piv = col;
        for r in (col + 1)..n {
            if a[r * n + col].abs() > a[piv * n + col].abs() {
                piv = r;
            }
        }
        if a[piv * n + col].abs() <= eps {
            return false;
        }
        if piv != col {
            for k in 0..n {
                a.swap(col * n + k, piv * n + k);
            }
            b.swap(col, piv);
        }
        let d = a[col * n + col];
        for r in (col + 1)..n {
            let f = a[r * n + col] / d;
            if f != 0.0 {
                for k in col..n {
                    a[r * n + k] -= f * a[col * n + k];
                }
                b[r] -= f * b[col];
            }
        }
    }
    for col in (0..n).rev() {
        let mut s = b[col];
        for k in (col + 1)..n {
            s -= a[col * n + k] * b[k];
        }
        b[col] = s / a[col * n + col];
    }
    true
}

/// `√det(G)` for the Gram matrix `G_ij = ⟨x_i, x_j⟩` of the given vectors:
/// the volume of the parallelotope they span.
pub fn gram_volume(vectors: &[Vec<f64>]) -> f64 {
    let k = vectors.len();
    if k == 0 {
        return 1.0;
    }
    let g = nalgebra::DMatrix::from_fn(k, k, |i, j| dot(&vectors[i], &vectors[j]));
    g.determinant().max(0.0).sqrt()
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
