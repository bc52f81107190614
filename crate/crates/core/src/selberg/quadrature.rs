//! Brute-force quadrature used as an independent oracle for the Selberg
//! closed forms: Gauss rules from the Golub-Welsch eigenproblem, a collapsed
//! (Duffy) tensor rule on the simplex and a tensor Gauss-Laguerre rule on the
//! orthant.

use super::SelbergParams;
use crate::error::{Error, Result};
use crate::linalg::symmetric_eigen;

/// Nodes and weights of a Gauss rule.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Golub-Welsch: the nodes are the eigenvalues of the symmetric tridiagonal
/// Jacobi matrix, the weights `μ₀ · (first eigenvector component)²`.
fn golub_welsch(diag: &[f64], off: &[f64], mu0: f64) -> Result<GaussRule> {
    let n = diag.len();
    let mut j = vec![0.0; n * n];
    for i in 0..n {
        j[i * n + i] = diag[i];
        if i + 1 < n {
            j[i * n + i + 1] = off[i];
            j[(i + 1) * n + i] = off[i];
        }
    }
    let eig = symmetric_eigen(&j, n, 1e-15)?;
    let weights = (0..n).map(|k| mu0 * eig.vectors[k].powi(2)).collect();
    Ok(GaussRule {
        nodes: eig.values,
        weights,
    })
}

/// `points`-node Gauss-Legendre rule mapped to `[0, 1]`.
pub fn gauss_legendre_unit(points: usize) -> Result<GaussRule> {
    if points == 0 {
        return Err(Error::Domain("quadrature needs at least one node".into()));
    }
    let diag = vec![0.0; points];
    let off: Vec<f64> = (1..points)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    let rule = golub_welsch(&diag, &off, 2.0)?;
    Ok(GaussRule {
        nodes: rule.nodes.iter().map(|x| 0.5 * (x + 1.0)).collect(),
        weights: rule.weights.iter().map(|w| 0.5 * w).collect(),
    })
}

/// `points`-node Gauss-Laguerre rule for the weight `e^{-x}` on `[0, ∞)`.
pub fn gauss_laguerre(points: usize) -> Result<GaussRule> {
    if points == 0 {
        return Err(Error::Domain("quadrature needs at least one node".into()));
    }
    let diag: Vec<f64> = (0..points).map(|k| 2.0 * k as f64 + 1.0).collect();
    let off: Vec<f64> = (1..points).map(|k| k as f64).collect();
    golub_welsch(&diag, &off, 1.0)
}

/// Visits every point of the `dim`-fold tensor product of `rule`, passing the
/// coordinates and the product weight.
fn tensor_for_each(rule: &GaussRule, dim: usize, mut f: impl FnMut(&[f64], f64)) {
    let q = rule.nodes.len();
    let mut idx = vec![0usize; dim];
    let mut u = vec![0.0; dim];
    loop {
        let mut w = 1.0;
        for (a, &i) in idx.iter().enumerate() {
            u[a] = rule.nodes[i];
            w *= rule.weights[i];
        }
        f(&u, w);
        let mut a = 0;
        loop {
            if a == dim {
                return;
            }
            idx[a] += 1;
            if idx[a] < q {
                break;
            }
            idx[a] = 0;
            a += 1;
        }
    }
}

/// Integrates `f` over the standard simplex `{x ∈ R^n : x ≥ 0, Σx = 1}`
/// against its `(n-1)`-dimensional Hausdorff measure, using the collapsed
/// map `x_i = u_i ∏_{j<i}(1 - u_j)` and a tensor Gauss-Legendre rule.
pub fn simplex_quadrature(n: usize, points: usize, mut f: impl FnMut(&[f64]) -> f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("simplex dimension n must be >= 1".into()));
    }
    if n == 1 {
        return Ok(f(&[1.0]));
    }
    let rule = gauss_legendre_unit(points)?;
    let mut x = vec![0.0; n];
    let mut total = 0.0;
    tensor_for_each(&rule, n - 1, |u, w| {
        let mut rest = 1.0;
        let mut jac = 1.0;
        for (i, &ui) in u.iter().enumerate() {
            x[i] = rest * ui;
            jac *= rest;
            rest *= 1.0 - ui;
        }
        x[n - 1] = rest;
        total += w * jac * f(&x);
    });
    Ok(total * (n as f64).sqrt())
}

/// `x_1²⋯x_k² x_{k+1}⋯x_m ∏ x_i^{α-1} ∏_{i<j} |x_i - x_j|^{2γ}` (no
/// exponential factor).
pub fn selberg_integrand(p: &SelbergParams, x: &[f64]) -> f64 {
    let mut v = 1.0;
    for (i, &xi) in x.iter().enumerate() {
        if i < p.k {
            v *= xi * xi;
        } else if i < p.m {
            v *= xi;
        }
        if p.alpha != 1.0 {
            v *= xi.powf(p.alpha - 1.0);
        }
    }
    if p.gamma != 0.0 {
        for i in 0..x.len() {
            for j in (i + 1)..x.len() {
                v *= (x[i] - x[j]).abs().powf(2.0 * p.gamma);
            }
        }
    }
    v
}

/// Quadrature value of the simplex Selberg moment.
pub fn simplex_selberg_quadrature(p: &SelbergParams, points: usize) -> Result<f64> {
    p.validate()?;
    simplex_quadrature(p.n, points, |x| selberg_integrand(p, x))
}

/// Quadrature value of the Laguerre-type Selberg moment.
pub fn selberg_laguerre_quadrature(p: &SelbergParams, points: usize) -> Result<f64> {
    p.validate()?;
    let rule = gauss_laguerre(points)?;
    let mut total = 0.0;
    tensor_for_each(&rule, p.n, |x, w| total += w * selberg_integrand(p, x));
    Ok(total)
}
