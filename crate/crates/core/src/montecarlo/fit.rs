//! Weighted least-squares recovery of Steiner coefficients from estimates
//! of `vol(K_ε)` on a grid of `ε`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::estimate::{estimate_neighborhood_volume, MCEstimate};
use super::projection::ProjectionOracle;
use crate::error::{Error, Result};

/// Largest accepted condition number of the scaled, weighted design matrix.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Clone, Debug, Serialize)]
pub struct SteinerFit {
    /// Fitted `a_0 … a_degree`.
    pub coefficients: Vec<f64>,
    /// Covariance of the fitted coefficients.
    pub covariance: Vec<Vec<f64>>,
    pub degree: usize,
    pub eps_grid: Vec<f64>,
    pub estimates: Vec<MCEstimate>,
    /// Weighted residual sum of squares (χ²).
    pub residual: f64,
}

impl SteinerFit {
    pub fn coefficient(&self, k: usize) -> f64 {
        self.coefficients.get(k).copied().unwrap_or(0.0)
    }

    pub fn stderr(&self, k: usize) -> f64 {
        self.covariance.get(k).map_or(0.0, |row| row[k].max(0.0).sqrt())
    }

    pub fn z_score(&self, k: usize, reference: f64) -> f64 {
        (self.coefficient(k) - reference) / self.stderr(k)
    }

    pub fn eval(&self, eps: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * eps + c)
    }
}

/// `points` values from `lo·R` to `hi·R`, geometrically spaced.
pub fn geometric_eps_grid(radius: f64, lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 || !(lo > 0.0) || !(hi > lo) {
        return Err(Error::Domain(format!(
            "bad grid: {points} points on [{lo}, {hi}]"
        )));
    }
    let ratio = (hi / lo).powf(1.0 / (points - 1) as f64);
    Ok((0..points).map(|i| radius * lo * ratio.powi(i as i32)).collect())
}

/// The default 12-point grid from `0.02 R` to `0.5 R`.
pub fn default_eps_grid(radius: f64) -> Vec<f64> {
    geometric_eps_grid(radius, 0.02, 0.5, 12).expect("valid default grid")
}

/// Weighted least-squares fit of `Σ_{k ≤ degree} a_k ε^k` to the
/// estimates, with inverse-variance weights. A zero-variance estimate (all
/// samples hit or all missed) is given the variance of half a hit.
pub fn fit_polynomial(estimates: &[MCEstimate], degree: usize) -> Result<SteinerFit> {
    let n = estimates.len();
    let p = degree + 1;
    if n < p {
        return Err(Error::Domain(format!("{n} points cannot fit degree {degree}")));
    }
    let eps_max = estimates.iter().map(|e| e.epsilon).fold(0.0, f64::max);
    if !(eps_max > 0.0) {
        return Err(Error::Domain("grid needs a positive epsilon".into()));
    }
    let sigma: Vec<f64> = estimates
        .iter()
        .map(|e| {
            if e.stderr > 0.0 {
                e.stderr
            } else {
                let vball = if e.hits > 0 {
                    e.value * e.samples as f64 / e.hits as f64
                } else {
                    e.value.max(1.0)
                };
                vball * 0.5f64.sqrt() / e.samples as f64
            }
        })
        .collect();
    let a = DMatrix::from_fn(n, p, |i, k| (estimates[i].epsilon / eps_max).powi(k as i32) / sigma[i]);
    let b = DVector::from_fn(n, |i, _| estimates[i].value / sigma[i]);
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > 0.0) || smax / smin > MAX_CONDITION {
        return Err(Error::IllConditioned(smax / smin));
    }
    let beta = svd
        .solve(&b, 0.0)
        .map_err(|e| Error::Input(format!("least squares: {e}")))?;
    let v_t = svd.v_t.as_ref().expect("requested V");
    // (AᵀA)⁻¹ = V Σ⁻² Vᵀ
    let cov_scaled = DMatrix::from_fn(p, p, |i, j| {
        (0..p)
            .map(|s| v_t[(s, i)] * v_t[(s, j)] / svd.singular_values[s].powi(2))
            .sum::<f64>()
    });
    let scale: Vec<f64> = (0..p).map(|k| eps_max.powi(-(k as i32))).collect();
    let coefficients: Vec<f64> = (0..p).map(|k| beta[k] * scale[k]).collect();
    let covariance: Vec<Vec<f64>> = (0..p)
        .map(|i| (0..p).map(|j| cov_scaled[(i, j)] * scale[i] * scale[j]).collect())
        .collect();
    let resid = &a * &beta - &b;
    Ok(SteinerFit {
        coefficients,
        covariance,
        degree,
        eps_grid: estimates.iter().map(|e| e.epsilon).collect(),
        estimates: estimates.to_vec(),
        residual: resid.norm_squared(),
    })
}

/// Estimates `vol(K_ε)` on every grid point (independent seeds derived from
/// `seed`) and fits the Steiner polynomial. The degree is the body's
/// dimension, capped so that at least two degrees of freedom remain.
pub fn fit_steiner_coefficients(
    oracle: &ProjectionOracle,
    eps_grid: &[f64],
    samples_per_point: u64,
    seed: u64,
    jobs: Option<usize>,
) -> Result<SteinerFit> {
    if eps_grid.len() < 8 {
        return Err(Error::Domain(format!(
            "need at least 8 grid points, got {}",
            eps_grid.len()
        )));
    }
    let mut sorted = eps_grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted[0] <= 0.0 || sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Domain("grid values must be distinct and positive".into()));
    }
    let estimates = eps_grid
        .iter()
        .enumerate()
        .map(|(i, &eps)| {
            estimate_neighborhood_volume(oracle, eps, samples_per_point, point_seed(seed, i as u64), jobs)
        })
        .collect::<Result<Vec<_>>>()?;
    let degree = oracle.dim.min(eps_grid.len() - 2);
    fit_polynomial(&estimates, degree)
}

/// SplitMix64 finalizer of `seed + i`, giving well-separated seeds per grid
/// point.
pub fn point_seed(seed: u64, i: u64) -> u64 {
    let mut z = seed.wrapping_add(i.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
