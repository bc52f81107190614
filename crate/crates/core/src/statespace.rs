//! Closed-form volume, surface area and the second and third derivatives at
//! zero of the Steiner polynomial `p_d(ε) = vol_D(S_{d,ε})` of the state
//! space `S_d`, plus their reconstruction from Selberg integrals.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{require_dim, Result};
use crate::mathkernel::{
    gamma_product, normalize_table, Body, BodyDims, IntrinsicVolumeTable, LogReal,
};
use crate::selberg::{simplex_selberg, SelbergParams};

fn ln_two_pi_power(d: usize) -> f64 {
    (d * (d - 1)) as f64 / 2.0 * (2.0 * PI).ln()
}

fn lgamma_u(n: usize) -> f64 {
    libm::lgamma(n as f64)
}

/// `(2π)^{d(d-1)/2} / (1! 2! ⋯ (d-1)!)`, the volume of `U(d)/U(1)^d`.
pub fn flag_manifold_volume(d: usize) -> Result<LogReal> {
    require_dim(d, 2)?;
    // 1!⋯(d-1)! = Γ(2)⋯Γ(d)
    Ok(LogReal::from_ln(ln_two_pi_power(d)) / gamma_product(2, d as u64))
}

/// `vol_D(S_d) = √d (2π)^{d(d-1)/2} Γ(1)⋯Γ(d) / Γ(d²)`.
pub fn volume(d: usize) -> Result<LogReal> {
    require_dim(d, 2)?;
    let ln = 0.5 * (d as f64).ln() + ln_two_pi_power(d) + gamma_product(1, d as u64).ln_abs()
        - lgamma_u(d * d);
    Ok(LogReal::from_ln(ln))
}

/// `vol_{D-1}(∂S_d) = √(d-1) (2π)^{d(d-1)/2} Γ(1)⋯Γ(d+1) / (Γ(d) Γ(d²-1))`.
pub fn surface(d: usize) -> Result<LogReal> {
    require_dim(d, 2)?;
    let ln = 0.5 * ((d - 1) as f64).ln()
        + ln_two_pi_power(d)
        + gamma_product(1, d as u64 + 1).ln_abs()
        - lgamma_u(d)
        - lgamma_u(d * d - 1);
    Ok(LogReal::from_ln(ln))
}

/// `p_d''(0) = (d-1) d^{3/2} (2π)^{d(d-1)/2} Γ(1)⋯Γ(d) / Γ(d²-2)`.
pub fn p2_at_zero(d: usize) -> Result<LogReal> {
    require_dim(d, 2)?;
    let ln = ((d - 1) as f64).ln() + 1.5 * (d as f64).ln() + ln_two_pi_power(d)
        + gamma_product(1, d as u64).ln_abs()
        - lgamma_u(d * d - 2);
    Ok(LogReal::from_ln(ln))
}

/// `p_d'''(0) = d (d-1)^{3/2} (2π)^{d(d-1)/2} Γ(1)⋯Γ(d+1) / (Γ(d) Γ(d²-3))`.
pub fn p3_at_zero(d: usize) -> Result<LogReal> {
    require_dim(d, 2)?;
    let ln = (d as f64).ln() + 1.5 * ((d - 1) as f64).ln() + ln_two_pi_power(d)
        + gamma_product(1, d as u64 + 1).ln_abs()
        - lgamma_u(d)
        - lgamma_u(d * d - 3);
    Ok(LogReal::from_ln(ln))
}

/// Steiner coefficients `Ṽ_D, Ṽ_{D-1}, Ṽ_{D-2}, Ṽ_{D-3}`, i.e. the
/// coefficients of `ε⁰…ε³` in `vol_D(S_{d,ε})`.
pub fn steiner_coefficients(d: usize) -> Result<[LogReal; 4]> {
    Ok([
        volume(d)?,
        surface(d)?,
        p2_at_zero(d)? / 2.0,
        p3_at_zero(d)? / 6.0,
    ])
}

/// `V_D, V_{D-1}, V_{D-2}, V_{D-3}` of `S_d`.
pub fn intrinsic_table(d: usize) -> Result<IntrinsicVolumeTable> {
    let dims = BodyDims::new(d)?;
    let a = steiner_coefficients(d)?;
    let raw: BTreeMap<usize, LogReal> = (0..4).map(|j| (dims.big_d - j, a[j])).collect();
    normalize_table(Body::StateSpace, &raw, dims)
}

/// All closed-form quantities for one `d`.
#[derive(Clone, Debug, Serialize)]
pub struct StateSpaceVolumes {
    pub dims: BodyDims,
    pub vol_d: LogReal,
    pub surface: LogReal,
    pub p2_at_0: LogReal,
    pub p3_at_0: LogReal,
    pub table: IntrinsicVolumeTable,
}

impl StateSpaceVolumes {
    pub fn new(d: usize) -> Result<Self> {
        Ok(StateSpaceVolumes {
            dims: BodyDims::new(d)?,
            vol_d: volume(d)?,
            surface: surface(d)?,
            p2_at_0: p2_at_zero(d)?,
            p3_at_0: p3_at_zero(d)?,
            table: intrinsic_table(d)?,
        })
    }
}

/// The squared Vandermonde `f_d(x) = ∏_{i<j} (x_i - x_j)²`, the density of
/// the spectrum of a uniformly distributed state.
#[derive(Clone, Copy, Debug)]
pub struct EigenDensity {
    pub d: usize,
}

impl EigenDensity {
    pub fn new(d: usize) -> Result<Self> {
        require_dim(d, 1)?;
        Ok(EigenDensity { d })
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.d, "point has the wrong dimension");
        let mut v = 1.0;
        for i in 0..x.len() {
            for j in (i + 1)..x.len() {
                v *= (x[i] - x[j]).powi(2);
            }
        }
        v
    }
}

fn sel(n: usize, alpha: f64, k: usize, m: usize) -> Result<LogReal> {
    simplex_selberg(&SelbergParams::new(n, alpha, 1.0, k, m)?)
}

/// `vol_D(S_d) = (1/d!) vol(Fl) ∫_{Δ^{d-1}} f_d`.
pub fn volume_via_selberg(d: usize) -> Result<LogReal> {
    require_dim(d, 2)?;
    let pre = flag_manifold_volume(d)? / gamma_product(d as u64 + 1, d as u64 + 1);
    Ok(pre * sel(d, 1.0, 0, 0)?)
}

/// `p_d''(0)` rebuilt from the boundary integral over the rank-`(d-1)`
/// stratum: `(1/d!) vol(Fl) · d · 2√(d(d-1)) · I_Selberg(d-1, 2, 1, 0, d-2)`.
pub fn p2_via_selberg(d: usize) -> Result<LogReal> {
    require_dim(d, 2)?;
    let df = d as f64;
    let pre = flag_manifold_volume(d)? / gamma_product(d as u64 + 1, d as u64 + 1);
    Ok(pre * (df * 2.0 * (df * (df - 1.0)).sqrt()) * sel(d - 1, 2.0, 0, d - 2)?)
}

/// `p_d'''(0)` rebuilt as
/// `(1/d!) vol(Fl) · d · [2d · I(d-1,1,1,d-2,d-2) + 4d(d-2) · I(d-1,2,1,0,d-3)]`.
/// The second term carries the factor `d - 2` and is dropped at `d = 2`.
pub fn p3_via_selberg(d: usize) -> Result<LogReal> {
    require_dim(d, 2)?;
    let df = d as f64;
    let pre = flag_manifold_volume(d)? / gamma_product(d as u64 + 1, d as u64 + 1);
    let mut bracket = sel(d - 1, 1.0, d - 2, d - 2)? * (2.0 * df);
    if d > 2 {
        bracket = bracket + sel(d - 1, 2.0, 0, d - 3)? * (4.0 * df * (df - 2.0));
    }
    Ok(pre * df * bracket)
}
