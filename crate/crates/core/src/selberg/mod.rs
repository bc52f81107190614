//! Selberg-type integrals over `[0, ∞)^n` and over the standard simplex.
//!
//! With `Φ(x) = ∏ x_i^{α-1} e^{-x_i} ∏_{i<j} |x_i - x_j|^{2γ}` the Laguerre
//! moment
//!
//! ```text
//! ∫ x_1²⋯x_k² x_{k+1}⋯x_m Φ(x) dx
//!   = ∏_{j=1}^{k} (α + 1 + γ(2n - m - j)) ∏_{j=1}^{m} (α + γ(n - j))
//!     × ∏_{j=0}^{n-1} Γ(1 + (1+j)γ) Γ(α + jγ) / Γ(1 + γ)
//! ```
//!
//! and, the integrand being homogeneous, the same moment over the simplex
//! `{x ≥ 0, Σx = 1}` (with its `(n-1)`-dimensional Hausdorff measure) is the
//! Laguerre value times `√n / Γ(n + degree)`.

pub mod quadrature;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mathkernel::{log_gamma, LogReal};

/// Parameters `(n, α, γ, k, m)` of a Selberg moment.
///
/// `n = 1` is admitted: the state-space assemblies at `d = 2` integrate over
/// the one-point simplex `Δ⁰`, where the formulas remain valid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SelbergParams {
    pub n: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub k: usize,
    pub m: usize,
}

impl SelbergParams {
    pub fn new(n: usize, alpha: f64, gamma: f64, k: usize, m: usize) -> Result<Self> {
        let p = SelbergParams {
            n,
            alpha,
            gamma,
            k,
            m,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let &SelbergParams {
            n,
            alpha,
            gamma,
            k,
            m,
        } = self;
        if n < 1 {
            return Err(Error::Domain("Selberg integral needs n >= 1".into()));
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha = {alpha} must be positive")));
        }
        let mut bound = 1.0 / n as f64;
        if n > 1 {
            bound = bound.min(alpha / (n - 1) as f64);
        }
        if !(gamma > -bound) || !gamma.is_finite() {
            return Err(Error::Domain(format!(
                "gamma = {gamma} must exceed -{bound}"
            )));
        }
        if k > m || m > n {
            return Err(Error::Domain(format!("need k <= m <= n, got k={k}, m={m}, n={n}")));
        }
        Ok(())
    }

    /// Degree of homogeneity of the integrand `x_1²⋯x_k² x_{k+1}⋯x_m Φ(x) e^{Σx}`.
    pub fn degree(&self) -> f64 {
        let n = self.n as f64;
        (self.m + self.k) as f64 + n * (self.alpha - 1.0 + self.gamma * (n - 1.0))
    }

    fn moment_prefactor(&self) -> Result<LogReal> {
        let n = self.n as f64;
        let m = self.m as f64;
        let mut acc = LogReal::ONE;
        for j in 1..=self.k {
            acc = acc * (self.alpha + 1.0 + self.gamma * (2.0 * n - m - j as f64));
        }
        for j in 1..=self.m {
            acc = acc * (self.alpha + self.gamma * (n - j as f64));
        }
        if !acc.is_positive() {
            return Err(Error::Domain(format!("non-positive moment prefactor for {self:?}")));
        }
        Ok(acc)
    }
}

/// `∫_{[0,∞)^n} x_1²⋯x_k² x_{k+1}⋯x_m Φ(x) dx`.
pub fn selberg_laguerre(p: &SelbergParams) -> Result<LogReal> {
    p.validate()?;
    let g = p.gamma;
    let mut ln = 0.0;
    for j in 0..p.n {
        let j = j as f64;
        ln += log_gamma(1.0 + (1.0 + j) * g)? + log_gamma(p.alpha + j * g)? - log_gamma(1.0 + g)?;
    }
    Ok(p.moment_prefactor()? * LogReal::from_ln(ln))
}

/// `I_Δ = √n / Γ(n + h_degree) · I_e`: the integral of a homogeneous
/// polynomial `h` over the simplex from its integral against `e^{-Σx}`.
pub fn simplex_integral_via_exponential(
    h_degree: f64,
    exponential_value: LogReal,
    n: usize,
) -> Result<LogReal> {
    let nf = n as f64;
    let scale = LogReal::from_ln(0.5 * nf.ln() - log_gamma(nf + h_degree)?);
    Ok(scale * exponential_value)
}

/// `I_Selberg(n, α, γ, k, m)`: the Selberg moment over the standard
/// `(n-1)`-simplex.
pub fn simplex_selberg(p: &SelbergParams) -> Result<LogReal> {
    simplex_integral_via_exponential(p.degree(), selberg_laguerre(p)?, p.n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(n: usize, a: f64, g: f64, k: usize, m: usize) -> SelbergParams {
        SelbergParams::new(n, a, g, k, m).unwrap()
    }

    #[test]
    fn laguerre_examples() {
        assert!((selberg_laguerre(&sp(2, 1.0, 1.0, 0, 0)).unwrap().to_f64() - 2.0).abs() < 1e-13);
        assert!((selberg_laguerre(&sp(2, 1.0, 1.0, 0, 1)).unwrap().to_f64() - 4.0).abs() < 1e-13);
        // γ = 0 factorizes into n independent Gamma integrals.
        let v = selberg_laguerre(&sp(3, 2.5, 0.0, 0, 0)).unwrap();
        let want = 3.0 * libm::lgamma(2.5);
        assert!((v.ln_abs() - want).abs() < 1e-13);
    }

    #[test]
    fn simplex_examples() {
        let v = simplex_selberg(&sp(2, 1.0, 1.0, 0, 1)).unwrap().to_f64();
        assert!((v - 2f64.sqrt() / 6.0).abs() < 1e-15);
        let seg = simplex_selberg(&sp(2, 1.0, 0.0, 0, 0)).unwrap().to_f64();
        assert!((seg - 2f64.sqrt()).abs() < 1e-15);
        // Δ⁰ is a point; the measure is the counting measure.
        assert!((simplex_selberg(&sp(1, 1.0, 1.0, 0, 0)).unwrap().to_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exponential_conversion() {
        let v = simplex_integral_via_exponential(0.0, LogReal::ONE, 2).unwrap();
        assert!((v.to_f64() - 2f64.sqrt()).abs() < 1e-15);
        let p = sp(2, 1.0, 1.0, 0, 1);
        assert_eq!(p.degree(), 3.0);
        let via = simplex_integral_via_exponential(3.0, selberg_laguerre(&p).unwrap(), 2).unwrap();
        assert!((via.to_f64() - 2f64.sqrt() / 6.0).abs() < 1e-15);
        let doubled =
            simplex_integral_via_exponential(3.0, selberg_laguerre(&p).unwrap() * 2.0, 2).unwrap();
        assert!((doubled.to_f64() - 2.0 * via.to_f64()).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SelbergParams::new(0, 1.0, 1.0, 0, 0).is_err());
        assert!(SelbergParams::new(2, 0.0, 1.0, 0, 0).is_err());
        assert!(SelbergParams::new(3, 1.0, -0.4, 0, 0).is_err());
        assert!(SelbergParams::new(3, 1.0, -0.3, 0, 0).is_ok());
        assert!(SelbergParams::new(2, 1.0, 1.0, 2, 1).is_err());
        assert!(SelbergParams::new(2, 1.0, 1.0, 0, 3).is_err());
        assert!(selberg_laguerre(&SelbergParams { n: 2, alpha: -1.0, gamma: 1.0, k: 0, m: 0 }).is_err());
    }
}
