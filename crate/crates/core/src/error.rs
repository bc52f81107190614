use thiserror::Error;

/// Errors raised by the geometry, estimation and feasibility routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid dimension d = {0} (need d >= {1})")]
    Dimension(usize, usize),

    #[error("{what} did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("minimum-norm iteration cap reached: distance in [{lower:e}, {upper:e}]")]
    IterationCap { lower: f64, upper: f64 },

    #[error("ill-conditioned design matrix (condition number {0:e})")]
    IllConditioned(f64),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_dim(d: usize, min: usize) -> Result<()> {
    if d < min {
        Err(Error::Dimension(d, min))
    } else {
        Ok(())
    }
}
