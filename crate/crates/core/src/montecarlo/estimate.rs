//! Hit-or-miss estimation of `vol(K_ε)`.
//!
//! Samples are drawn uniformly from the origin-centered ball of radius
//! `R + ε`, which contains `K_ε`. The sample range is cut into fixed chunks
//! and chunk `c` draws from ChaCha8 stream `c` of the seed, so the hit count
//! (an integer sum over chunks) does not depend on how chunks are scheduled
//! across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::projection::ProjectionOracle;
use crate::error::{Error, Result};
use crate::mathkernel::ball_volume;

pub const CHUNK: u64 = 1 << 14;

#[derive(Clone, Debug, Serialize)]
pub struct MCEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: u64,
    pub hits: u64,
    pub seed: u64,
    pub epsilon: f64,
    /// Radius of the sampling ball.
    pub radius: f64,
}

/// Fills `x` with a uniform point of the ball of the given radius.
fn sample_ball(rng: &mut ChaCha8Rng, x: &mut [f64], radius: f64) {
    let mut nn = 0.0;
    for v in x.iter_mut() {
        let g: f64 = rng.sample(StandardNormal);
        *v = g;
        nn += g * g;
    }
    let u: f64 = rng.random();
    let scale = radius * u.powf(1.0 / x.len() as f64) / nn.sqrt();
    x.iter_mut().for_each(|v| *v *= scale);
}

fn count_chunk(
    oracle: &ProjectionOracle,
    eps: f64,
    radius: f64,
    seed: u64,
    chunk: u64,
    n: u64,
) -> Result<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let mut ws = oracle.workspace();
    let mut x = vec![0.0; oracle.dim];
    let mut hits = 0;
    for _ in 0..n {
        sample_ball(&mut rng, &mut x, radius);
        if oracle.within(&x, eps, &mut ws)? {
            hits += 1;
        }
    }
    Ok(hits)
}

/// Estimates `vol(K_ε)` from `samples` uniform points. With `jobs = Some(n)`
/// the work runs on a dedicated pool of `n` threads, otherwise on the
/// global rayon pool; the result is the same either way.
pub fn estimate_neighborhood_volume(
    oracle: &ProjectionOracle,
    epsilon: f64,
    samples: u64,
    seed: u64,
    jobs: Option<usize>,
) -> Result<MCEstimate> {
    if !(epsilon >= 0.0) || !epsilon.is_finite() {
        return Err(Error::Domain(format!("epsilon = {epsilon} must be >= 0")));
    }
    if samples == 0 {
        return Err(Error::Domain("samples must be >= 1".into()));
    }
    let radius = oracle.circumradius + epsilon;
    let chunks = samples.div_ceil(CHUNK);
    let run = || -> Result<u64> {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let n = CHUNK.min(samples - c * CHUNK);
                count_chunk(oracle, epsilon, radius, seed, c, n)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))
    };
    let hits = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Input(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let vball = ball_volume(oracle.dim).to_f64() * radius.powi(oracle.dim as i32);
    let p = hits as f64 / samples as f64;
    Ok(MCEstimate {
        value: p * vball,
        stderr: (p * (1.0 - p) / samples as f64).sqrt() * vball,
        samples,
        hits,
        seed,
        epsilon,
        radius,
    })
}
