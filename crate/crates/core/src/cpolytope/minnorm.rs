//! Wolfe's minimum-norm-point algorithm over the convex hull of a finite
//! point set.

use crate::error::{Error, Result};
use crate::linalg::{dot, solve_in_place};

#[derive(Clone, Debug)]
pub struct MinNormPoint {
    /// The point of the hull closest to the origin.
    pub point: Vec<f64>,
    /// Convex weights over the input points (zero outside the active set).
    pub weights: Vec<f64>,
    /// Certified bracket `lower <= dist(0, hull) <= upper`.
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
}

impl MinNormPoint {
    pub fn distance(&self) -> f64 {
        self.upper
    }
}

/// Minimizer of `|Σ μ_i p_i|` over the affine hull of the active points
/// (`Σ μ_i = 1`), from the bordered normal equations.
fn affine_minimizer(points: &[Vec<f64>], active: &[usize]) -> Option<Vec<f64>> {
    let k = active.len();
    let n = k + 1;
    let mut a = vec![0.0; n * n];
    for (r, &i) in active.iter().enumerate() {
        for (c, &j) in active.iter().enumerate().skip(r) {
            let g = dot(&points[i], &points[j]);
            a[r * n + c] = g;
            a[c * n + r] = g;
        }
        a[r * n + k] = 1.0;
        a[k * n + r] = 1.0;
    }
    let mut b = vec![0.0; n];
    b[k] = 1.0;
    if !solve_in_place(&mut a, &mut b, n) {
        return None;
    }
    b.truncate(k);
    Some(b)
}

fn combine(points: &[Vec<f64>], active: &[usize], lambda: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|x| *x = 0.0);
    for (&i, &l) in active.iter().zip(lambda) {
        for (o, p) in out.iter_mut().zip(&points[i]) {
            *o += l * p;
        }
    }
}

/// Runs Wolfe's algorithm until the distance bracket is narrower than `tol`
/// (or the hull is found to contain the origin to within `tol`).
pub fn min_norm_point(points: &[Vec<f64>], tol: f64, max_iter: usize) -> Result<MinNormPoint> {
    if points.is_empty() {
        return Err(Error::Input("min-norm point of an empty set".into()));
    }
    let dim = points[0].len();
    let start = (0..points.len())
        .min_by(|&a, &b| dot(&points[a], &points[a]).total_cmp(&dot(&points[b], &points[b])))
        .unwrap();
    let mut active = vec![start];
    let mut lambda = vec![1.0];
    let mut x = points[start].clone();
    let mut lower = 0.0f64;

    for iter in 1..=max_iter {
        let xx = dot(&x, &x);
        let upper = xx.sqrt();
        let (j, min_ip) = points
            .iter()
            .enumerate()
            .map(|(j, p)| (j, dot(&x, p)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if upper > 0.0 {
            lower = lower.max(min_ip / upper);
        }
        if upper <= tol || upper - lower <= tol || active.contains(&j) {
            return Ok(finish(points.len(), &active, &lambda, x, lower, iter));
        }
        active.push(j);
        lambda.push(0.0);

        loop {
            let Some(mu) = affine_minimizer(points, &active) else {
                // Degenerate active set: the new point is affinely
                // dependent on the others, so no further progress is
                // possible at this precision.
                active.pop();
                lambda.pop();
                return Ok(finish(points.len(), &active, &lambda, x, lower, iter));
            };
            if mu.iter().all(|&m| m > 1e-14) {
                lambda = mu;
                break;
            }
            let mut theta = 1.0f64;
            for (&l, &m) in lambda.iter().zip(&mu) {
                if m <= 1e-14 && l - m > 0.0 {
                    theta = theta.min(l / (l - m));
                }
            }
            for (l, m) in lambda.iter_mut().zip(&mu) {
                *l = (1.0 - theta) * *l + theta * m;
            }
            let mut r = 0;
            while r < active.len() {
                if lambda[r] <= 1e-14 {
                    active.remove(r);
                    lambda.remove(r);
                } else {
                    r += 1;
                }
            }
            let s: f64 = lambda.iter().sum();
            lambda.iter_mut().for_each(|l| *l /= s);
        }
        let mut nx = vec![0.0; dim];
        combine(points, &active, &lambda, &mut nx);
        x = nx;
    }
    let upper = dot(&x, &x).sqrt();
    Err(Error::IterationCap {
        lower: lower.min(upper),
        upper,
    })
}

fn finish(
    m: usize,
    active: &[usize],
    lambda: &[f64],
    x: Vec<f64>,
    lower: f64,
    iterations: usize,
) -> MinNormPoint {
    let mut weights = vec![0.0; m];
    for (&i, &l) in active.iter().zip(lambda) {
        weights[i] = l;
    }
    let upper = dot(&x, &x).sqrt();
    MinNormPoint {
        point: x,
        weights,
        lower: lower.min(upper),
        upper,
        iterations,
    }
}

/// Euclidean distance from `y` to the convex hull of `vertices`.
pub fn distance_to_hull(vertices: &[Vec<f64>], y: &[f64], tol: f64, max_iter: usize) -> Result<MinNormPoint> {
    let shifted: Vec<Vec<f64>> = vertices
        .iter()
        .map(|v| v.iter().zip(y).map(|(a, b)| a - b).collect())
        .collect();
    min_norm_point(&shifted, tol, max_iter)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_and_triangle() {
        let seg = vec![vec![1.0, -1.0], vec![1.0, 1.0]];
        let r = min_norm_point(&seg, 1e-12, 100).unwrap();
        assert!((r.distance() - 1.0).abs() < 1e-12);
        assert!((r.weights[0] - 0.5).abs() < 1e-12);

        let tri = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let r = min_norm_point(&tri, 1e-12, 100).unwrap();
        assert!((r.distance() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn origin_inside() {
        let sq = vec![vec![1.0, 1.0], vec![-1.0, 1.0], vec![-1.0, -1.0], vec![1.0, -1.0]];
        let r = min_norm_point(&sq, 1e-12, 100).unwrap();
        assert!(r.distance() <= 1e-12);
    }

    #[test]
    fn closest_is_a_vertex() {
        let pts = vec![vec![2.0, 0.0], vec![3.0, -4.0], vec![5.0, 5.0]];
        let r = distance_to_hull(&pts, &[0.0, 0.0], 1e-12, 100).unwrap();
        assert!((r.distance() - 2.0).abs() < 1e-12);
        assert!(r.lower <= r.upper);
    }
}
