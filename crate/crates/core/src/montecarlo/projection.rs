//! Exact distance oracles for the bodies sampled by the estimator.
//!
//! Traceless Hermitian coordinates `x ∈ R^{d²-1}` map to the trace-one
//! matrix `A = I/d + Σ_a x_a B_a`, where `B_a` runs over the orthonormal
//! (Hilbert-Schmidt) basis
//!
//! * `(E_jk + E_kj)/√2` for `j < k` (lexicographic),
//! * `(-i E_jk + i E_kj)/√2` for `j < k` (lexicographic),
//! * `(E_11 + ⋯ + E_ll - l E_{l+1,l+1}) / √(l(l+1))` for `l = 1, …, d-1`.
//!
//! The closest state to `A` shares its eigenbasis, so the distance to `S_d`
//! is the distance from the spectrum to the probability simplex.

use num_complex::Complex64;
use serde::Serialize;

use crate::cpolytope::minnorm::min_norm_point;
use crate::cpolytope::PolytopeModel;
use crate::error::{require_dim, Error, Result};
use crate::linalg::{dot, hermitian_eigenvalues_in_place};

/// Off-diagonal tolerance of the Hermitian Jacobi solver.
pub const JACOBI_TOL: f64 = 1e-12;
/// Duality-gap tolerance and iteration cap of the polytope distance.
pub const WOLFE_TOL: f64 = 1e-9;
pub const WOLFE_MAX_ITER: usize = 100_000;

/// Euclidean projection onto `{y ≥ 0, Σ y = 1}` by the sort-and-threshold
/// rule.
pub fn project_to_probability_simplex(x: &[f64]) -> Vec<f64> {
    let mut u = x.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cs = 0.0;
    let mut tau = 0.0;
    for (j, &uj) in u.iter().enumerate() {
        cs += uj;
        let t = (cs - 1.0) / (j + 1) as f64;
        if uj - t > 0.0 {
            tau = t;
        }
    }
    x.iter().map(|&xi| (xi - tau).max(0.0)).collect()
}

fn simplex_distance(x: &[f64]) -> f64 {
    let y = project_to_probability_simplex(x);
    x.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
}

/// The generalized Gell-Mann basis described in the module docs.
#[derive(Clone, Debug)]
pub struct HermitianBasis {
    pub d: usize,
}

impl HermitianBasis {
    pub fn new(d: usize) -> Result<Self> {
        require_dim(d, 2)?;
        Ok(HermitianBasis { d })
    }

    pub fn dim(&self) -> usize {
        self.d * self.d - 1
    }

    /// Writes `A = I/d + Σ x_a B_a` (row-major) into `out`.
    pub fn fill_matrix(&self, x: &[f64], out: &mut [Complex64]) {
        let d = self.d;
        debug_assert_eq!(x.len(), self.dim());
        out.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        let inv = 1.0 / d as f64;
        for m in 0..d {
            out[m * d + m].re = inv;
        }
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let pairs = d * (d - 1) / 2;
        let mut a = 0;
        for j in 0..d {
            for k in (j + 1)..d {
                let s = x[a] * h;
                let t = x[a + pairs] * h;
                out[j * d + k] = Complex64::new(s, -t);
                out[k * d + j] = Complex64::new(s, t);
                a += 1;
            }
        }
        for l in 1..d {
            let c = x[2 * pairs + l - 1] / ((l * (l + 1)) as f64).sqrt();
            for m in 0..l {
                out[m * d + m].re += c;
            }
            out[l * d + l].re -= l as f64 * c;
        }
    }

    pub fn matrix(&self, x: &[f64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.d * self.d];
        self.fill_matrix(x, &mut out);
        out
    }

    /// Inverse of [`matrix`](Self::matrix): `x_a = tr(A B_a)`. The trace of
    /// `A` is not checked.
    pub fn coordinates(&self, a: &[Complex64]) -> Vec<f64> {
        let d = self.d;
        let h = std::f64::consts::SQRT_2;
        let pairs = d * (d - 1) / 2;
        let mut x = vec![0.0; self.dim()];
        let mut i = 0;
        for j in 0..d {
            for k in (j + 1)..d {
                let z = a[j * d + k];
                x[i] = h * z.re;
                x[i + pairs] = -h * z.im;
                i += 1;
            }
        }
        for l in 1..d {
            let s: f64 = (0..l).map(|m| a[m * d + m].re).sum::<f64>() - l as f64 * a[l * d + l].re;
            x[2 * pairs + l - 1] = s / ((l * (l + 1)) as f64).sqrt();
        }
        x
    }
}

/// Distance from a trace-one Hermitian matrix (row-major) to `S_d`.
pub fn distance_to_statespace_matrix(a: &[Complex64], d: usize) -> Result<f64> {
    let mut work = a.to_vec();
    let mut ev = vec![0.0; d];
    hermitian_eigenvalues_in_place(&mut work, d, JACOBI_TOL, &mut ev)?;
    Ok(simplex_distance(&ev))
}

/// Distance from `I/d + Σ x_a B_a` to `S_d`.
pub fn distance_to_statespace(basis: &HermitianBasis, x: &[f64]) -> Result<f64> {
    distance_to_statespace_matrix(&basis.matrix(x), basis.d)
}

/// Distance from `x` to `P_d` by Wolfe's min-norm-point iteration over the
/// vertices. On hitting the iteration cap the error carries the distance
/// bracket reached.
pub fn distance_to_cpolytope(model: &PolytopeModel, x: &[f64]) -> Result<f64> {
    let shifted: Vec<Vec<f64>> = model
        .vertices
        .iter()
        .map(|v| v.iter().zip(x).map(|(a, b)| a - b).collect())
        .collect();
    Ok(min_norm_point(&shifted, WOLFE_TOL, WOLFE_MAX_ITER)?.distance())
}

/// Distance to `C = {x ≥ 0, |x| ≤ R}`: project onto the orthant, then onto
/// the ball (valid because the ball is centered at the cone's apex).
pub fn distance_to_spherical_cone(x: &[f64], radius: f64) -> f64 {
    let yy: f64 = x.iter().map(|&v| v.max(0.0).powi(2)).sum();
    let ny = yy.sqrt();
    let scale = if ny > radius { radius / ny } else { 1.0 };
    x.iter()
        .map(|&v| (v - scale * v.max(0.0)).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Body sampled by the estimator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "body", rename_all = "snake_case")]
pub enum OracleBody {
    StateSpace { d: usize },
    ComplementarityPolytope { d: usize },
    /// Positive orthant of `R^dim` intersected with the ball of radius
    /// `R_d`.
    SphericalCone { d: usize, dim: usize },
    /// Euclidean ball, used to exercise the estimator on a body with a
    /// known Steiner polynomial.
    Ball { dim: usize, radius: f64 },
}

enum Inner {
    StateSpace(HermitianBasis),
    Polytope(PolytopeModel),
    Cone,
    Ball,
}

/// Scratch buffers reused across distance evaluations.
pub struct Workspace {
    matrix: Vec<Complex64>,
    eigen: Vec<f64>,
    points: Vec<Vec<f64>>,
}

pub struct ProjectionOracle {
    pub body: OracleBody,
    /// Ambient dimension.
    pub dim: usize,
    /// Radius of the smallest origin-centered ball containing the body.
    pub circumradius: f64,
    inner: Inner,
}

fn circumradius(d: usize) -> f64 {
    ((d - 1) as f64 / d as f64).sqrt()
}

impl ProjectionOracle {
    pub fn new(body: OracleBody) -> Result<Self> {
        let (dim, circumradius, inner) = match body {
            OracleBody::StateSpace { d } => {
                let b = HermitianBasis::new(d)?;
                (b.dim(), circumradius(d), Inner::StateSpace(b))
            }
            OracleBody::ComplementarityPolytope { d } => {
                let m = PolytopeModel::new(d)?;
                (m.big_d, m.frame.big_r_d, Inner::Polytope(m))
            }
            OracleBody::SphericalCone { d, dim } => {
                require_dim(d, 2)?;
                if dim == 0 {
                    return Err(Error::Domain("cone dimension must be >= 1".into()));
                }
                (dim, circumradius(d), Inner::Cone)
            }
            OracleBody::Ball { dim, radius } => {
                if dim == 0 || !(radius > 0.0) {
                    return Err(Error::Domain("ball needs dim >= 1 and radius > 0".into()));
                }
                (dim, radius, Inner::Ball)
            }
        };
        Ok(ProjectionOracle {
            body,
            dim,
            circumradius,
            inner,
        })
    }

    pub fn state_space(d: usize) -> Result<Self> {
        Self::new(OracleBody::StateSpace { d })
    }

    pub fn polytope(d: usize) -> Result<Self> {
        Self::new(OracleBody::ComplementarityPolytope { d })
    }

    pub fn workspace(&self) -> Workspace {
        let (n, m) = match &self.inner {
            Inner::StateSpace(b) => (b.d, 0),
            Inner::Polytope(p) => (0, p.vertices.len()),
            _ => (0, 0),
        };
        Workspace {
            matrix: vec![Complex64::new(0.0, 0.0); n * n],
            eigen: vec![0.0; n],
            points: vec![vec![0.0; self.dim]; m],
        }
    }

    pub fn distance(&self, x: &[f64]) -> Result<f64> {
        self.distance_with(x, &mut self.workspace())
    }

    pub fn distance_with(&self, x: &[f64], ws: &mut Workspace) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::Input(format!(
                "point has dimension {}, expected {}",
                x.len(),
                self.dim
            )));
        }
        match &self.inner {
            Inner::StateSpace(b) => {
                b.fill_matrix(x, &mut ws.matrix);
                hermitian_eigenvalues_in_place(&mut ws.matrix, b.d, JACOBI_TOL, &mut ws.eigen)?;
                Ok(simplex_distance(&ws.eigen))
            }
            Inner::Polytope(p) => {
                for (buf, v) in ws.points.iter_mut().zip(&p.vertices) {
                    for ((o, a), b) in buf.iter_mut().zip(v).zip(x) {
                        *o = a - b;
                    }
                }
                Ok(min_norm_point(&ws.points, WOLFE_TOL, WOLFE_MAX_ITER)?.distance())
            }
            Inner::Cone => Ok(distance_to_spherical_cone(x, self.circumradius)),
            Inner::Ball => Ok((dot(x, x).sqrt() - self.circumradius).max(0.0)),
        }
    }

    /// `dist(x, K) <= eps`, skipping the full computation when a cheap
    /// bound already decides.
    pub fn within(&self, x: &[f64], eps: f64, ws: &mut Workspace) -> Result<bool> {
        if let Inner::Polytope(p) = &self.inner {
            // dist(x, P) >= |x| - h_P(x)/|x| for the support function h_P.
            let xx = dot(x, x);
            if xx > 0.0 {
                let h = p
                    .vertices
                    .iter()
                    .map(|v| dot(v, x))
                    .fold(f64::NEG_INFINITY, f64::max);
                let nx = xx.sqrt();
                if nx - h / nx > eps {
                    return Ok(false);
                }
            }
        }
        Ok(self.distance_with(x, ws)? <= eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::norm;

    #[test]
    fn simplex_projection_examples() {
        let u = project_to_probability_simplex(&[1.0 / 3.0; 3]);
        assert!(u.iter().all(|&v| (v - 1.0 / 3.0).abs() < 1e-15));
        assert_eq!(project_to_probability_simplex(&[2.0, 0.0, 0.0]), vec![1.0, 0.0, 0.0]);
        assert_eq!(project_to_probability_simplex(&[2.0, -1.0]), vec![1.0, 0.0]);
        assert!((simplex_distance(&[2.0, -1.0]) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn basis_is_orthonormal() {
        for d in 2..=4 {
            let b = HermitianBasis::new(d).unwrap();
            let n = b.dim();
            let mats: Vec<Vec<Complex64>> = (0..n)
                .map(|a| {
                    let mut x = vec![0.0; n];
                    x[a] = 1.0;
                    let mut m = b.matrix(&x);
                    for k in 0..d {
                        m[k * d + k].re -= 1.0 / d as f64;
                    }
                    m
                })
                .collect();
            for p in 0..n {
                for q in 0..n {
                    // tr(B_p B_q)
                    let mut t = Complex64::new(0.0, 0.0);
                    for i in 0..d {
                        for j in 0..d {
                            t += mats[p][i * d + j] * mats[q][j * d + i];
                        }
                    }
                    let want = if p == q { 1.0 } else { 0.0 };
                    assert!((t.re - want).abs() < 1e-14 && t.im.abs() < 1e-14);
                }
            }
            let x: Vec<f64> = (0..n).map(|i| 0.1 * i as f64 - 0.2).collect();
            let back = b.coordinates(&b.matrix(&x));
            assert!(x.iter().zip(&back).all(|(a, c)| (a - c).abs() < 1e-14));
        }
    }

    #[test]
    fn statespace_distances() {
        let b = HermitianBasis::new(3).unwrap();
        assert!(distance_to_statespace(&b, &[0.0; 8]).unwrap() < 1e-15);
        let z = Complex64::new(0.0, 0.0);
        let a = [Complex64::new(2.0, 0.0), z, z, Complex64::new(-1.0, 0.0)];
        assert!((distance_to_statespace_matrix(&a, 2).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        // Pure state and the outward normal (P - I/d)/|P - I/d| at it.
        for d in 2..=4 {
            let b = HermitianBasis::new(d).unwrap();
            let mut p = vec![Complex64::new(0.0, 0.0); d * d];
            // |ψ⟩ = (1, i, 1, …)/√d
            for j in 0..d {
                for k in 0..d {
                    let pj = if j == 1 { Complex64::new(0.0, 1.0) } else { Complex64::new(1.0, 0.0) };
                    let pk = if k == 1 { Complex64::new(0.0, 1.0) } else { Complex64::new(1.0, 0.0) };
                    p[j * d + k] = pj * pk.conj() / d as f64;
                }
            }
            let x = b.coordinates(&p);
            assert!(distance_to_statespace(&b, &x).unwrap() < 1e-12);
            let n = norm(&x);
            for t in [1e-3, 0.1, 0.7] {
                let y: Vec<f64> = x.iter().map(|v| v * (1.0 + t / n)).collect();
                let dist = distance_to_statespace(&b, &y).unwrap();
                assert!((dist - t).abs() < 1e-12, "d={d} t={t}: {dist}");
            }
        }
    }

    #[test]
    fn polytope_distances() {
        for d in 2..=3 {
            let m = PolytopeModel::new(d).unwrap();
            assert!(distance_to_cpolytope(&m, &vec![0.0; m.big_d]).unwrap() < 1e-12);
            let x: Vec<f64> = m.vertices[0].iter().map(|v| 2.0 * v).collect();
            let dist = distance_to_cpolytope(&m, &x).unwrap();
            assert!((dist - m.frame.big_r_d).abs() < 1e-9);
        }
        // Beyond an octahedron facet along its normal.
        let m = PolytopeModel::new(2).unwrap();
        let facet = crate::cpolytope::FaceKind::Facet.representative(2).unwrap();
        let w = m.facet_normal(&facet).unwrap();
        let h = crate::cpolytope::face_origin_distance(crate::cpolytope::FaceKind::Facet, 2).unwrap();
        for t in [0.01, 0.3] {
            let x: Vec<f64> = w.iter().map(|v| v * (h + t)).collect();
            assert!((distance_to_cpolytope(&m, &x).unwrap() - t).abs() < 1e-9);
        }
    }

    #[test]
    fn cone_and_ball() {
        let r = 0.5;
        assert_eq!(distance_to_spherical_cone(&[0.1, 0.2], r), 0.0);
        assert!((distance_to_spherical_cone(&[-1.0, 0.0], r) - 1.0).abs() < 1e-15);
        assert!((distance_to_spherical_cone(&[1.0, 0.0], r) - 0.5).abs() < 1e-15);
        assert!((distance_to_spherical_cone(&[1.0, -1.0], r) - (0.25f64 + 1.0).sqrt()).abs() < 1e-15);
        let o = ProjectionOracle::new(OracleBody::Ball { dim: 3, radius: r }).unwrap();
        assert!((o.distance(&[0.0, 0.0, 2.0]).unwrap() - 1.5).abs() < 1e-15);
    }
}
