//! Face lattice and Steiner coefficients of a simplicial polytope computed
//! directly from vertex coordinates, by brute force. Used as an independent
//! check of the symbolic face machinery for small `d`.

use std::collections::{BTreeMap, BTreeSet};

use super::minnorm::min_norm_point;
use super::normal_cone_measure_from_normals;
use crate::error::{Error, Result};
use crate::linalg::{dot, gram_volume, solve_in_place};
use crate::mathkernel::ln_factorial;

const PLANE_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct ExplicitFacet {
    pub vertices: Vec<usize>,
    pub normal: Vec<f64>,
    pub distance: f64,
}

#[derive(Clone, Debug)]
pub struct ExplicitFace {
    pub vertices: Vec<usize>,
    pub codim: usize,
    /// Indices into [`ExplicitPolytope::facets`].
    pub facets: Vec<usize>,
    pub volume: f64,
    pub origin_distance: f64,
    pub normal_cone_measure: f64,
}

/// A full-dimensional simplicial polytope containing the origin in its
/// interior.
#[derive(Clone, Debug)]
pub struct ExplicitPolytope {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    pub facets: Vec<ExplicitFacet>,
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl ExplicitPolytope {
    /// Finds the facets by testing every `dim`-subset of vertices for a
    /// supporting hyperplane `⟨a, x⟩ = 1`.
    pub fn from_vertices(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let dim = vertices.first().map_or(0, Vec::len);
        if dim == 0 || vertices.len() <= dim {
            return Err(Error::Input("need more than dim vertices".into()));
        }
        let n = vertices.len();
        let mut facets = Vec::new();
        let mut err = None;
        combinations(n, dim, |subset| {
            if err.is_some() {
                return;
            }
            let mut a = Vec::with_capacity(dim * dim);
            for &i in subset {
                a.extend_from_slice(&vertices[i]);
            }
            let mut normal = vec![1.0; dim];
            if !solve_in_place(&mut a, &mut normal, dim) {
                return;
            }
            let mut on_plane = 0;
            for v in &vertices {
                let h = dot(v, &normal);
                if h > 1.0 + PLANE_TOL {
                    return;
                }
                if h > 1.0 - PLANE_TOL {
                    on_plane += 1;
                }
            }
            if on_plane != dim {
                err = Some(Error::Input("polytope is not simplicial".into()));
                return;
            }
            let len = dot(&normal, &normal).sqrt();
            facets.push(ExplicitFacet {
                vertices: subset.to_vec(),
                normal: normal.iter().map(|x| x / len).collect(),
                distance: 1.0 / len,
            });
        });
        if let Some(e) = err {
            return Err(e);
        }
        Ok(ExplicitPolytope {
            dim,
            vertices,
            facets,
        })
    }

    fn simplex_volume(&self, idx: &[usize]) -> f64 {
        let base = &self.vertices[idx[0]];
        let edges: Vec<Vec<f64>> = idx[1..]
            .iter()
            .map(|&i| self.vertices[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        gram_volume(&edges) / ln_factorial(edges.len() as u64).exp()
    }

    /// All faces of codimension `codim` (`1 <= codim <= 3`). Each face of a
    /// simplicial polytope is a subset of some facet's vertex set.
    pub fn faces(&self, codim: usize) -> Result<Vec<ExplicitFace>> {
        if codim == 0 || codim > 3 || codim > self.dim {
            return Err(Error::Domain(format!("unsupported codimension {codim}")));
        }
        let size = self.dim - codim + 1;
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in &self.facets {
            combinations(f.vertices.len(), size, |sub| {
                found.insert(sub.iter().map(|&i| f.vertices[i]).collect());
            });
        }
        let mut out = Vec::with_capacity(found.len());
        for verts in found {
            let incident: Vec<usize> = self
                .facets
                .iter()
                .enumerate()
                .filter(|(_, f)| verts.iter().all(|v| f.vertices.contains(v)))
                .map(|(i, _)| i)
                .collect();
            let normals: Vec<Vec<f64>> =
                incident.iter().map(|&i| self.facets[i].normal.clone()).collect();
            let pts: Vec<Vec<f64>> = verts.iter().map(|&i| self.vertices[i].clone()).collect();
            let origin_distance = min_norm_point(&pts, super::MIN_NORM_TOL, super::MIN_NORM_MAX_ITER)?.distance();
            out.push(ExplicitFace {
                volume: self.simplex_volume(&verts),
                normal_cone_measure: normal_cone_measure_from_normals(codim, &normals)?,
                vertices: verts,
                codim,
                facets: incident,
                origin_distance,
            });
        }
        Ok(out)
    }

    /// `vol(K)` as the sum of the pyramids over the facets.
    pub fn volume(&self) -> f64 {
        self.facets
            .iter()
            .map(|f| f.distance * self.simplex_volume(&f.vertices) / self.dim as f64)
            .sum()
    }

    /// Steiner coefficients `a_0 … a_3` of `vol(K_ε) = Σ a_k ε^k`.
    pub fn steiner_coefficients(&self) -> Result<[f64; 4]> {
        let mut a = [self.volume(), 0.0, 0.0, 0.0];
        for (k, slot) in a.iter_mut().enumerate().skip(1).take(self.dim.min(3)) {
            *slot = self
                .faces(k)?
                .iter()
                .map(|f| f.volume * f.normal_cone_measure)
                .sum();
        }
        Ok(a)
    }

    /// Number of faces of the given codimension grouped by the number of
    /// incident facets.
    pub fn face_census(&self, codim: usize) -> Result<BTreeMap<usize, usize>> {
        let mut m = BTreeMap::new();
        for f in self.faces(codim)? {
            *m.entry(f.facets.len()).or_insert(0) += 1;
        }
        Ok(m)
    }
}
