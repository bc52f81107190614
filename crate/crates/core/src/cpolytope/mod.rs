//! The complementarity polytope `P_d`: the convex hull of `d + 1` mutually
//! orthogonal copies of the regular `(d-1)`-simplex with edge `√2`, centered
//! at the origin of `R^{(d+1)(d-1)}`.
//!
//! Every proper face is a simplex `F(S_1, …, S_{d+1})` (see [`faces`]), and
//! the Steiner coefficients follow from the face counts, the face volumes
//! and the measures of the normal cones.

pub mod explicit;
pub mod faces;
pub mod minnorm;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{require_dim, Error, Result};
use crate::linalg::dot;
use crate::mathkernel::{
    ln_factorial, normalize_table, spherical_triangle_area, Body, BodyDims, IntrinsicVolumeTable,
    LogReal,
};
pub use faces::{enumerate_faces, face_counts, FaceCounts, FaceDescriptor, FaceKind};

/// Tolerance and iteration cap of the numeric face-distance oracle.
pub const MIN_NORM_TOL: f64 = 1e-11;
pub const MIN_NORM_MAX_ITER: usize = 100_000;

/// Regular simplex `v_1, …, v_d ∈ R^{d-1}` with edge `√2`, centered at 0.
#[derive(Clone, Debug, Serialize)]
pub struct SimplexFrame {
    pub d: usize,
    pub vertices: Vec<Vec<f64>>,
    /// Inradius `r_d = 1/√(d(d-1))`.
    pub r_d: f64,
    /// Circumradius `R_d = √((d-1)/d)`.
    pub big_r_d: f64,
}

fn small_r(j: usize) -> f64 {
    1.0 / ((j * (j - 1)) as f64).sqrt()
}

fn big_r(j: usize) -> f64 {
    ((j - 1) as f64 / j as f64).sqrt()
}

/// Lower-triangular coordinates: `v_1 = (-r_2, …, -r_d)` and, for `j >= 2`,
/// `v_j = (0, …, 0, R_j, -r_{j+1}, …, -r_d)` with `R_j` in slot `j - 1`.
pub fn build_simplex(d: usize) -> Result<SimplexFrame> {
    require_dim(d, 2)?;
    let vertices = (1..=d)
        .map(|j| {
            (2..=d)
                .map(|c| {
                    if c < j {
                        0.0
                    } else if c == j {
                        big_r(j)
                    } else {
                        -small_r(c)
                    }
                })
                .collect()
        })
        .collect();
    Ok(SimplexFrame {
        d,
        vertices,
        r_d: small_r(d),
        big_r_d: big_r(d),
    })
}

/// Explicit coordinates of `P_d`. Vertex `e_i ⊗ v_j` has index `i·d + j`.
#[derive(Clone, Debug, Serialize)]
pub struct PolytopeModel {
    pub d: usize,
    #[serde(rename = "D")]
    pub big_d: usize,
    pub frame: SimplexFrame,
    pub vertices: Vec<Vec<f64>>,
}

impl PolytopeModel {
    pub fn new(d: usize) -> Result<Self> {
        let frame = build_simplex(d)?;
        let big_d = d * d - 1;
        let mut vertices = Vec::with_capacity(d * (d + 1));
        for i in 0..=d {
            for v in &frame.vertices {
                vertices.push(embed(d, i, v));
            }
        }
        Ok(PolytopeModel {
            d,
            big_d,
            frame,
            vertices,
        })
    }

    pub fn vertex(&self, block: usize, j: usize) -> &[f64] {
        &self.vertices[block * self.d + j]
    }

    pub fn face_points(&self, face: &FaceDescriptor) -> Vec<Vec<f64>> {
        face.kept()
            .into_iter()
            .map(|(i, j)| self.vertex(i, j).to_vec())
            .collect()
    }

    /// Outward unit normal of the facet omitting `v_{j_i}` in every block:
    /// `(1/√(d+1)) Σ_i e_i ⊗ (-v_{j_i} / R_d)`.
    pub fn facet_normal(&self, facet: &FaceDescriptor) -> Result<Vec<f64>> {
        if facet.kind() != Some(FaceKind::Facet) {
            return Err(Error::Input("not a facet descriptor".into()));
        }
        let s = -1.0 / (self.frame.big_r_d * ((self.d + 1) as f64).sqrt());
        let mut w = vec![0.0; self.big_d];
        for (i, om) in facet.omitted.iter().enumerate() {
            for (c, x) in self.frame.vertices[om[0]].iter().enumerate() {
                w[i * (self.d - 1) + c] = s * x;
            }
        }
        Ok(w)
    }

    /// Distance from the origin to the face by Wolfe's min-norm-point
    /// iteration over its vertices.
    pub fn face_origin_distance_numeric(&self, face: &FaceDescriptor) -> Result<f64> {
        let pts = self.face_points(face);
        Ok(minnorm::min_norm_point(&pts, MIN_NORM_TOL, MIN_NORM_MAX_ITER)?.distance())
    }
}

fn embed(d: usize, block: usize, v: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; (d + 1) * (d - 1)];
    x[block * (d - 1)..(block + 1) * (d - 1)].copy_from_slice(v);
    x
}

/// `dist(0, F)` for the face of the given kind, from the closed forms
/// `r_d²/(d+1)`, `2/(d(2d²-d-2))`, `1/(d(d²-2d/3-1))`, `1/(d(d²-d-1))` for
/// the squared distance.
pub fn face_origin_distance(kind: FaceKind, d: usize) -> Result<f64> {
    require_dim(d, 2)?;
    kind.omitted_sizes(d)?;
    let x = d as f64;
    let sq = match kind {
        FaceKind::Facet => small_r(d).powi(2) / (x + 1.0),
        FaceKind::CodimTwo => 2.0 / (x * (2.0 * x * x - x - 2.0)),
        FaceKind::CodimThreeType1 => 1.0 / (x * (x * x - 2.0 * x / 3.0 - 1.0)),
        FaceKind::CodimThreeType2 => 1.0 / (x * (x * x - x - 1.0)),
    };
    Ok(sq.sqrt())
}

/// `dist(0, F)` for an arbitrary descriptor: the blocks are orthogonal, so
/// `1/dist² = Σ_i 1/r_i²` with `r_i² = |S_i| / (d (d - |S_i|))` the distance
/// to the kept sub-simplex of block `i` (dropped blocks contribute nothing).
pub fn descriptor_origin_distance(face: &FaceDescriptor) -> f64 {
    let d = face.d as f64;
    let inv: f64 = face
        .omitted
        .iter()
        .map(|s| {
            let k = s.len() as f64;
            d * (d - k) / k
        })
        .sum();
    1.0 / inv.sqrt()
}

/// Volume of `conv({0} ∪ F)`: `(1/n_v!) ∏_i √(|S_i|/d)`, the block Gram
/// determinants of the kept vertices being `|S_i|/d`.
pub fn descriptor_cone_volume(face: &FaceDescriptor) -> LogReal {
    let d = face.d as f64;
    let ln: f64 = face
        .omitted
        .iter()
        .map(|s| 0.5 * (s.len() as f64 / d).ln())
        .sum::<f64>()
        - ln_factorial(face.vertex_count() as u64);
    LogReal::from_ln(ln)
}

/// `vol(F) = n_v · vol(cone) / dist(0, F)`.
pub fn descriptor_face_volume(face: &FaceDescriptor) -> LogReal {
    descriptor_cone_volume(face) * face.vertex_count() as f64 / descriptor_origin_distance(face)
}

pub fn cone_volume_over_face(kind: FaceKind, d: usize) -> Result<LogReal> {
    require_dim(d, 2)?;
    Ok(descriptor_cone_volume(&kind.representative(d)?))
}

pub fn face_volume(kind: FaceKind, d: usize) -> Result<LogReal> {
    require_dim(d, 2)?;
    Ok(descriptor_face_volume(&kind.representative(d)?))
}

/// Exterior angle between facets adjacent across a `(D-2)`-face:
/// `α = arccos(1 - d/(d²-1))`.
pub fn alpha(d: usize) -> f64 {
    let x = d as f64;
    (1.0 - x / (x * x - 1.0)).acos()
}

/// Angle between the two non-adjacent facet normals at a type-2
/// `(D-3)`-face: `β = arccos(1 - 2d/(d²-1))`.
pub fn beta(d: usize) -> f64 {
    let x = d as f64;
    (1.0 - 2.0 * x / (x * x - 1.0)).acos()
}

/// `vol_k(N_P(F) ∩ B^k)` for the codim-2, codim-3 type 1 and codim-3 type 2
/// faces.
pub fn normal_cone_measures(d: usize) -> Result<(f64, f64, f64)> {
    require_dim(d, 2)?;
    let (a, b) = (alpha(d), beta(d));
    let t1 = ((0.75 * a).tan() * (0.25 * a).tan().powi(3)).sqrt().atan();
    let t2 = ((0.5 * a + 0.25 * b).tan() * (0.5 * a - 0.25 * b).tan() * (0.25 * b).tan().powi(2))
        .sqrt()
        .atan();
    Ok((0.5 * a, 4.0 / 3.0 * t1, 8.0 / 3.0 * t2))
}

/// `vol_k(N ∩ B^k)` for a normal cone of dimension `codim` spanned by the
/// given unit normals. Supports `codim <= 3`; in dimension 3 the cone is
/// either a triangle or a quadrilateral on the sphere, the latter split
/// along its longer diagonal.
pub fn normal_cone_measure_from_normals(codim: usize, normals: &[Vec<f64>]) -> Result<f64> {
    let angle = |a: &[f64], b: &[f64]| dot(a, b).clamp(-1.0, 1.0).acos();
    match (codim, normals.len()) {
        (1, 1) => Ok(1.0),
        (2, 2) => Ok(0.5 * angle(&normals[0], &normals[1])),
        (3, 3) => {
            let (a, b, c) = (
                angle(&normals[1], &normals[2]),
                angle(&normals[0], &normals[2]),
                angle(&normals[0], &normals[1]),
            );
            Ok(spherical_triangle_area(a, b, c)? / 3.0)
        }
        (3, 4) => {
            // The diagonal joins the pair at the largest angle.
            let mut best = (0, 1, -1.0);
            for i in 0..4 {
                for j in (i + 1)..4 {
                    let t = angle(&normals[i], &normals[j]);
                    if t > best.2 {
                        best = (i, j, t);
                    }
                }
            }
            let (p, q, diag) = best;
            let mut area = 0.0;
            for r in (0..4).filter(|&r| r != p && r != q) {
                area += spherical_triangle_area(
                    diag,
                    angle(&normals[p], &normals[r]),
                    angle(&normals[q], &normals[r]),
                )?;
            }
            Ok(area / 3.0)
        }
        (c, m) => Err(Error::Domain(format!(
            "normal cone of dimension {c} with {m} generators is not supported"
        ))),
    }
}

/// `vol_D(P_d) = √d^{d+1} / (d²-1)!`
pub fn closed_form_volume(d: usize) -> Result<LogReal> {
    require_dim(d, 2)?;
    let x = d as f64;
    Ok(LogReal::from_ln(0.5 * (x + 1.0) * x.ln() - ln_factorial((d * d - 1) as u64)))
}

/// `vol_{D-1}(∂P_d) = √d^{d+2} √(d²-1) / (d²-2)!`
pub fn closed_form_surface(d: usize) -> Result<LogReal> {
    require_dim(d, 2)?;
    let x = d as f64;
    Ok(LogReal::from_ln(
        0.5 * (x + 2.0) * x.ln() + 0.5 * (x * x - 1.0).ln() - ln_factorial((d * d - 2) as u64),
    ))
}

/// `Ṽ_{D-2}(P_d) = √(2d²-d-2) (d²-1) d^{d/2+1} α / (4 (d²-3)!)`
pub fn vtilde_dm2(d: usize) -> Result<LogReal> {
    require_dim(d, 2)?;
    let x = d as f64;
    let ln = 0.5 * (2.0 * x * x - x - 2.0).ln()
        + (x * x - 1.0).ln()
        + (0.5 * x + 1.0) * x.ln()
        + alpha(d).ln()
        - 4f64.ln()
        - ln_factorial((d * d - 3) as u64);
    Ok(LogReal::from_ln(ln))
}

/// `Ṽ_{D-3}(P_d)`: the type-1 term
/// `2√(3d²-2d-3)(d²-1)(d-2) d^{d/2+1} / (9 (d²-4)!) · atan√(tan(3α/4) tan³(α/4))`
/// plus the type-2 term
/// `2√(d²-d-1)(d²-1)(d-1) d^{d/2+2} / (3 (d²-4)!) · atan√(tan(α/2+β/4) tan(α/2-β/4) tan²(β/4))`.
/// The type-1 term vanishes at `d = 2`.
pub fn vtilde_dm3(d: usize) -> Result<LogReal> {
    require_dim(d, 2)?;
    let x = d as f64;
    let (a, b) = (alpha(d), beta(d));
    let f = ln_factorial((d * d - 4) as u64);
    let t2 = LogReal::from_ln(
        2f64.ln() + 0.5 * (x * x - x - 1.0).ln() + (x * x - 1.0).ln() + (x - 1.0).ln()
            + (0.5 * x + 2.0) * x.ln()
            - 3f64.ln()
            - f,
    ) * ((0.5 * a + 0.25 * b).tan() * (0.5 * a - 0.25 * b).tan() * (0.25 * b).tan().powi(2))
        .sqrt()
        .atan();
    if d == 2 {
        return Ok(t2);
    }
    let t1 = LogReal::from_ln(
        2f64.ln() + 0.5 * (3.0 * x * x - 2.0 * x - 3.0).ln() + (x * x - 1.0).ln() + (x - 2.0).ln()
            + (0.5 * x + 1.0) * x.ln()
            - 9f64.ln()
            - f,
    ) * ((0.75 * a).tan() * (0.25 * a).tan().powi(3)).sqrt().atan();
    Ok(t1 + t2)
}

/// Steiner coefficients `Ṽ_D … Ṽ_{D-3}` from the closed forms.
pub fn steiner_coefficients(d: usize) -> Result<[LogReal; 4]> {
    Ok([
        closed_form_volume(d)?,
        closed_form_surface(d)?,
        vtilde_dm2(d)?,
        vtilde_dm3(d)?,
    ])
}

pub fn intrinsic_table(d: usize) -> Result<IntrinsicVolumeTable> {
    let dims = BodyDims::new(d)?;
    let a = steiner_coefficients(d)?;
    let raw: BTreeMap<usize, LogReal> = (0..4).map(|j| (dims.big_d - j, a[j])).collect();
    normalize_table(Body::ComplementarityPolytope, &raw, dims)
}

/// Per-kind face data of `P_d`.
#[derive(Clone, Debug, Serialize)]
pub struct FaceData {
    pub kind: FaceKind,
    pub count: u128,
    pub face_volume: LogReal,
    pub origin_distance: f64,
    pub normal_cone_measure: f64,
}

/// Face data for every kind present at this `d` (type-1 `(D-3)`-faces need
/// `d >= 3`). The normal-cone measures come from the explicit facet normals
/// of a representative face.
pub fn face_data(d: usize) -> Result<Vec<FaceData>> {
    let model = PolytopeModel::new(d)?;
    let counts = face_counts(d)?;
    let mut out = Vec::new();
    for kind in FaceKind::ALL {
        let count = counts.get(kind);
        if count == 0 {
            continue;
        }
        let rep = kind.representative(d)?;
        let normals = rep
            .incident_facets()
            .iter()
            .map(|f| model.facet_normal(f))
            .collect::<Result<Vec<_>>>()?;
        out.push(FaceData {
            kind,
            count,
            face_volume: descriptor_face_volume(&rep),
            origin_distance: descriptor_origin_distance(&rep),
            normal_cone_measure: normal_cone_measure_from_normals(kind.codim(), &normals)?,
        });
    }
    Ok(out)
}

/// Steiner coefficients assembled face by face:
/// `Ṽ_D = f_{D-1} vol(cone over a facet)` and, for `k = 1, 2, 3`,
/// `Ṽ_{D-k} = Σ_{codim-k kinds} f · vol(F) · vol_k(N(F) ∩ B^k)`.
pub fn assembled_steiner_coefficients(d: usize) -> Result<[LogReal; 4]> {
    let data = face_data(d)?;
    let mut out = [LogReal::ZERO; 4];
    out[0] = cone_volume_over_face(FaceKind::Facet, d)? * face_counts(d)?.facets as f64;
    for fd in &data {
        out[fd.kind.codim()] =
            out[fd.kind.codim()] + fd.face_volume * fd.count as f64 * fd.normal_cone_measure;
    }
    Ok(out)
}
