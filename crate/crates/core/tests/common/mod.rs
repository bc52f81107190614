//! Plain three-dimensional geometry of a convex polytope given by its
//! vertices, written without any of the library's polytope machinery.

#![allow(dead_code)]

use std::f64::consts::PI;

pub type V3 = [f64; 3];

pub fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}

pub fn unit(a: V3) -> V3 {
    let n = norm(a);
    [a[0] / n, a[1] / n, a[2] / n]
}

pub struct Facet {
    pub verts: Vec<usize>,
    pub normal: V3,
    pub offset: f64,
}

/// Triangulated-free description of a 3-polytope whose facets are
/// triangles.
pub struct Solid {
    pub verts: Vec<V3>,
    pub facets: Vec<Facet>,
}

impl Solid {
    pub fn from_vertices(verts: Vec<V3>) -> Solid {
        let n = verts.len();
        let mut facets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let c = cross(sub(verts[j], verts[i]), sub(verts[k], verts[i]));
                    if norm(c) < 1e-12 {
                        continue;
                    }
                    let mut nrm = unit(c);
                    let mut off = dot(nrm, verts[i]);
                    if off < 0.0 {
                        nrm = [-nrm[0], -nrm[1], -nrm[2]];
                        off = -off;
                    }
                    if verts.iter().all(|v| dot(nrm, *v) <= off + 1e-12) {
                        facets.push(Facet {
                            verts: vec![i, j, k],
                            normal: nrm,
                            offset: off,
                        });
                    }
                }
            }
        }
        Solid { verts, facets }
    }

    fn area(&self, f: &Facet) -> f64 {
        let [a, b, c] = [f.verts[0], f.verts[1], f.verts[2]].map(|i| self.verts[i]);
        0.5 * norm(cross(sub(b, a), sub(c, a)))
    }

    pub fn volume(&self) -> f64 {
        self.facets.iter().map(|f| self.area(f) * f.offset / 3.0).sum()
    }

    pub fn surface(&self) -> f64 {
        self.facets.iter().map(|f| self.area(f)).sum()
    }

    /// `(length, dihedral angle)` of every edge.
    pub fn edges(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for a in 0..self.facets.len() {
            for b in a + 1..self.facets.len() {
                let shared: Vec<usize> = self.facets[a]
                    .verts
                    .iter()
                    .copied()
                    .filter(|v| self.facets[b].verts.contains(v))
                    .collect();
                if shared.len() == 2 {
                    let len = norm(sub(self.verts[shared[0]], self.verts[shared[1]]));
                    let c = dot(self.facets[a].normal, self.facets[b].normal);
                    out.push((len, PI - c.clamp(-1.0, 1.0).acos()));
                }
            }
        }
        out
    }

    /// Solid angle of the normal cone at every vertex, by ordering the
    /// incident facet normals around the vertex and fanning triangles.
    pub fn vertex_normal_cone_angles(&self) -> Vec<f64> {
        (0..self.verts.len())
            .map(|v| {
                let axis = unit(self.verts[v]);
                let mut ns: Vec<V3> = self
                    .facets
                    .iter()
                    .filter(|f| f.verts.contains(&v))
                    .map(|f| f.normal)
                    .collect();
                let e1 = unit(sub(ns[0], {
                    let k = dot(ns[0], axis);
                    [k * axis[0], k * axis[1], k * axis[2]]
                }));
                let e2 = cross(axis, e1);
                ns.sort_by(|a, b| {
                    let ta = dot(*a, e2).atan2(dot(*a, e1));
                    let tb = dot(*b, e2).atan2(dot(*b, e1));
                    ta.total_cmp(&tb)
                });
                (1..ns.len() - 1)
                    .map(|i| triangle_solid_angle(ns[0], ns[i], ns[i + 1]))
                    .sum()
            })
            .collect()
    }

    /// `a_0 … a_3` of `vol(K_ε)`: volume, surface, half the sum of edge
    /// length times exterior angle, a third of the total vertex angle.
    pub fn steiner(&self) -> [f64; 4] {
        let a2 = self.edges().iter().map(|(l, th)| l * (PI - th) / 2.0).sum();
        let a3 = self.vertex_normal_cone_angles().iter().sum::<f64>() / 3.0;
        [self.volume(), self.surface(), a2, a3]
    }
}

/// Solid angle of the spherical triangle with unit vertices `a, b, c`.
pub fn triangle_solid_angle(a: V3, b: V3, c: V3) -> f64 {
    let num = dot(a, cross(b, c)).abs();
    let den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    2.0 * num.atan2(den)
}

/// The regular octahedron with vertices `±e_k/√2` (unit edges).
pub fn octahedron() -> Solid {
    let r = 0.5f64.sqrt();
    let mut v = Vec::new();
    for k in 0..3 {
        for s in [1.0, -1.0] {
            let mut p = [0.0; 3];
            p[k] = s * r;
            v.push(p);
        }
    }
    Solid::from_vertices(v)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
