//! Symbolic faces `F(S_1, …, S_{d+1})` of the complementarity polytope.
//!
//! `S_i ⊆ {0, …, d-1}` lists the vertices omitted from block `i`; every
//! `S_i` is nonempty, and `S_i` equal to the whole block drops that block.
//! The face is the simplex on the remaining vertices, so it has
//! `n_v = Σ (d - |S_i|)` vertices and dimension `n_v - 1 = D + d - Σ|S_i|`.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceKind {
    Facet,
    CodimTwo,
    CodimThreeType1,
    CodimThreeType2,
}

impl FaceKind {
    pub const ALL: [FaceKind; 4] = [
        FaceKind::Facet,
        FaceKind::CodimTwo,
        FaceKind::CodimThreeType1,
        FaceKind::CodimThreeType2,
    ];

    pub fn codim(self) -> usize {
        match self {
            FaceKind::Facet => 1,
            FaceKind::CodimTwo => 2,
            FaceKind::CodimThreeType1 | FaceKind::CodimThreeType2 => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FaceKind::Facet => "facet",
            FaceKind::CodimTwo => "codim-2",
            FaceKind::CodimThreeType1 => "codim-3 type 1",
            FaceKind::CodimThreeType2 => "codim-3 type 2",
        }
    }

    /// Sizes `|S_i|` of a representative face of this kind.
    pub fn omitted_sizes(self, d: usize) -> Result<Vec<usize>> {
        let mut sizes = vec![1; d + 1];
        match self {
            FaceKind::Facet => {}
            FaceKind::CodimTwo => sizes[0] = 2,
            FaceKind::CodimThreeType1 => {
                if d < 3 {
                    return Err(Error::Domain(
                        "codim-3 faces of type 1 need d >= 3".into(),
                    ));
                }
                sizes[0] = 3;
            }
            FaceKind::CodimThreeType2 => {
                sizes[0] = 2;
                sizes[1] = 2;
            }
        }
        Ok(sizes)
    }

    pub fn representative(self, d: usize) -> Result<FaceDescriptor> {
        let sizes = self.omitted_sizes(d)?;
        FaceDescriptor::new(d, sizes.iter().map(|&s| (0..s).collect()).collect())
    }
}

/// Omitted-vertex sets `(S_1, …, S_{d+1})`, each sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FaceDescriptor {
    pub d: usize,
    pub omitted: Vec<Vec<usize>>,
}

impl FaceDescriptor {
    pub fn new(d: usize, mut omitted: Vec<Vec<usize>>) -> Result<Self> {
        if omitted.len() != d + 1 {
            return Err(Error::Input(format!(
                "need {} omitted sets, got {}",
                d + 1,
                omitted.len()
            )));
        }
        for s in omitted.iter_mut() {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() || s.iter().any(|&j| j >= d) {
                return Err(Error::Input(format!("invalid omitted set {s:?}")));
            }
        }
        let f = FaceDescriptor { d, omitted };
        if f.vertex_count() == 0 {
            return Err(Error::Input("descriptor omits every vertex".into()));
        }
        Ok(f)
    }

    pub fn vertex_count(&self) -> usize {
        self.omitted.iter().map(|s| self.d - s.len()).sum()
    }

    pub fn dim(&self) -> usize {
        self.vertex_count() - 1
    }

    pub fn codim(&self) -> usize {
        self.d * self.d - 1 - self.dim()
    }

    /// Kept vertices as `(block, index)` pairs.
    pub fn kept(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.vertex_count());
        for (i, s) in self.omitted.iter().enumerate() {
            for j in 0..self.d {
                if s.binary_search(&j).is_err() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn kind(&self) -> Option<FaceKind> {
        let mut excess: Vec<usize> = self
            .omitted
            .iter()
            .map(|s| s.len() - 1)
            .filter(|&e| e > 0)
            .collect();
        excess.sort_unstable();
        match excess.as_slice() {
            [] => Some(FaceKind::Facet),
            [1] => Some(FaceKind::CodimTwo),
            [2] => Some(FaceKind::CodimThreeType1),
            [1, 1] => Some(FaceKind::CodimThreeType2),
            _ => None,
        }
    }

    /// Facets containing this face: one omitted vertex chosen from each
    /// `S_i`.
    pub fn incident_facets(&self) -> Vec<FaceDescriptor> {
        let mut out = vec![Vec::with_capacity(self.d + 1)];
        for s in &self.omitted {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<usize>| {
                    s.iter().map(move |&j| {
                        let mut p = prefix.clone();
                        p.push(j);
                        p
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|choice| FaceDescriptor {
                d: self.d,
                omitted: choice.into_iter().map(|j| vec![j]).collect(),
            })
            .collect()
    }
}

/// `f_{D-1}`, `f_{D-2}` and the two kinds of `(D-3)`-faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCounts {
    pub facets: u128,
    pub codim_two: u128,
    pub codim_three_type1: u128,
    pub codim_three_type2: u128,
}

impl FaceCounts {
    pub fn get(&self, kind: FaceKind) -> u128 {
        match kind {
            FaceKind::Facet => self.facets,
            FaceKind::CodimTwo => self.codim_two,
            FaceKind::CodimThreeType1 => self.codim_three_type1,
            FaceKind::CodimThreeType2 => self.codim_three_type2,
        }
    }
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn checked(parts: &[u128]) -> Result<u128> {
    parts
        .iter()
        .try_fold(1u128, |acc, &p| acc.checked_mul(p))
        .ok_or_else(|| Error::Domain("face count overflows u128".into()))
}

pub fn face_counts(d: usize) -> Result<FaceCounts> {
    crate::error::require_dim(d, 2)?;
    let n = d as u128;
    let pow = |e: u32| n.checked_pow(e).ok_or_else(|| Error::Domain("face count overflows u128".into()));
    Ok(FaceCounts {
        facets: pow(d as u32 + 1)?,
        codim_two: checked(&[n + 1, binom(n, 2), pow(d as u32)?])?,
        codim_three_type1: checked(&[n + 1, binom(n, 3), pow(d as u32)?])?,
        codim_three_type2: checked(&[binom(n + 1, 2), pow(d as u32 - 1)?, binom(n, 2), binom(n, 2)])?,
    })
}

/// Every face descriptor of codimension at most `max_codim`. Exponential in
/// `d`; meant for `d <= 3`.
pub fn enumerate_faces(d: usize, max_codim: usize) -> Result<Vec<FaceDescriptor>> {
    crate::error::require_dim(d, 2)?;
    if d > 4 {
        return Err(Error::Domain(format!("face enumeration is limited to d <= 4, got {d}")));
    }
    let subsets: Vec<Vec<usize>> = (1u32..(1 << d))
        .map(|mask| (0..d).filter(|&j| mask & (1 << j) != 0).collect())
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; d + 1];
    loop {
        let omitted: Vec<Vec<usize>> = idx.iter().map(|&i| subsets[i].clone()).collect();
        let excess: usize = omitted.iter().map(|s| s.len() - 1).sum();
        if excess < max_codim {
            if let Ok(f) = FaceDescriptor::new(d, omitted) {
                out.push(f);
            }
        }
        let mut a = 0;
        loop {
            if a == d + 1 {
                return Ok(out);
            }
            idx[a] += 1;
            if idx[a] < subsets.len() {
                break;
            }
            idx[a] = 0;
            a += 1;
        }
    }
}
