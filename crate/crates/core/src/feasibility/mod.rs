//! Necessary conditions on prescribed overlap matrices, the standard SIC
//! and MUB prescriptions, and the intrinsic-volume comparisons between
//! `P_d`, the spherical cones `C_{d,D-k}` and `S_d`.
//!
//! If unit vectors `ψ_1, …, ψ_n ∈ C^d` realize `M_jk = |⟨ψ_j, ψ_k⟩|²`, the
//! projectors `ψ_j ψ_j* - I/d` are traceless Hermitian with Gram matrix
//! `G = M - J/d`, so `M` has unit diagonal, nonnegative entries, `G` is
//! positive semidefinite of rank at most `d² - 1`, and
//! `Σ_jk M_jk >= n²/d`.

pub mod io;

use serde::Serialize;

use crate::cpolytope;
use crate::error::{require_dim, Error, Result};
use crate::linalg::symmetric_eigen;
use crate::mathkernel::{ball_volume, LogReal};
use crate::statespace;

/// Symmetric `n × n` matrix of prescribed squared overlaps, row-major.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrescriptionMatrix {
    pub n: usize,
    pub d: usize,
    pub m: Vec<f64>,
}

impl PrescriptionMatrix {
    pub fn new(d: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        require_dim(d, 2)?;
        let n = rows.len();
        if n == 0 {
            return Err(Error::Input("empty prescription matrix".into()));
        }
        let mut m = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Input(format!(
                    "row {i} has {} entries, expected {n}",
                    r.len()
                )));
            }
            m.extend_from_slice(r);
        }
        if let Some(x) = m.iter().find(|x| !x.is_finite()) {
            return Err(Error::Input(format!("non-finite entry {x}")));
        }
        let scale = m.iter().fold(1.0f64, |a, x| a.max(x.abs()));
        for i in 0..n {
            for j in 0..i {
                if (m[i * n + j] - m[j * n + i]).abs() > 1e-12 * scale {
                    return Err(Error::Input(format!("matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(PrescriptionMatrix { n, d, m })
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.m[j * self.n + k]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.m.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    /// `G = M - J/d`.
    pub fn centered_gram(&self) -> Vec<f64> {
        let inv = 1.0 / self.d as f64;
        self.m.iter().map(|x| x - inv).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// PSD test: `λ_min >= -tol_psd · n · max|G|`.
    pub tol_psd: f64,
    /// Rank: eigenvalues above `tol_rank · λ_max` count.
    pub tol_rank: f64,
    /// Absolute slack on the entry and sum tests.
    pub tol_entry: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_psd: 1e-9,
            tol_rank: 1e-8,
            tol_entry: 1e-12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SumBound {
    pub sum: f64,
    pub bound: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub n: usize,
    pub d: usize,
    pub diag_ok: bool,
    pub nonneg_ok: bool,
    pub psd_ok: bool,
    pub min_eigenvalue: f64,
    pub psd_threshold: f64,
    pub eigenvalues: Vec<f64>,
    pub rank: usize,
    pub rank_threshold: f64,
    pub rank_bound: usize,
    pub rank_ok: bool,
    pub sum_bound: SumBound,
    /// Rows `x_j` with `⟨x_j, x_k⟩ = G_jk`, present when `G` is PSD.
    pub gram_vectors: Option<Vec<Vec<f64>>>,
    pub tolerances: Tolerances,
}

impl GramReport {
    pub fn all_ok(&self) -> bool {
        self.diag_ok && self.nonneg_ok && self.psd_ok && self.rank_ok && self.sum_bound.ok
    }

    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut f = Vec::new();
        if !self.diag_ok {
            f.push("diagonal");
        }
        if !self.nonneg_ok {
            f.push("nonnegativity");
        }
        if !self.psd_ok {
            f.push("psd");
        }
        if !self.rank_ok {
            f.push("rank");
        }
        if !self.sum_bound.ok {
            f.push("sum_bound");
        }
        f
    }
}

/// `(Σ_jk M_jk, n²/d, Σ M >= n²/d - tol)`.
pub fn sum_bound(p: &PrescriptionMatrix) -> SumBound {
    sum_bound_with(p, Tolerances::default().tol_entry)
}

fn sum_bound_with(p: &PrescriptionMatrix, tol: f64) -> SumBound {
    let sum: f64 = p.m.iter().sum();
    let bound = (p.n * p.n) as f64 / p.d as f64;
    SumBound {
        sum,
        bound,
        ok: sum >= bound - tol * bound.max(1.0),
    }
}

pub fn check_trivial_requirements(p: &PrescriptionMatrix, tol: &Tolerances) -> Result<GramReport> {
    let n = p.n;
    let diag_ok = (0..n).all(|k| (p.get(k, k) - 1.0).abs() <= tol.tol_entry);
    let nonneg_ok = p.m.iter().all(|&x| x >= -tol.tol_entry);
    let g = p.centered_gram();
    let gmax = g.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let eig = symmetric_eigen(&g, n, 1e-15)?;
    let min_eigenvalue = eig.values[0];
    let lmax = eig.values[n - 1];
    let psd_threshold = -tol.tol_psd * n as f64 * gmax;
    let psd_ok = min_eigenvalue >= psd_threshold;
    let rank_threshold = tol.tol_rank * lmax.max(0.0);
    let rank = eig.values.iter().filter(|&&l| l > rank_threshold).count();
    let rank_bound = p.d * p.d - 1;
    let gram_vectors = psd_ok.then(|| {
        let keep: Vec<usize> = (0..n).filter(|&k| eig.values[k] > rank_threshold).collect();
        (0..n)
            .map(|j| {
                keep.iter()
                    .map(|&k| eig.values[k].sqrt() * eig.vectors[j * n + k])
                    .collect()
            })
            .collect()
    });
    Ok(GramReport {
        n,
        d: p.d,
        diag_ok,
        nonneg_ok,
        psd_ok,
        min_eigenvalue,
        psd_threshold,
        eigenvalues: eig.values,
        rank,
        rank_threshold,
        rank_bound,
        rank_ok: rank <= rank_bound,
        sum_bound: sum_bound_with(p, tol.tol_entry),
        gram_vectors,
        tolerances: *tol,
    })
}

/// Spectrum of `aI + bJ` (`n × n`): `a` with multiplicity `n - 1` and
/// `a + n b` once, returned ascending with multiplicities.
pub fn ai_bj_spectrum(a: f64, b: f64, n: usize) -> Vec<(f64, usize)> {
    let mut s = vec![(a, n - 1), (a + n as f64 * b, 1)];
    if n == 1 {
        s.remove(0);
    }
    s.sort_by(|x, y| x.0.total_cmp(&y.0));
    s
}

/// `(a, b)` when the matrix has the form `aI + bJ` exactly.
pub fn as_ai_bj(m: &[f64], n: usize) -> Option<(f64, f64)> {
    let b = if n > 1 { m[1] } else { 0.0 };
    let a = m[0] - b;
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { a + b } else { b };
            if m[i * n + j] != want {
                return None;
            }
        }
    }
    Some((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrescriptionKind {
    /// `d²` vectors with `|⟨ψ_j, ψ_k⟩|² = 1/(d+1)`.
    Sic { d: usize },
    /// `d + 1` orthonormal bases: `0` within a basis, `1/d` across.
    Mub { d: usize },
    /// `n` pairwise orthogonal unit vectors.
    OrthoSet { d: usize, n: usize },
}

pub fn generate_prescription(kind: PrescriptionKind) -> Result<PrescriptionMatrix> {
    let (d, n, entry): (usize, usize, Box<dyn Fn(usize, usize) -> f64>) = match kind {
        PrescriptionKind::Sic { d } => {
            let off = 1.0 / (d + 1) as f64;
            (d, d * d, Box::new(move |i, j| if i == j { 1.0 } else { off }))
        }
        PrescriptionKind::Mub { d } => {
            let off = 1.0 / d as f64;
            (
                d,
                d * (d + 1),
                Box::new(move |i, j| {
                    if i == j {
                        1.0
                    } else if i / d == j / d {
                        0.0
                    } else {
                        off
                    }
                }),
            )
        }
        PrescriptionKind::OrthoSet { d, n } => {
            if n == 0 {
                return Err(Error::Input("orthogonal set needs n >= 1".into()));
            }
            (d, n, Box::new(|i, j| if i == j { 1.0 } else { 0.0 }))
        }
    };
    require_dim(d, 2)?;
    let rows = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    PrescriptionMatrix::new(d, rows)
}

/// The spherical cone `C_{d,D-k}`: the positive orthant of `R^{D-k}`
/// intersected with the ball of radius `R_d = √((d-1)/d)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConeFamily {
    pub d: usize,
    pub k: usize,
    pub dim: usize,
    pub circumradius: f64,
}

impl ConeFamily {
    pub fn new(d: usize, k: usize) -> Result<Self> {
        require_dim(d, 2)?;
        if k > 3 {
            return Err(Error::Domain(format!("k = {k} must be in 0..=3")));
        }
        let big_d = d * d - 1;
        if k >= big_d {
            return Err(Error::Domain(format!("C_(d,D-k) needs D - k >= 1 (d = {d}, k = {k})")));
        }
        Ok(ConeFamily {
            d,
            k,
            dim: big_d - k,
            circumradius: ((d - 1) as f64 / d as f64).sqrt(),
        })
    }
}

/// `V_{D-k}(C_{d,D-k}) = χ_{D-k} R_d^{D-k} / 2^{D-k}`, the volume of the
/// cone in its own dimension.
pub fn cone_intrinsic_volume(f: &ConeFamily) -> LogReal {
    let n = f.dim as f64;
    ball_volume(f.dim) * LogReal::from_ln(n * (f.circumradius.ln() - 2f64.ln()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ExclusionRow {
    pub k: usize,
    pub dim: usize,
    pub cone: LogReal,
    pub statespace: LogReal,
    /// `V(C) / V(S_d)`.
    pub ratio: LogReal,
    pub excluded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExclusionReport {
    pub d: usize,
    pub rows: Vec<ExclusionRow>,
}

impl ExclusionReport {
    pub fn row(&self, k: usize) -> Option<&ExclusionRow> {
        self.rows.iter().find(|r| r.k == k)
    }
}

/// Compares `V_{D-k}(C_{d,D-k})` with `V_{D-k}(S_d)` for `k = 0..=3`
/// (rows with `D - k < 1` are omitted). Since intrinsic volumes are
/// monotone, a cone value strictly above the state-space value rules out
/// inscribing the cone.
pub fn exclusion_report(d: usize) -> Result<ExclusionReport> {
    let table = statespace::intrinsic_table(d)?;
    let mut rows = Vec::new();
    for k in 0..=3 {
        let Ok(f) = ConeFamily::new(d, k) else { continue };
        let cone = cone_intrinsic_volume(&f);
        let s = table
            .v(f.dim)
            .ok_or_else(|| Error::Domain(format!("no V_{} in table", f.dim)))?;
        rows.push(ExclusionRow {
            k,
            dim: f.dim,
            cone,
            statespace: s,
            ratio: cone / s,
            excluded: cone > s,
        });
    }
    Ok(ExclusionReport { d, rows })
}

/// Relative slack allowed before `V_N(P_d) > V_N(S_d)` is flagged; at
/// `d = 2` both `V_0` equal 1.
pub const COMPARE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub polytope: LogReal,
    pub statespace: LogReal,
    pub ratio: LogReal,
    pub flagged: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub d: usize,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    pub fn any_flagged(&self) -> bool {
        self.rows.iter().any(|r| r.flagged)
    }
}

/// `V_N(P_d)` against `V_N(S_d)` for `N = D, …, D-3`.
pub fn compare_polytope_statespace(d: usize) -> Result<ComparisonReport> {
    let p = cpolytope::intrinsic_table(d)?;
    let s = statespace::intrinsic_table(d)?;
    let rows = p
        .entries
        .iter()
        .rev()
        .map(|(&n, e)| {
            let sv = s.v(n).expect("same index set");
            ComparisonRow {
                n,
                polytope: e.v,
                statespace: sv,
                ratio: e.v / sv,
                flagged: e.v > sv * (1.0 + COMPARE_TOL),
            }
        })
        .collect();
    Ok(ComparisonReport { d, rows })
}
