//! One report per command: tables for the terminal and CSV, a JSON
//! document, and the process exit code.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;
use serde_json::json;

use super::format::{to_json_bytes, Cell, Table};
use super::{BodyArg, Format, RunConfig};
use crate::cpolytope;
use crate::error::{Error, Result};
use crate::feasibility::{self, io::read_prescription, ConeFamily};
use crate::mathkernel::{BodyDims, LogReal};
use crate::montecarlo::{fit_steiner_coefficients, geometric_eps_grid, OracleBody, ProjectionOracle};
use crate::statespace::{self, StateSpaceVolumes};

pub const SCHEMA: &str = "qgeom/1";

pub struct Report {
    pub preamble: Vec<String>,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
    /// Table written for `--format csv`.
    pub csv_table: usize,
    pub json: Vec<u8>,
    pub exit_code: i32,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        Ok(match format {
            Format::Json => self.json.clone(),
            Format::Csv => self.tables[self.csv_table].render_csv()?,
            Format::Table => {
                let mut s = String::new();
                for l in &self.preamble {
                    s.push_str(l);
                    s.push('\n');
                }
                for t in &self.tables {
                    s.push('\n');
                    t.render_text(&mut s);
                }
                if !self.notes.is_empty() {
                    s.push('\n');
                }
                for l in &self.notes {
                    s.push_str(l);
                    s.push('\n');
                }
                s.into_bytes()
            }
        })
    }
}

fn envelope<T: Serialize>(command: &str, body: T) -> Result<Vec<u8>> {
    #[derive(Serialize)]
    struct Envelope<'a, T> {
        schema: &'static str,
        command: &'a str,
        #[serde(flatten)]
        body: T,
    }
    Ok(to_json_bytes(&Envelope {
        schema: SCHEMA,
        command,
        body,
    })?)
}

/// Short symbolic forms, shown next to a value only when they agree with it
/// numerically.
struct Forms(Vec<(String, f64)>);

impl Forms {
    fn new() -> Self {
        Forms(Vec::new())
    }

    fn add(&mut self, name: impl Into<String>, value: f64) {
        self.0.push((name.into(), value));
    }

    fn annotate(&self, v: f64) -> Cell {
        let hit = self
            .0
            .iter()
            .find(|(_, x)| (v - x).abs() <= 1e-12 * x.abs().max(f64::MIN_POSITIVE));
        Cell::text(hit.map_or("", |(s, _)| s.as_str()))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn arccos_form(num: i64, den: i64) -> (String, f64) {
    let g = gcd(num, den);
    let (p, q) = (num / g, den / g);
    (format!("arccos({p}/{q})"), (p as f64 / q as f64).acos())
}

fn statespace_forms(d: usize) -> Forms {
    let mut f = Forms::new();
    let pi3 = PI.powi(3);
    let s3 = 3f64.sqrt();
    match d {
        2 => {
            f.add("π√2/3", PI * SQRT_2 / 3.0);
            f.add("2π", 2.0 * PI);
            f.add("4√2π", 4.0 * SQRT_2 * PI);
            f.add("8π", 8.0 * PI);
            f.add("π", PI);
            f.add("2√2", 2.0 * SQRT_2);
            f.add("4π/3", 4.0 * PI / 3.0);
            f.add("2√2π", 2.0 * SQRT_2 * PI);
            f.add("1", 1.0);
        }
        3 => {
            f.add("√3π³/2520", s3 * pi3 / 2520.0);
            f.add("√2π³/105", SQRT_2 * pi3 / 105.0);
            f.add("2π³/(5√3)", 2.0 * pi3 / (5.0 * s3));
            f.add("π³/(5√3)", pi3 / (5.0 * s3));
            f.add("12√2π³/5", 12.0 * SQRT_2 * pi3 / 5.0);
            f.add("2√2π³/5", 2.0 * SQRT_2 * pi3 / 5.0);
            f.add("(2π)³/2", (2.0 * PI).powi(3) / 2.0);
        }
        _ => {}
    }
    f
}

fn polytope_forms(d: usize) -> Forms {
    let mut f = Forms::new();
    let (dd, big) = (d as i64, (d * d - 1) as i64);
    let (a_name, a_val) = arccos_form(dd * dd - dd - 1, big);
    let (b_name, b_val) = arccos_form(dd * dd - 2 * dd - 1, big);
    if d == 2 {
        f.add("√2/3", SQRT_2 / 3.0);
        f.add("2√3", 2.0 * 3f64.sqrt());
        f.add(format!("6·{a_name}"), 6.0 * a_val);
        f.add(format!("{a_name}/2"), a_val / 2.0);
        f.add("4π/3", 4.0 * PI / 3.0);
        f.add("2π/9", 2.0 * PI / 9.0);
        f.add("√3/4", 3f64.sqrt() / 4.0);
        f.add("1/√2", 1.0 / SQRT_2);
        f.add("1/√6", 1.0 / 6f64.sqrt());
        f.add("1/2", 0.5);
        f.add("1", 1.0);
    }
    f.add(a_name, a_val);
    f.add(b_name, b_val);
    f
}

fn log_cell(l: LogReal) -> Cell {
    Cell::Num(l.ln_abs())
}

fn quantity_row(name: &str, v: LogReal, forms: &Forms) -> Vec<Cell> {
    vec![Cell::text(name), log_cell(v), Cell::Log(v), forms.annotate(v.to_f64())]
}

pub fn statespace_report(cfg: &RunConfig) -> Result<Report> {
    let d = cfg.d;
    let s = StateSpaceVolumes::new(d)?;
    let big_d = s.dims.big_d;
    let forms = statespace_forms(d);
    let mut t = Table::new(None, &["quantity", "ln", "value", "exact"]);
    t.push(quantity_row(&format!("vol_{big_d}(S_{d})"), s.vol_d, &forms));
    t.push(quantity_row(&format!("vol_{}(∂S_{d})", big_d - 1), s.surface, &forms));
    t.push(quantity_row("p''(0)", s.p2_at_0, &forms));
    t.push(quantity_row("p'''(0)", s.p3_at_0, &forms));
    for (&n, e) in s.table.entries.iter().rev() {
        t.push(quantity_row(&format!("V_{n}"), e.v, &forms));
    }
    for (&n, e) in s.table.entries.iter().rev() {
        t.push(quantity_row(&format!("Ṽ_{n}"), e.vtilde, &forms));
    }
    let flag = statespace::flag_manifold_volume(d)?;
    t.push(quantity_row("vol(Fl)", flag, &forms));
    let p2s = statespace::p2_via_selberg(d)?;
    let p3s = statespace::p3_via_selberg(d)?;
    let notes = vec![format!(
        "Selberg assembly: p''(0) rel. diff {:.1e}, p'''(0) rel. diff {:.1e}",
        p2s.rel_diff(s.p2_at_0).abs(),
        p3s.rel_diff(s.p3_at_0).abs()
    )];
    let json = envelope(
        "statespace",
        json!({
            "d": d,
            "D": big_d,
            "volume": s.vol_d,
            "surface": s.surface,
            "p2_at_0": s.p2_at_0,
            "p3_at_0": s.p3_at_0,
            "flag_manifold_volume": flag,
            "intrinsic_volumes": s.table,
            "selberg_p2_at_0": p2s,
            "selberg_p3_at_0": p3s,
        }),
    )?;
    Ok(Report {
        preamble: vec![format!("State space S_{d}: d = {d}, D = {big_d}")],
        tables: vec![t],
        notes,
        csv_table: 0,
        json,
        exit_code: 0,
    })
}

pub fn polytope_report(cfg: &RunConfig) -> Result<Report> {
    let d = cfg.d;
    let dims = BodyDims::new(d)?;
    let forms = polytope_forms(d);
    let table = cpolytope::intrinsic_table(d)?;
    let (a, b) = (cpolytope::alpha(d), cpolytope::beta(d));
    let vol = cpolytope::closed_form_volume(d)?;
    let surf = cpolytope::closed_form_surface(d)?;
    let mut q = Table::new(None, &["quantity", "ln", "value", "exact"]);
    q.push(quantity_row(&format!("vol_{}(P_{d})", dims.big_d), vol, &forms));
    q.push(quantity_row(&format!("vol_{}(∂P_{d})", dims.big_d - 1), surf, &forms));
    for (&n, e) in table.entries.iter().rev() {
        q.push(quantity_row(&format!("V_{n}"), e.v, &forms));
    }
    for (&n, e) in table.entries.iter().rev() {
        q.push(quantity_row(&format!("Ṽ_{n}"), e.vtilde, &forms));
    }
    q.push(vec![Cell::text("α"), Cell::Num(a.ln()), Cell::Num(a), forms.annotate(a)]);
    q.push(vec![Cell::text("β"), Cell::Num(b.ln()), Cell::Num(b), forms.annotate(b)]);

    let faces = cpolytope::face_data(d)?;
    let mut f = Table::new(
        Some("Faces"),
        &["kind", "count", "volume", "origin distance", "normal-cone measure", "exact measure"],
    );
    for fd in &faces {
        f.push(vec![
            Cell::text(fd.kind.label()),
            Cell::Int(fd.count),
            Cell::Log(fd.face_volume),
            Cell::Num(fd.origin_distance),
            Cell::Num(fd.normal_cone_measure),
            forms.annotate(fd.normal_cone_measure),
        ]);
    }
    let counts = cpolytope::face_counts(d)?;
    let assembled = cpolytope::assembled_steiner_coefficients(d)?;
    let closed = cpolytope::steiner_coefficients(d)?;
    let worst = (0..4).map(|k| assembled[k].rel_diff(closed[k])).fold(0.0, f64::max);
    let json = envelope(
        "polytope",
        json!({
            "d": d,
            "D": dims.big_d,
            "volume": vol,
            "surface": surf,
            "vtilde_Dm2": closed[2],
            "vtilde_Dm3": closed[3],
            "alpha": a,
            "beta": b,
            "face_counts": counts,
            "faces": faces,
            "intrinsic_volumes": table,
            "assembly_max_rel_diff": worst,
        }),
    )?;
    Ok(Report {
        preamble: vec![format!(
            "Complementarity polytope P_{d}: d = {d}, D = {}, {} vertices",
            dims.big_d,
            d * (d + 1)
        )],
        tables: vec![q, f],
        notes: vec![format!("Face-by-face assembly of Ṽ_D … Ṽ_(D-3): max rel. diff {worst:.1e}")],
        csv_table: 0,
        json,
        exit_code: 0,
    })
}

pub fn compare_report(cfg: &RunConfig) -> Result<Report> {
    let d = cfg.d;
    let c = feasibility::compare_polytope_statespace(d)?;
    let mut forms = Forms::new();
    if d == 2 {
        forms.add("1/π", 1.0 / PI);
        forms.add("1", 1.0);
    }
    let mut t = Table::new(None, &["N", "V_N(P_d)", "V_N(S_d)", "ratio", "exact ratio", "P > S"]);
    for r in &c.rows {
        t.push(vec![
            Cell::Int(r.n as u128),
            Cell::Log(r.polytope),
            Cell::Log(r.statespace),
            Cell::Log(r.ratio),
            forms.annotate(r.ratio.to_f64()),
            Cell::Bool(r.flagged),
        ]);
    }
    let verdict = if c.any_flagged() {
        format!("some V_N(P_{d}) exceeds V_N(S_{d}): P_{d} cannot be inscribed")
    } else {
        format!("V_N(P_{d}) <= V_N(S_{d}) for all four N: no obstruction to inscription")
    };
    let json = envelope(
        "compare",
        json!({ "d": d, "rows": c.rows, "any_flagged": c.any_flagged() }),
    )?;
    Ok(Report {
        preamble: vec![format!("P_{d} against S_{d}")],
        tables: vec![t],
        notes: vec![verdict],
        csv_table: 0,
        json,
        exit_code: if c.any_flagged() { 1 } else { 0 },
    })
}

pub fn exclude_report(cfg: &RunConfig) -> Result<Report> {
    let d = cfg.d;
    let mut r = feasibility::exclusion_report(d)?;
    if let Some(k) = cfg.k {
        ConeFamily::new(d, k)?;
        r.rows.retain(|row| row.k == k);
    }
    let mut t = Table::new(None, &["k", "dim", "V(C_d,dim)", "V(S_d)", "ratio", "excluded"]);
    for row in &r.rows {
        t.push(vec![
            Cell::Int(row.k as u128),
            Cell::Int(row.dim as u128),
            Cell::Log(row.cone),
            Cell::Log(row.statespace),
            Cell::Log(row.ratio),
            Cell::Bool(row.excluded),
        ]);
    }
    let ex: Vec<String> = r.rows.iter().filter(|x| x.excluded).map(|x| x.k.to_string()).collect();
    let open: Vec<String> = r.rows.iter().filter(|x| !x.excluded).map(|x| x.k.to_string()).collect();
    let notes = vec![
        format!("excluded: k = {{{}}}", ex.join(", ")),
        format!("not excluded: k = {{{}}}", open.join(", ")),
    ];
    let json = envelope("exclude", &r)?;
    Ok(Report {
        preamble: vec![format!(
            "Spherical cones C_(d,D-k) against S_{d} (R_d = {})",
            ((d - 1) as f64 / d as f64).sqrt()
        )],
        tables: vec![t],
        notes,
        csv_table: 0,
        json,
        exit_code: 0,
    })
}

pub fn feasible_report(cfg: &RunConfig) -> Result<Report> {
    let path = cfg
        .path
        .as_ref()
        .ok_or_else(|| Error::Input("missing prescription file".into()))?;
    let p = read_prescription(path, cfg.d_override)?;
    let r = feasibility::check_trivial_requirements(&p, &cfg.tolerances)?;
    let mut t = Table::new(None, &["check", "value", "threshold", "pass"]);
    let max_dev = (0..p.n).map(|k| (p.get(k, k) - 1.0).abs()).fold(0.0, f64::max);
    let min_entry = p.m.iter().copied().fold(f64::INFINITY, f64::min);
    t.push(vec![Cell::text("diagonal |M_kk - 1|"), Cell::Num(max_dev), Cell::Num(r.tolerances.tol_entry), Cell::Bool(r.diag_ok)]);
    t.push(vec![Cell::text("min M_jk"), Cell::Num(min_entry), Cell::Num(-r.tolerances.tol_entry), Cell::Bool(r.nonneg_ok)]);
    t.push(vec![Cell::text("λ_min(M - J/d)"), Cell::Num(r.min_eigenvalue), Cell::Num(r.psd_threshold), Cell::Bool(r.psd_ok)]);
    t.push(vec![Cell::text("rank(M - J/d)"), Cell::Int(r.rank as u128), Cell::Int(r.rank_bound as u128), Cell::Bool(r.rank_ok)]);
    t.push(vec![Cell::text("Σ M_jk"), Cell::Num(r.sum_bound.sum), Cell::Num(r.sum_bound.bound), Cell::Bool(r.sum_bound.ok)]);
    let notes = if r.all_ok() {
        vec!["all trivial requirements hold".to_string()]
    } else {
        vec![format!("failed: {}", r.failures().join(", "))]
    };
    let json = envelope("feasible", json!({ "report": r, "all_ok": r.all_ok(), "failures": r.failures() }))?;
    Ok(Report {
        preamble: vec![format!(
            "Prescription {}: n = {}, d = {} (rank threshold {:e})",
            path.display(),
            p.n,
            p.d,
            r.rank_threshold
        )],
        tables: vec![t],
        notes,
        csv_table: 0,
        json,
        exit_code: if r.all_ok() { 0 } else { 1 },
    })
}

/// `|z|` above which a fitted coefficient counts as inconsistent with its
/// closed form.
pub const Z_LIMIT: f64 = 3.0;

pub fn montecarlo_report(cfg: &RunConfig) -> Result<Report> {
    let d = cfg.d;
    let (body, reference): (OracleBody, Vec<Option<f64>>) = match cfg.body {
        BodyArg::Statespace => (
            OracleBody::StateSpace { d },
            statespace::steiner_coefficients(d)?.iter().map(|x| Some(x.to_f64())).collect(),
        ),
        BodyArg::Polytope => (
            OracleBody::ComplementarityPolytope { d },
            cpolytope::steiner_coefficients(d)?.iter().map(|x| Some(x.to_f64())).collect(),
        ),
        BodyArg::Cone => {
            let f = ConeFamily::new(d, cfg.k.unwrap_or(0))?;
            (
                OracleBody::SphericalCone { d, dim: f.dim },
                vec![Some(feasibility::cone_intrinsic_volume(&f).to_f64()), None, None, None],
            )
        }
    };
    let oracle = ProjectionOracle::new(body)?;
    let r = oracle.circumradius;
    let grid = geometric_eps_grid(
        1.0,
        cfg.eps_min.unwrap_or(0.02 * r),
        cfg.eps_max.unwrap_or(0.5 * r),
        cfg.eps_points,
    )?;
    let fit = fit_steiner_coefficients(&oracle, &grid, cfg.samples, cfg.seed, cfg.jobs)?;

    let mut est = Table::new(Some("Estimates"), &["epsilon", "vol(K_eps)", "stderr", "hits", "samples"]);
    for e in &fit.estimates {
        est.push(vec![
            Cell::Num(e.epsilon),
            Cell::Num(e.value),
            Cell::Num(e.stderr),
            Cell::Int(e.hits as u128),
            Cell::Int(e.samples as u128),
        ]);
    }
    let mut coef = Table::new(
        Some(&format!("Steiner fit (degree {})", fit.degree)),
        &["k", "fitted a_k", "stderr", "closed form", "z"],
    );
    let mut zs = Vec::new();
    let mut worst: f64 = 0.0;
    for (k, refv) in reference.iter().enumerate().take(fit.degree.min(3) + 1) {
        let z = refv.map(|x| fit.z_score(k, x));
        if let Some(z) = z {
            worst = worst.max(z.abs());
        }
        zs.push(json!({ "k": k, "fitted": fit.coefficient(k), "stderr": fit.stderr(k), "closed_form": refv, "z": z }));
        coef.push(vec![
            Cell::Int(k as u128),
            Cell::Num(fit.coefficient(k)),
            Cell::Num(fit.stderr(k)),
            refv.map_or(Cell::text("-"), Cell::Num),
            z.map_or(Cell::text("-"), Cell::Num),
        ]);
    }
    let ok = worst <= Z_LIMIT;
    let json = envelope(
        "montecarlo",
        json!({
            "body": body,
            "d": d,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "eps_grid": grid,
            "fit": fit,
            "coefficients": zs,
            "max_abs_z": worst,
            "pass": ok,
        }),
    )?;
    Ok(Report {
        preamble: vec![format!(
            "Monte-Carlo Steiner fit: {:?}, R = {r}, {} samples per epsilon, seed {}",
            body, cfg.samples, cfg.seed
        )],
        tables: vec![est, coef],
        notes: vec![format!(
            "max |z| = {worst:.2} ({})",
            if ok { "all within 3σ" } else { "some coefficient beyond 3σ" }
        )],
        csv_table: 1,
        json,
        exit_code: if ok { 0 } else { 1 },
    })
}
