//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use qgeom::cpolytope;
use qgeom::feasibility::{
    self, check_trivial_requirements, generate_prescription, PrescriptionKind, Tolerances,
};
use qgeom::mathkernel::ball_volume;
use qgeom::montecarlo::{default_eps_grid, fit_steiner_coefficients, ProjectionOracle};
use qgeom::selberg::{quadrature::simplex_selberg_quadrature, simplex_selberg, SelbergParams};
use qgeom::statespace;

struct Outcome {
    pass: bool,
    detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn ac1() -> Outcome {
    let (p3, r2, r3) = (PI.powi(3), 2f64.sqrt(), 3f64.sqrt());
    let want = [
        ("volume", r3 * p3 / 5040.0),
        ("surface", r2 * p3 / 105.0),
        ("a_2", p3 / (5.0 * r3)),
        ("a_3", 2.0 * r2 * p3 / 5.0),
    ];
    let got = statespace::steiner_coefficients(3).unwrap().map(|x| x.to_f64());
    let mut parts = Vec::new();
    let mut pass = true;
    for ((name, w), g) in want.iter().zip(got) {
        let r = rel(g, *w);
        let ok = r <= 1e-12;
        pass &= ok;
        parts.push(format!("{name} {} (rel {r:.1e})", if ok { "ok" } else { "MISMATCH" }));
    }
    Outcome {
        pass,
        detail: format!("{}; computed volume {:.16e}", parts.join(", "), got[0]),
    }
}

fn ac2() -> Outcome {
    let r = 0.5f64.sqrt();
    let table = statespace::intrinsic_table(2).unwrap();
    let mut worst: f64 = 0.0;
    for j in 0..=3u32 {
        let binom = [1.0, 3.0, 3.0, 1.0][j as usize];
        let ball = binom * ball_volume(3).to_f64() / ball_volume(3 - j as usize).to_f64() * r.powi(j as i32);
        worst = worst.max(rel(table.v(j as usize).unwrap().to_f64(), ball));
    }
    Outcome {
        pass: worst <= 1e-12,
        detail: format!("V_0..V_3 of S_2 against the ball of radius 1/√2, max rel {worst:.1e}"),
    }
}

fn ac3() -> Outcome {
    let o = common::octahedron();
    let geo = o.steiner();
    let closed = cpolytope::steiner_coefficients(2).unwrap().map(|x| x.to_f64());
    let symbolic = [
        2f64.sqrt() / 3.0,
        2.0 * 3f64.sqrt(),
        6.0 * (1.0f64 / 3.0).acos(),
        4.0 * PI / 3.0,
    ];
    let mut worst: f64 = 0.0;
    for k in 0..4 {
        worst = worst.max(rel(closed[k], geo[k])).max(rel(symbolic[k], geo[k]));
    }
    Outcome {
        pass: worst <= 1e-10 && o.facets.len() == 8 && o.edges().len() == 12,
        detail: format!(
            "{} facets, {} edges, max rel {worst:.1e}",
            o.facets.len(),
            o.edges().len()
        ),
    }
}

fn ac4() -> Outcome {
    let mut worst: f64 = 0.0;
    for d in 2..=6 {
        let a = cpolytope::assembled_steiner_coefficients(d).unwrap();
        let c = cpolytope::steiner_coefficients(d).unwrap();
        for k in 0..4 {
            worst = worst.max(a[k].rel_diff(c[k]).abs());
        }
    }
    Outcome {
        pass: worst <= 1e-10,
        detail: format!("d = 2..6, max rel {worst:.1e}"),
    }
}

fn ac5() -> Outcome {
    let mut q_worst: f64 = 0.0;
    let mut cases = 0;
    for n in 2..=3 {
        for alpha in 1..=3 {
            for gamma in 0..=3 {
                for m in 0..=n {
                    for k in 0..=m {
                        let p = SelbergParams::new(n, alpha as f64, gamma as f64, k, m).unwrap();
                        let closed = simplex_selberg(&p).unwrap().to_f64();
                        let quad = simplex_selberg_quadrature(&p, 24).unwrap();
                        q_worst = q_worst.max(rel(closed, quad));
                        cases += 1;
                    }
                }
            }
        }
    }
    let mut a_worst: f64 = 0.0;
    for d in 2..=6 {
        a_worst = a_worst
            .max(statespace::p2_via_selberg(d).unwrap().rel_diff(statespace::p2_at_zero(d).unwrap()).abs())
            .max(statespace::p3_via_selberg(d).unwrap().rel_diff(statespace::p3_at_zero(d).unwrap()).abs());
    }
    Outcome {
        pass: q_worst <= 1e-8 && a_worst <= 1e-10,
        detail: format!(
            "{cases} parameter sets vs quadrature max rel {q_worst:.1e}; p''(0), p'''(0) assemblies d = 2..6 max rel {a_worst:.1e}"
        ),
    }
}

fn ac6() -> Outcome {
    const REPS: u64 = 12;
    const SAMPLES: u64 = 1_000_000;
    let bodies: [(&str, ProjectionOracle, [f64; 4]); 3] = [
        (
            "S_2",
            ProjectionOracle::state_space(2).unwrap(),
            statespace::steiner_coefficients(2).unwrap().map(|x| x.to_f64()),
        ),
        (
            "S_3",
            ProjectionOracle::state_space(3).unwrap(),
            statespace::steiner_coefficients(3).unwrap().map(|x| x.to_f64()),
        ),
        (
            "P_2",
            ProjectionOracle::polytope(2).unwrap(),
            cpolytope::steiner_coefficients(2).unwrap().map(|x| x.to_f64()),
        ),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (b, (name, oracle, closed)) in bodies.iter().enumerate() {
        let grid = default_eps_grid(oracle.circumradius);
        let mut within = [0u32; 4];
        for rep in 0..REPS {
            let seed = 0x5eed_0000 + 100 * b as u64 + rep;
            let fit = fit_steiner_coefficients(oracle, &grid, SAMPLES, seed, None).unwrap();
            for k in 0..4 {
                if fit.z_score(k, closed[k]).abs() <= 3.0 {
                    within[k] += 1;
                }
            }
        }
        pass &= within.iter().all(|&c| c >= 11);
        parts.push(format!("{name} {:?}/{REPS}", within));
    }
    Outcome {
        pass,
        detail: format!("|z| <= 3 counts for a_0..a_3: {}", parts.join(", ")),
    }
}

fn ac7() -> Outcome {
    let mut flagged = Vec::new();
    for d in 2..=8 {
        if feasibility::compare_polytope_statespace(d).unwrap().any_flagged() {
            flagged.push(d);
        }
    }
    Outcome {
        pass: flagged.is_empty(),
        detail: format!("d = 2..8, flagged d: {flagged:?}"),
    }
}

fn ac8() -> Outcome {
    let excluded = |d: usize| -> Vec<bool> {
        let r = feasibility::exclusion_report(d).unwrap();
        (0..4).map(|k| r.row(k).unwrap().excluded).collect()
    };
    let d6 = excluded(6);
    let d5 = excluded(5);
    let large: Vec<usize> = (7..=12).filter(|&d| excluded(d) != vec![true; 4]).collect();
    let ok6 = d6 == vec![true; 4];
    let ok5 = d5 == vec![true, true, true, false];
    let ratio52 = feasibility::exclusion_report(5).unwrap().row(2).unwrap().ratio.to_f64();
    Outcome {
        pass: ok6 && ok5 && large.is_empty(),
        detail: format!(
            "d=6 {:?}, d=5 {:?} (k=2 ratio {ratio52:.4}), d=7..12 deviating: {large:?}",
            d6, d5
        ),
    }
}

fn ac9() -> Outcome {
    let tol = Tolerances::default();
    let mut failing = Vec::new();
    for d in 2..=5 {
        for kind in [PrescriptionKind::Sic { d }, PrescriptionKind::Mub { d }] {
            let p = generate_prescription(kind).unwrap();
            if !check_trivial_requirements(&p, &tol).unwrap().all_ok() {
                failing.push(format!("{kind:?}"));
            }
        }
    }
    let mut worst: f64 = 0.0;
    let mut ortho_ok = true;
    for d in 2..=6 {
        let p = generate_prescription(PrescriptionKind::OrthoSet { d, n: d + 1 }).unwrap();
        let r = check_trivial_requirements(&p, &tol).unwrap();
        ortho_ok &= !r.psd_ok;
        worst = worst.max((r.min_eigenvalue + 1.0 / d as f64).abs());
    }
    Outcome {
        pass: failing.is_empty() && ortho_ok && worst <= 1e-10,
        detail: format!(
            "SIC/MUB d = 2..5 failing: {failing:?}; orthonormal sets fail psd: {ortho_ok}, |λ_min + 1/d| <= {worst:.1e}"
        ),
    }
}

fn main() {
    let criteria: [(&str, &str, fn() -> Outcome, Duration); 9] = [
        ("AC1", "d=3 state-space coefficients", ac1, Duration::from_secs(1)),
        ("AC2", "Bloch-ball intrinsic volumes", ac2, Duration::from_secs(1)),
        ("AC3", "octahedron from explicit coordinates", ac3, Duration::from_secs(1)),
        ("AC4", "face-by-face polytope assembly", ac4, Duration::from_secs(5)),
        ("AC5", "Selberg closed forms and assemblies", ac5, Duration::from_secs(30)),
        ("AC6", "Monte-Carlo Steiner fits", ac6, Duration::from_secs(600)),
        ("AC7", "polytope vs state-space comparison", ac7, Duration::from_secs(1)),
        ("AC8", "spherical-cone exclusions", ac8, Duration::from_secs(1)),
        ("AC9", "feasibility gate", ac9, Duration::from_secs(5)),
    ];
    let mut failures = 0;
    for (id, title, f, limit) in criteria {
        let t = Instant::now();
        let o = f();
        let elapsed = t.elapsed();
        let in_time = elapsed <= limit;
        let pass = o.pass && in_time;
        if !pass {
            failures += 1;
        }
        println!(
            "[{}] {id} {title}: {}; {:.2} s (limit {} s{})",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { ", exceeded" }
        );
    }
    println!("{} of 9 criteria passed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
