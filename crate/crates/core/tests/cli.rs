use std::path::Path;
use std::process::{Command, Output};

use qgeom::feasibility::{generate_prescription, PrescriptionKind};
use serde_json::Value;

fn qgeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgeom"))
        .args(args)
        .env_remove("QGEOM_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = qgeom(&a);
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn write_prescription(dir: &Path, name: &str, kind: PrescriptionKind) -> String {
    let p = generate_prescription(kind).unwrap();
    let doc = serde_json::json!({ "d": p.d, "M": p.rows() });
    let path = dir.join(name);
    std::fs::write(&path, doc.to_string()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn statespace_d3_shows_the_volume_row() {
    let o = qgeom(&["statespace", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("√3π³/2520"), "{s}");
    assert!(s.contains("12√2π³/5"));
}

#[test]
fn statespace_d2_is_the_bloch_ball() {
    let v = json(&["statespace", "--d", "2"]);
    assert_eq!(v["schema"], "qgeom/1");
    let vol = v["volume"]["value"].as_f64().unwrap();
    assert!((vol - std::f64::consts::PI * 2f64.sqrt() / 3.0).abs() < 1e-14);
    let surf = v["surface"]["value"].as_f64().unwrap();
    assert!((surf - 2.0 * std::f64::consts::PI).abs() < 1e-14);
}

#[test]
fn invalid_d_is_a_usage_error() {
    assert_eq!(qgeom(&["statespace", "--d", "1"]).status.code(), Some(2));
    assert_eq!(qgeom(&["statespace"]).status.code(), Some(2));
    assert_eq!(qgeom(&["montecarlo", "--d", "2", "--samples", "0"]).status.code(), Some(2));
}

#[test]
fn polytope_tables() {
    let s = stdout(&qgeom(&["polytope", "--d", "2"]));
    assert!(s.contains("6·arccos(1/3)"), "{s}");
    assert!(s.contains("2π/9"));
    let v = json(&["polytope", "--d", "3"]);
    assert_eq!(v["face_counts"]["codim_two"], 324);
    assert_eq!(v["face_counts"]["codim_three_type1"], 108);
    assert_eq!(v["face_counts"]["codim_three_type2"], 486);
    let v6 = json(&["polytope", "--d", "6"]);
    assert!(v6["vtilde_Dm3"]["ln_abs"].as_f64().unwrap().is_finite());
}

#[test]
fn compare_outputs() {
    let o = qgeom(&["compare", "--d", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&["compare", "--d", "2"]);
    let r = v["rows"][0]["ratio"]["value"].as_f64().unwrap();
    assert!((r - 1.0 / std::f64::consts::PI).abs() < 1e-14);
    assert_eq!(v["rows"][0]["N"], 3);
    let csv = stdout(&qgeom(&["compare", "--d", "2", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 5, "{csv}");
}

#[test]
fn exclude_outputs() {
    let v = json(&["exclude", "--d", "6"]);
    let ex: Vec<bool> = v["rows"].as_array().unwrap().iter().map(|r| r["excluded"].as_bool().unwrap()).collect();
    assert_eq!(ex, vec![true; 4]);
    let v5 = json(&["exclude", "--d", "5"]);
    assert_eq!(v5["rows"][3]["excluded"], false);
    assert_eq!(qgeom(&["exclude", "--d", "2"]).status.code(), Some(0));
    let one = json(&["exclude", "--d", "6", "--k", "3"]);
    assert_eq!(one["rows"].as_array().unwrap().len(), 1);
}

#[test]
fn feasible_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let sic = write_prescription(dir.path(), "sic.json", PrescriptionKind::Sic { d: 2 });
    assert_eq!(qgeom(&["feasible", &sic]).status.code(), Some(0));

    let ortho = write_prescription(dir.path(), "ortho.json", PrescriptionKind::OrthoSet { d: 3, n: 4 });
    let o = qgeom(&["feasible", &ortho]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("psd"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"d\": 2, \"M\": [[1, 0]").unwrap();
    assert_eq!(qgeom(&["feasible", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(qgeom(&["feasible", "/nonexistent/m.json"]).status.code(), Some(2));

    let csv = dir.path().join("sic.csv");
    let p = generate_prescription(PrescriptionKind::Sic { d: 2 }).unwrap();
    let body: String = p
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| format!("{x:.17e}")).collect::<Vec<_>>().join(",") + "\n")
        .collect();
    std::fs::write(&csv, body).unwrap();
    assert_eq!(qgeom(&["feasible", csv.to_str().unwrap(), "--d", "2"]).status.code(), Some(0));
}

#[test]
fn json_output_is_reproducible_and_out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("mc.json");
    let args = [
        "montecarlo", "--body", "polytope", "--d", "2", "--samples", "20000", "--seed", "11", "--format", "json",
    ];
    let a = qgeom(&args).stdout;
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out.to_str().unwrap(), "--jobs", "1"]);
    assert_eq!(qgeom(&with_out).status.code().map(|c| c <= 1), Some(true));
    assert_eq!(a, std::fs::read(&out).unwrap());
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["command"], "montecarlo");
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 4);
}

#[test]
fn seed_falls_back_to_the_environment() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_qgeom"));
        c.args(["montecarlo", "--body", "cone", "--d", "2", "--samples", "5000", "--format", "json"]);
        match env {
            Some(s) => c.env("QGEOM_SEED", s),
            None => c.env_remove("QGEOM_SEED"),
        };
        serde_json::from_slice::<Value>(&c.output().unwrap().stdout).unwrap()
    };
    assert_eq!(run(Some("42"))["seed"], 42);
    assert_eq!(run(None)["seed"], 0);
}
