//! Prescription matrices from JSON (`{"d": 3, "M": [[…], …]}`) or from a
//! headerless CSV grid with `d` given separately.

use std::path::Path;

use serde::Deserialize;

use super::PrescriptionMatrix;
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonPrescription {
    d: usize,
    #[serde(rename = "M")]
    m: Vec<Vec<f64>>,
}

/// Parses the JSON form. A `d` passed in overrides the file's value.
pub fn parse_json(text: &str, d: Option<usize>) -> Result<PrescriptionMatrix> {
    let p: JsonPrescription = serde_json::from_str(text)?;
    PrescriptionMatrix::new(d.unwrap_or(p.d), p.m)
}

pub fn parse_csv(text: &str, d: usize) -> Result<PrescriptionMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| Error::Input(format!("not a number: {f:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    PrescriptionMatrix::new(d, rows)
}

/// Reads a prescription, choosing the format by extension (`.csv`, else
/// JSON). CSV input requires `d`.
pub fn read_prescription(path: &Path, d: Option<usize>) -> Result<PrescriptionMatrix> {
    let text = std::fs::read_to_string(path)?;
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        let d = d.ok_or_else(|| Error::Input("CSV input needs --d".into()))?;
        parse_csv(&text, d)
    } else {
        parse_json(&text, d)
    }
}
