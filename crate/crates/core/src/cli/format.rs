//! Rendering of reports as aligned text, CSV or JSON.

use std::io::{self, Write};

use serde::Serialize;

use crate::mathkernel::LogReal;

/// JSON formatter printing every float with 17 significant digits.
struct Float17;

impl serde_json::ser::Formatter for Float17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serializes `value` as compact JSON with 17-significant-digit floats.
pub fn to_json_bytes<T: Serialize>(value: &T) -> serde_json::Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Float17);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(out)
}

/// `x` with `sig` significant digits, in fixed notation for moderate
/// magnitudes and scientific otherwise.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let e = x.abs().log10().floor() as i32;
    if (-4..6).contains(&e) {
        let decimals = (sig as i32 - 1 - e).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.*e}", sig - 1)
    }
}

#[derive(Clone, Debug)]
pub enum Cell {
    Text(String),
    Num(f64),
    Log(LogReal),
    Int(u128),
    Bool(bool),
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    fn human(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(x) => fmt_sig(*x, 15),
            Cell::Log(l) => {
                let v = l.to_f64();
                if v.is_finite() && (v == 0.0 || v.is_normal()) {
                    fmt_sig(v, 15)
                } else {
                    format!("{l}")
                }
            }
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => if *b { "yes" } else { "no" }.into(),
        }
    }

    fn machine(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Log(l) => {
                let v = l.to_f64();
                if v.is_finite() && (v == 0.0 || v.is_normal()) {
                    format!("{v:.16e}")
                } else {
                    format!("{l}")
                }
            }
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub title: Option<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(title: Option<&str>, header: &[&str]) -> Self {
        Table {
            title: title.map(str::to_string),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render_text(&self, out: &mut String) {
        if let Some(t) = &self.title {
            out.push_str(t);
            out.push('\n');
        }
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::human).collect()).collect();
        let mut width: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &cells {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |out: &mut String, items: &[String]| {
            let parts: Vec<String> = items
                .iter()
                .zip(&width)
                .map(|(s, &w)| format!("{s:<w$}"))
                .collect();
            out.push_str(parts.join("  ").trim_end());
            out.push('\n');
        };
        line(out, &self.header);
        let rule: Vec<String> = width.iter().map(|&w| "-".repeat(w)).collect();
        line(out, &rule);
        for r in &cells {
            line(out, r);
        }
    }

    pub fn render_csv(&self) -> csv::Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::machine))?;
        }
        w.into_inner().map_err(|e| e.into_error().into())
    }
}
