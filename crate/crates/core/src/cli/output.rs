//! Result rows and their CSV / JSON encodings.
//!
//! CSV: header row, fixed column order, `.` as decimal point, LF line
//! endings, floats with 10 significant digits, empty cells for values that do
//! not apply. JSON: an array of objects with full-precision floats and
//! `null` for values that do not apply.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::config::Format;

/// A row that knows its CSV columns.
pub trait Table: Serialize {
    const HEADERS: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForceRow {
    pub gap_um: f64,
    #[serde(rename = "force_pN_sum")]
    pub force_pn_sum: f64,
    #[serde(rename = "force_pN_integral")]
    pub force_pn_integral: f64,
    pub n_terms: u64,
    #[serde(rename = "abs_err_pN")]
    pub abs_err_pn: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectionRow {
    pub gap_um: f64,
    #[serde(rename = "delta_numeric_pN")]
    pub delta_numeric_pn: f64,
    #[serde(rename = "delta_closed_pN")]
    pub delta_closed_pn: Option<f64>,
    #[serde(rename = "delta_expansion_pN")]
    pub delta_expansion_pn: Option<f64>,
    pub alpha: Option<f64>,
    pub relative_to_force: f64,
}

/// Ten significant digits in scientific notation.
pub fn fmt_sig(v: f64) -> String {
    format!("{v:.9e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_sig).unwrap_or_default()
}

impl Table for ForceRow {
    const HEADERS: &'static [&'static str] =
        &["gap_um", "force_pN_sum", "force_pN_integral", "n_terms", "abs_err_pN"];

    fn cells(&self) -> Vec<String> {
        vec![
            fmt_sig(self.gap_um),
            fmt_sig(self.force_pn_sum),
            fmt_sig(self.force_pn_integral),
            self.n_terms.to_string(),
            fmt_sig(self.abs_err_pn),
        ]
    }
}

impl Table for CorrectionRow {
    const HEADERS: &'static [&'static str] = &[
        "gap_um",
        "delta_numeric_pN",
        "delta_closed_pN",
        "delta_expansion_pN",
        "alpha",
        "relative_to_force",
    ];

    fn cells(&self) -> Vec<String> {
        vec![
            fmt_sig(self.gap_um),
            fmt_sig(self.delta_numeric_pn),
            fmt_opt(self.delta_closed_pn),
            fmt_opt(self.delta_expansion_pn),
            fmt_opt(self.alpha),
            fmt_sig(self.relative_to_force),
        ]
    }
}

pub fn write_csv<T: Table, W: Write>(rows: &[T], out: W) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(T::HEADERS)?;
    for row in rows {
        w.write_record(row.cells())?;
    }
    w.flush()
}

pub fn write_json<T: Serialize, W: Write>(rows: &[T], mut out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    out.write_all(b"\n")
}

pub fn write_rows<T: Table, W: Write>(rows: &[T], format: Format, out: W) -> io::Result<()> {
    match format {
        Format::Csv => write_csv(rows, out),
        Format::Json => write_json(rows, out),
    }
}
