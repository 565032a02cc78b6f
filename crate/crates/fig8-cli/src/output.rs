//! Deterministic CSV and JSON table rendering.
//!
//! Numbers are printed with floor(precision_bits / 3.32) significant decimal
//! digits so that identical runs produce byte-identical files.

use fig8::rug::Float;
use fig8::LogComplex;
use serde_json::{json, Value};

/// One table cell.
#[derive(Clone, Debug)]
pub enum Cell {
    Text(String),
    Int(i64),
    Real(Float),
    LogC(LogComplex),
}

/// A rectangular result table.
#[derive(Clone, Debug)]
pub struct Table {
    pub command: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub digits: usize,
}

pub fn digits_for_bits(bits: u32) -> usize {
    ((bits as f64) / 3.32).floor() as usize
}

fn format_float(x: &Float, digits: usize) -> String {
    if !x.is_finite() {
        return if x.is_infinite() {
            if x.is_sign_negative() {
                "-inf".into()
            } else {
                "inf".into()
            }
        } else {
            "nan".into()
        };
    }
    x.to_string_radix(10, Some(digits))
}

/// Decimal string of a log-form value when its magnitude fits a printable
/// exponent; None otherwise.
fn logc_decimal(v: &LogComplex, digits: usize) -> Option<(String, String)> {
    let log10 = v.log_mag().clone() / Float::with_val(64, 10f64).ln();
    if log10.clone().abs() > 100_000u32 {
        return None;
    }
    let z = v.to_complex();
    let re = Float::with_val(z.prec().0, z.real());
    let im = Float::with_val(z.prec().1, z.imag());
    Some((format_float(&re, digits), format_float(&im, digits)))
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Text(t) => t.clone(),
                    Cell::Int(i) => i.to_string(),
                    Cell::Real(x) => format_float(x, self.digits),
                    Cell::LogC(v) => format!(
                        "{};{}",
                        format_float(v.log_mag(), self.digits),
                        format_float(v.arg(), self.digits)
                    ),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row.iter())
                    .map(|(name, cell)| {
                        let v = match cell {
                            Cell::Text(t) => json!(t),
                            Cell::Int(i) => json!(i),
                            Cell::Real(x) => json!(format_float(x, self.digits)),
                            Cell::LogC(lc) => {
                                let decimal = logc_decimal(lc, self.digits);
                                json!({
                                    "log_mag": format_float(lc.log_mag(), self.digits),
                                    "arg_mod_2pi": format_float(lc.arg(), self.digits),
                                    "decimal_re": decimal.as_ref().map(|d| d.0.clone()),
                                    "decimal_im": decimal.as_ref().map(|d| d.1.clone()),
                                })
                            }
                        };
                        (name.clone(), v)
                    })
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "command": self.command,
            "rows": rows,
        });
        format!("{:#}\n", doc)
    }
}

/// Machine-readable error record printed to stderr before a nonzero exit.
pub fn error_record(kind: &str, message: &str) -> String {
    format!("{}\n", json!({"error": {"kind": kind, "message": message}}))
}
