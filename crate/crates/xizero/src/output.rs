//! Flat records and their JSON-lines / CSV renderings.
//!
//! Numbers are written as decimal strings so no precision is lost in transit.
//! Every numeric field `x` is followed by its error bound `x_err`, which is
//! `0` for exact values; labels (names, flags, statuses) are plain strings.

use std::io::{self, Write};

use serde_json::{Map, Value};
use xizero_core::numerics::Estimate;
use xizero_core::{Mp, Real};

use crate::config::Format;

#[derive(Clone, Debug, PartialEq)]
pub enum Field {
    Label(String),
    Number { value: String, err: String },
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Record {
    fields: Vec<(String, Field)>,
}

/// Significant digits carried by a `bits`-bit mantissa.
fn max_digits(bits: usize) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).floor().max(3.0) as usize
}

/// Decimal rendering of `value` with the digits its error bound supports.
pub fn format_value(value: &Real, err: &Real) -> String {
    let mut mp = Mp::new(value.prec().max(64));
    let cap = max_digits(value.prec());
    let digits = if err.is_zero() || value.is_zero() {
        cap
    } else {
        let ratio = (&value.abs() / err).to_f64();
        if ratio.is_finite() && ratio > 1.0 {
            ((ratio.log10().ceil() as usize) + 2).clamp(3, cap)
        } else {
            3
        }
    };
    mp.to_sci(value, digits)
}

/// Error bound rounded outward to three significant digits.
pub fn format_err(err: &Real) -> String {
    if err.is_zero() {
        return "0".into();
    }
    let mut mp = Mp::new(err.prec().max(64));
    mp.to_sci(&err.abs().mul_f64(1.01), 3)
}

fn format_f64(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:e}")
    }
}

impl Record {
    pub fn new() -> Record {
        Record::default()
    }

    pub fn label(mut self, key: &str, v: impl ToString) -> Record {
        self.fields.push((key.into(), Field::Label(v.to_string())));
        self
    }

    /// An exact number (index, count, grid input) with error 0.
    pub fn exact(mut self, key: &str, v: impl ToString) -> Record {
        let f = Field::Number { value: v.to_string(), err: "0".into() };
        self.fields.push((key.into(), f));
        self
    }

    pub fn estimate(self, key: &str, e: &Estimate) -> Record {
        self.real(key, &e.value, &e.error)
    }

    pub fn real(mut self, key: &str, value: &Real, err: &Real) -> Record {
        let f = Field::Number {
            value: format_value(value, err),
            err: format_err(err),
        };
        self.fields.push((key.into(), f));
        self
    }

    /// A double-precision number with its own error bound.
    pub fn float(mut self, key: &str, value: f64, err: f64) -> Record {
        let f = Field::Number {
            value: format_f64(value),
            err: format_f64(err.abs()),
        };
        self.fields.push((key.into(), f));
        self
    }

    pub fn fields(&self) -> &[(String, Field)] {
        &self.fields
    }

    /// Flattened (key, string) pairs with the `_err` companions inline.
    pub fn columns(&self) -> Vec<(String, String)> {
        let mut out = Vec::with_capacity(self.fields.len() * 2);
        for (k, f) in &self.fields {
            match f {
                Field::Label(s) => out.push((k.clone(), s.clone())),
                Field::Number { value, err } => {
                    out.push((k.clone(), value.clone()));
                    out.push((format!("{k}_err"), err.clone()));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in self.columns() {
            m.insert(k, Value::String(v));
        }
        Value::Object(m)
    }
}

/// Writes one JSON object per line.
pub fn write_json(records: &[Record], out: &mut dyn Write) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, &r.to_json())?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Writes a CSV table whose header is the union of all keys in first-seen
/// order; absent cells are empty.
pub fn write_csv(records: &[Record], out: &mut dyn Write) -> io::Result<()> {
    let rows: Vec<Vec<(String, String)>> = records.iter().map(Record::columns).collect();
    let mut header: Vec<String> = Vec::new();
    for row in &rows {
        for (k, _) in row {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&header)?;
    for row in &rows {
        let cells = header.iter().map(|h| {
            row.iter()
                .find(|(k, _)| k == h)
                .map(|(_, v)| v.as_str())
                .unwrap_or("")
        });
        w.write_record(cells)?;
    }
    w.flush()
}

pub fn write(records: &[Record], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => write_json(records, out),
        Format::Csv => write_csv(records, out),
    }
}
