//! Output conventions shared by every writer: floats carry 17 significant
//! digits, non-finite values are strings, CSV rows are flushed as written.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Serialize, Serializer};
use serde_json::{Number, Value};

use crate::error::Result;

fn non_finite(x: f64) -> &'static str {
    if x.is_nan() {
        "nan"
    } else if x > 0.0 {
        "+inf"
    } else {
        "-inf"
    }
}

/// `x` with 17 significant digits, or `+inf`, `-inf`, `nan`.
pub fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        let s = format!("{x:.16e}");
        match s.split_once('e') {
            Some((mantissa, exp)) if !exp.starts_with('-') => format!("{mantissa}e+{exp}"),
            _ => s,
        }
    } else {
        non_finite(x).to_string()
    }
}

/// Serializer for fields that may be infinite, which JSON cannot hold.
pub fn real<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_str(non_finite(*x))
    }
}

fn reformat(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("float number");
            if let Ok(m) = fmt_real(x).parse::<Number>() {
                *n = m;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(reformat),
        Value::Object(map) => map.values_mut().for_each(reformat),
        _ => {}
    }
}

/// JSON value with every float rewritten to 17 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> Result<Value> {
    let mut v = serde_json::to_value(value)?;
    reformat(&mut v);
    Ok(v)
}

/// Compact single-line JSON.
pub fn json_line<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(&to_json(value)?)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&to_json(value)?)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// CSV file whose header comments carry the producing configuration. Each
/// row is flushed on write so completed cells survive a later failure.
pub struct CsvSink {
    out: BufWriter<File>,
}

impl CsvSink {
    pub fn create(path: &Path, comments: &[String], columns: &[&str]) -> Result<Self> {
        let mut out = BufWriter::new(File::create(path)?);
        for c in comments {
            writeln!(out, "# {c}")?;
        }
        writeln!(out, "{}", columns.join(","))?;
        out.flush()?;
        Ok(CsvSink { out })
    }

    pub fn row(&mut self, fields: &[String]) -> Result<()> {
        writeln!(self.out, "{}", fields.join(","))?;
        self.out.flush()?;
        Ok(())
    }
}
