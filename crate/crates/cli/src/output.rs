use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Numeric sweep output, rows kept in grid order.
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn to_csv(&self) -> CliResult<Vec<u8>> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::Validation(e.to_string());
        w.write_record(&self.headers).map_err(fail)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|&x| fmt_float(x))).map_err(fail)?;
        }
        w.into_inner().map_err(|e| CliError::Validation(e.to_string()))
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    Value::Object(self.headers.iter().zip(row).map(|(h, &x)| (h.to_string(), json_float(x))).collect())
                })
                .collect(),
        )
    }
}

fn json_float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or_else(|| Value::String(fmt_float(x)))
}

/// Flattens nested objects into `a.b,value` rows.
fn report_csv(v: &Value) -> CliResult<Vec<u8>> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}.{i}"), x, out);
                }
            }
            Value::Number(n) => {
                let s = n.as_f64().filter(|_| !n.is_i64() && !n.is_u64()).map(fmt_float).unwrap_or_else(|| n.to_string());
                out.push((prefix.to_string(), s));
            }
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
            Value::Null => out.push((prefix.to_string(), String::new())),
        }
    }
    let mut rows = Vec::new();
    walk("", v, &mut rows);
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Validation(e.to_string());
    w.write_record(["field", "value"]).map_err(fail)?;
    for (k, v) in rows {
        w.write_record([k, v]).map_err(fail)?;
    }
    w.into_inner().map_err(|e| CliError::Validation(e.to_string()))
}

pub enum Output {
    Report(Value),
    Table(Table),
    /// Written verbatim.
    Raw(String),
}

impl Output {
    pub fn report(fields: Map<String, Value>) -> Self {
        Output::Report(Value::Object(fields))
    }

    fn render(&self, format: Option<Format>) -> CliResult<Vec<u8>> {
        let mut bytes = match (self, format) {
            (Output::Report(v), Some(Format::Csv)) => return report_csv(v),
            (Output::Report(v), _) => serde_json::to_vec_pretty(v)?,
            (Output::Table(t), Some(Format::Json)) => serde_json::to_vec_pretty(&t.to_json())?,
            (Output::Table(t), _) => return t.to_csv(),
            (Output::Raw(s), _) => s.clone().into_bytes(),
        };
        bytes.push(b'\n');
        Ok(bytes)
    }

    pub fn emit(&self, format: Option<Format>, out: Option<&Path>) -> CliResult<()> {
        let bytes = self.render(format)?;
        let io_fail = |e: io::Error| CliError::Validation(format!("cannot write output: {e}"));
        match out {
            Some(p) => File::create(p).and_then(|mut f| f.write_all(&bytes)).map_err(io_fail),
            None => io::stdout().lock().write_all(&bytes).map_err(io_fail),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_float(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_float(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(fmt_float(f64::INFINITY), "inf");
    }

    #[test]
    fn csv_uses_lf() {
        let t = Table { headers: vec!["a", "b"], rows: vec![vec![1.0, 2.0]] };
        let s = String::from_utf8(t.to_csv().unwrap()).unwrap();
        assert_eq!(s, "a,b\n1.0000000000000000e0,2.0000000000000000e0\n");
    }

    #[test]
    fn nested_reports_flatten() {
        let v = serde_json::json!({"x": {"y": 0.5, "n": 3}, "ok": true});
        let s = String::from_utf8(report_csv(&v).unwrap()).unwrap();
        assert!(s.contains("x.y,5.0000000000000000e-1\n") && s.contains("x.n,3\n") && s.contains("ok,true\n"));
    }
}
