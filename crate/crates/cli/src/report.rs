//! The report every subcommand produces, and its JSON and CSV renderings.
//!
//! JSON keys: `command`, `graph` (`{n, q}` or `null`), `results`,
//! `residuals`, `runtime_ms` (`null` unless timing was requested).
//! Object keys inside `results` and `residuals` are sorted, so equal
//! inputs give byte-identical output.
//!
//! CSV has the columns `section,key,value`, one row per leaf, with nested
//! keys joined by `.` and array positions written `[i]`.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct GraphInfo {
    pub n: usize,
    pub q: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub graph: Option<GraphInfo>,
    pub results: Map<String, Value>,
    pub residuals: Map<String, Value>,
    pub runtime_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str, graph: Option<GraphInfo>) -> Self {
        Self {
            command: command.to_string(),
            graph,
            results: Map::new(),
            residuals: Map::new(),
            runtime_ms: None,
        }
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) {
        self.results.insert(key.to_string(), v.into());
    }

    pub fn residual(&mut self, key: &str, v: f64) {
        self.residuals.insert(key.to_string(), json!(v));
    }

    /// Largest residual; NaN counts as a failure.
    pub fn worst_residual(&self) -> f64 {
        self.residuals
            .values()
            .map(|v| v.as_f64().unwrap_or(f64::INFINITY))
            .fold(
                0.0,
                |a, b| if b.is_nan() { f64::INFINITY } else { a.max(b) },
            )
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s =
            serde_json::to_string_pretty(self).map_err(|e| CliError::Output(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let value = serde_json::to_value(self).map_err(|e| CliError::Output(e.to_string()))?;
        let mut w = csv::Writer::from_writer(Vec::new());
        let out = |e: csv::Error| CliError::Output(e.to_string());
        w.write_record(["section", "key", "value"]).map_err(out)?;
        let Value::Object(top) = value else {
            unreachable!("report serializes to an object")
        };
        let mut rows = Vec::new();
        for key in ["command", "graph", "results", "residuals", "runtime_ms"] {
            let v = &top[key];
            match v {
                Value::Object(_) => flatten(key, "", v, &mut rows),
                _ => rows.push((key.to_string(), String::new(), leaf(v))),
            }
        }
        for (section, key, val) in rows {
            w.write_record([section, key, val]).map_err(out)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
    }
}

fn leaf(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(section: &str, prefix: &str, v: &Value, rows: &mut Vec<(String, String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(section, &key, x, rows);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(section, &format!("{prefix}[{i}]"), x, rows);
            }
        }
        _ => rows.push((section.to_string(), prefix.to_string(), leaf(v))),
    }
}

pub fn complex(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// Exact integer: a JSON number when it fits in `i64`, a string otherwise.
pub fn int(v: i128) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}
