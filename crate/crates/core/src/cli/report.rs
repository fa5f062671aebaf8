//! Report emission: CSV with a header row, or one JSON document.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value as Json};

use super::config::RunConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Num(v)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as u64)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

/// Shortest text that parses back to the same f64. Plain decimal notation
/// in the usual range, scientific outside it.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = v.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

impl Value {
    fn text(&self) -> String {
        match self {
            Value::Num(v) => format_number(*v),
            Value::Int(v) => v.to_string(),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Num(v) if v.is_finite() => json!(v),
            Value::Num(v) => json!(format_number(*v)),
            Value::Int(v) => json!(v),
            Value::Text(s) => json!(s),
            Value::Bool(b) => json!(b),
        }
    }
}

/// One analysis: provenance, summary fields, and optionally a table of rows
/// (curves and parameter sweeps) that share the summary.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub config: Vec<(String, String)>,
    pub subcommand: String,
    pub fields: Vec<(String, Value)>,
    pub table: Option<(Vec<String>, Vec<Vec<Value>>)>,
}

impl Report {
    pub fn new(config: &RunConfig) -> Self {
        Report {
            config: config.values.clone(),
            subcommand: config.subcommand.name().to_string(),
            fields: Vec::new(),
            table: None,
        }
    }

    pub fn field(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((name.to_string(), value.into()));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    fn provenance(&self) -> Vec<(String, String)> {
        let mut p = vec![
            ("tool".to_string(), env!("CARGO_PKG_NAME").to_string()),
            ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
            ("subcommand".to_string(), self.subcommand.clone()),
        ];
        p.extend(self.config.iter().cloned());
        p
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let prov = self.provenance();
        let mut header: Vec<String> = prov.iter().map(|(k, _)| k.clone()).collect();
        header.extend(self.fields.iter().map(|(k, _)| k.clone()));
        let mut prefix: Vec<String> = prov.into_iter().map(|(_, v)| v).collect();
        prefix.extend(self.fields.iter().map(|(_, v)| v.text()));
        let csv_err = |e: csv::Error| Error::Usage(format!("report encoding failed: {e}"));
        match &self.table {
            None => {
                w.write_record(&header).map_err(csv_err)?;
                w.write_record(&prefix).map_err(csv_err)?;
            }
            Some((cols, rows)) => {
                header.extend(cols.iter().cloned());
                w.write_record(&header).map_err(csv_err)?;
                for row in rows {
                    let mut rec = prefix.clone();
                    rec.extend(row.iter().map(Value::text));
                    w.write_record(&rec).map_err(csv_err)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Usage(format!("report encoding failed: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output of UTF-8 input is UTF-8"))
    }

    pub fn to_json(&self) -> String {
        let mut config = Map::new();
        for (k, v) in &self.config {
            config.insert(k.clone(), json!(v));
        }
        let mut result = Map::new();
        for (k, v) in &self.fields {
            result.insert(k.clone(), v.json());
        }
        let mut doc = json!({
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "subcommand": self.subcommand,
            "config": config,
            "result": result,
        });
        if let Some((cols, rows)) = &self.table {
            let rows: Vec<Json> = rows
                .iter()
                .map(|r| {
                    let mut m = Map::new();
                    for (c, v) in cols.iter().zip(r) {
                        m.insert(c.clone(), v.json());
                    }
                    Json::Object(m)
                })
                .collect();
            doc["rows"] = Json::Array(rows);
        }
        let mut s = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, json: bool) -> Result<String> {
        if json {
            Ok(self.to_json())
        } else {
            self.to_csv()
        }
    }
}

pub fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
