//! Machine-readable output records.

use std::fmt;
use std::io::Write;

use clap::ValueEnum;
use cotsum::Real;
use serde_json::{Map, Number, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    /// Round-trip decimal rendering of a real; `None` when not finite.
    Real(Option<String>),
    UInt(u64),
    Bool(bool),
    Text(String),
}

impl Value {
    pub fn real<T: Real>(x: T) -> Self {
        Value::Real(x.is_finite().then(|| x.to_round_trip_string()))
    }

    fn to_json(&self) -> Json {
        match self {
            Value::Real(Some(s)) => s
                .parse::<Number>()
                .map(Json::Number)
                .unwrap_or_else(|_| Json::String(s.clone())),
            Value::Real(None) => Json::Null,
            Value::UInt(u) => Json::from(*u),
            Value::Bool(b) => Json::Bool(*b),
            Value::Text(s) => Json::String(s.clone()),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Real(Some(s)) => f.write_str(s),
            Value::Real(None) => f.write_str("nan"),
            Value::UInt(u) => write!(f, "{u}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::UInt(v)
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

type Entries = Vec<(String, Value)>;

/// One command result: parameters, computed values and diagnostics, each an
/// ordered flat map.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: Entries,
    pub values: Entries,
    pub diagnostics: Entries,
}

fn to_object(entries: &Entries) -> Json {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert(k.clone(), v.to_json());
    }
    Json::Object(map)
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ..Self::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.push((key.to_string(), value.into()));
        self
    }

    pub fn value(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.values.push((key.to_string(), value.into()));
        self
    }

    pub fn diagnostic(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.diagnostics.push((key.to_string(), value.into()));
        self
    }

    pub fn to_json(&self) -> Json {
        let mut map = Map::new();
        map.insert("command".into(), Json::String(self.command.clone()));
        map.insert("parameters".into(), to_object(&self.parameters));
        map.insert("values".into(), to_object(&self.values));
        map.insert("diagnostics".into(), to_object(&self.diagnostics));
        Json::Object(map)
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", self.to_json()),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["section", "key", "value"])?;
                for (section, entries) in [
                    ("parameters", &self.parameters),
                    ("values", &self.values),
                    ("diagnostics", &self.diagnostics),
                ] {
                    for (k, v) in entries {
                        w.write_record([section, k.as_str(), v.to_string().as_str()])?;
                    }
                }
                w.flush()
            }
            Format::Text => {
                writeln!(out, "{}", self.command)?;
                for (section, entries) in [
                    ("parameters", &self.parameters),
                    ("values", &self.values),
                    ("diagnostics", &self.diagnostics),
                ] {
                    if entries.is_empty() {
                        continue;
                    }
                    writeln!(out, "  {section}:")?;
                    for (k, v) in entries {
                        writeln!(out, "    {k} = {v}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// Flat rows written by the residual scan.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub summary: Entries,
}

impl Table {
    /// CSV: header and rows only. JSON: one flat object per line, then the summary object.
    pub fn write(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Csv | Format::Text => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(out);
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(|v| v.to_string()))?;
                }
                w.flush()
            }
            Format::Json => {
                for row in &self.rows {
                    let mut map = Map::new();
                    for (k, v) in self.header.iter().zip(row) {
                        map.insert((*k).to_string(), v.to_json());
                    }
                    writeln!(out, "{}", Json::Object(map))?;
                }
                writeln!(out, "{}", to_object(&self.summary))
            }
        }
    }
}
