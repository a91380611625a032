//! Deterministic rendering of command results.

use clap::ValueEnum;
use serde_json::{Map, Value};
use std::io::{self, Write};

pub type Record = Map<String, Value>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Float formatting with a fixed number of digits after the point; very
/// large or small magnitudes switch to exponent form. Non-finite values
/// become `null`.
#[derive(Clone, Copy, Debug)]
pub struct Floats {
    pub precision: usize,
}

impl Floats {
    pub fn fmt(&self, x: f64) -> Value {
        if !x.is_finite() {
            return Value::Null;
        }
        let x = if x == 0.0 { 0.0 } else { x };
        let a = x.abs();
        let s = if a == 0.0 || (1e-4..1e15).contains(&a) {
            format!("{:.*}", self.precision, x)
        } else {
            format!("{:.*e}", self.precision, x)
        };
        Value::String(s)
    }
}

pub struct Report {
    pub command: &'static str,
    pub params: Record,
    pub results: Vec<Record>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, params: Record) -> Self {
        Report {
            command,
            params,
            results: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => self.write_json(out),
            Format::Csv => self.write_csv(out),
            Format::Text => self.write_text(out),
        }
    }

    fn write_json(&self, out: &mut impl Write) -> io::Result<()> {
        let mut top = Map::new();
        top.insert("command".into(), self.command.into());
        top.insert("params".into(), Value::Object(self.params.clone()));
        top.insert(
            "results".into(),
            Value::Array(self.results.iter().cloned().map(Value::Object).collect()),
        );
        top.insert(
            "warnings".into(),
            Value::Array(self.warnings.iter().cloned().map(Value::String).collect()),
        );
        serde_json::to_writer_pretty(&mut *out, &Value::Object(top))?;
        writeln!(out)
    }

    /// One header row over the union of result keys, in order of first
    /// appearance; warnings go to stderr.
    fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let mut header: Vec<&str> = Vec::new();
        for r in &self.results {
            for k in r.keys() {
                if !header.contains(&k.as_str()) {
                    header.push(k);
                }
            }
        }
        let mut w = csv::Writer::from_writer(&mut *out);
        w.write_record(&header)?;
        for r in &self.results {
            w.write_record(
                header
                    .iter()
                    .map(|k| r.get(*k).map(cell).unwrap_or_default()),
            )?;
        }
        w.flush()?;
        drop(w);
        for msg in &self.warnings {
            eprintln!("warning: {msg}");
        }
        Ok(())
    }

    fn write_text(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "{}", self.command)?;
        for (k, v) in &self.params {
            writeln!(out, "  {k}: {}", cell(v))?;
        }
        for r in &self.results {
            writeln!(out)?;
            let width = r.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in r {
                writeln!(out, "{k:<width$}  {}", cell(v))?;
            }
        }
        for msg in &self.warnings {
            writeln!(out, "\nwarning: {msg}")?;
        }
        Ok(())
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(" "),
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}
