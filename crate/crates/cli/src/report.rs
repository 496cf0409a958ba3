use std::fmt::Write as _;

use clap::ValueEnum;
use drgwb_core::exact::{approx_f64, describe, is_integral, BigRational};
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One command's output in all three renderings.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub json: Value,
    pub text: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(command: &'static str, header: &[&str]) -> Self {
        Self {
            command,
            json: json!({}),
            text: String::new(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows.push(cells.into_iter().map(|c| c.to_string()).collect());
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut body = self.json.clone();
                if let Value::Object(map) = &mut body {
                    map.insert("schema".into(), json!(SCHEMA));
                    map.insert("command".into(), json!(self.command));
                }
                let mut s = serde_json::to_string_pretty(&body)?;
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
        })
    }
}

/// Exact value, with an approximation marked `~` when not an integer.
pub fn num(x: &BigRational) -> String {
    describe(x)
}

/// Exact value and, for non-integers, a marked approximation.
pub fn num_json(x: &BigRational) -> Value {
    if is_integral(x) {
        json!(x.to_string())
    } else {
        match approx_f64(x) {
            Some(v) => json!({ "exact": x.to_string(), "approx": format!("~{v:.6}") }),
            None => json!({ "exact": x.to_string() }),
        }
    }
}

pub fn list(xs: &[BigRational]) -> String {
    let mut s = String::from("[");
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x}");
    }
    s.push(']');
    s
}

pub fn strings(xs: &[BigRational]) -> Value {
    json!(xs.iter().map(ToString::to_string).collect::<Vec<_>>())
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
