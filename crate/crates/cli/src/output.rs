//! Record rendering: plain text, CSV with a fixed header, or JSON lines.

use std::io::{self, Write};

use clap::ValueEnum;
use num_bigint::BigInt;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Closed,
    Brute,
    Both,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Closed => "closed-form",
            Method::Brute => "brute-force",
            Method::Both => "both",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub quantity: String,
    pub params: Vec<(String, String)>,
    pub value: BigInt,
    pub method: Method,
}

/// Writes records to stdout. The CSV header goes out at construction, so an
/// empty table still has one.
pub struct Emitter {
    format: Format,
    csv: Option<csv::Writer<io::Stdout>>,
}

impl Emitter {
    pub fn new(format: Format, param_names: &[&str]) -> io::Result<Self> {
        let csv = if format == Format::Csv {
            let mut w = csv::Writer::from_writer(io::stdout());
            let mut header = vec!["quantity".to_string()];
            header.extend(param_names.iter().map(|p| format!("param:{p}")));
            header.push("value".into());
            header.push("method".into());
            w.write_record(&header).map_err(io::Error::other)?;
            Some(w)
        } else {
            None
        };
        Ok(Emitter { format, csv })
    }

    pub fn emit(&mut self, r: &Record) -> io::Result<()> {
        match self.format {
            Format::Text => {
                let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let mut out = io::stdout().lock();
                writeln!(out, "{} [{}] = {} ({})", r.quantity, params.join(" "), r.value, r.method.label())
            }
            Format::Csv => {
                let w = self.csv.as_mut().expect("csv writer exists in csv mode");
                let mut row = vec![r.quantity.clone()];
                row.extend(r.params.iter().map(|(_, v)| v.clone()));
                row.push(r.value.to_string());
                row.push(r.method.label().into());
                w.write_record(&row).map_err(io::Error::other)?;
                w.flush()
            }
            Format::Jsonl => {
                let mut params = Map::new();
                for (k, v) in &r.params {
                    params.insert(k.clone(), Value::String(v.clone()));
                }
                let mut obj = Map::new();
                obj.insert("quantity".into(), Value::String(r.quantity.clone()));
                obj.insert("params".into(), Value::Object(params));
                obj.insert("value".into(), Value::String(r.value.to_string()));
                obj.insert("method".into(), Value::String(r.method.label().into()));
                let mut out = io::stdout().lock();
                writeln!(out, "{}", Value::Object(obj))
            }
        }
    }
}
