//! Record sinks: JSON lines or CSV.

use std::io::{self, BufWriter, Stdout, Write};

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub struct Output {
    format: Format,
    json: BufWriter<Stdout>,
    csv: csv::Writer<Stdout>,
    header: Option<Vec<String>>,
}

impl Output {
    pub fn stdout(format: Format) -> Self {
        Self {
            format,
            json: BufWriter::new(io::stdout()),
            csv: csv::Writer::from_writer(io::stdout()),
            header: None,
        }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn emit<T: Serialize + ?Sized>(&mut self, record: &T) -> Result<()> {
        match self.format {
            Format::Json => {
                serde_json::to_writer(&mut self.json, record)?;
                self.json.write_all(b"\n")?;
            }
            Format::Csv => {
                let mut cells = Vec::new();
                flatten("", &serde_json::to_value(record)?, &mut cells);
                let (keys, values): (Vec<String>, Vec<String>) = cells.into_iter().unzip();
                match &self.header {
                    None => {
                        self.csv.write_record(&keys)?;
                        self.header = Some(keys);
                    }
                    Some(header) if *header != keys => {
                        anyhow::bail!("record columns {keys:?} differ from header {header:?}")
                    }
                    Some(_) => {}
                }
                self.csv.write_record(&values)?;
            }
        }
        Ok(())
    }

    pub fn finish(&mut self) -> Result<()> {
        self.json.flush()?;
        self.csv.flush()?;
        Ok(())
    }
}

/// Objects become dotted column names; arrays stay as compact JSON text.
fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                let name = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten(&name, v, out);
            }
        }
        Value::Null => out.push((prefix.to_owned(), String::new())),
        Value::String(s) => out.push((prefix.to_owned(), s.clone())),
        other => out.push((prefix.to_owned(), other.to_string())),
    }
}
