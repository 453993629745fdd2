use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Records of one command run, printed in the chosen format.
pub struct Report {
    pub command: &'static str,
    /// CSV column order; nested values are written as JSON.
    pub columns: &'static [&'static str],
    pub rows: Vec<Map<String, Value>>,
}

fn cell(v: Option<&Value>) -> String {
    let s = match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(v) => v.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}

impl Report {
    pub fn new(command: &'static str, columns: &'static [&'static str]) -> Self {
        Report {
            command,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": self.command,
                    "results": self.rows,
                });
                serde_json::to_writer_pretty(&mut *out, &doc)?;
                writeln!(out)
            }
            Format::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = self.columns.iter().map(|c| cell(row.get(*c))).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
                Ok(())
            }
            Format::Text => {
                for (i, row) in self.rows.iter().enumerate() {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    for (k, v) in row {
                        if !v.is_null() {
                            writeln!(out, "{k}: {}", text_value(v))?;
                        }
                    }
                }
                Ok(())
            }
        }
    }
}
