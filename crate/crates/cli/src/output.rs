use anyhow::Result;
use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// What a command produced: the JSON document, the rows used for CSV, and the exit code.
pub struct Outcome {
    pub json: Value,
    pub rows: Vec<Map<String, Value>>,
    pub code: i32,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;

impl Outcome {
    /// A single object; its CSV form is one row.
    pub fn object(map: Map<String, Value>) -> Self {
        Outcome {
            json: Value::Object(map.clone()),
            rows: vec![map],
            code: EXIT_OK,
        }
    }

    pub fn with_code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            Format::Csv => csv_rows(&self.rows),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

fn csv_rows(rows: &[Map<String, Value>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = rows.first() {
        w.write_record(first.keys())?;
        for row in rows {
            w.write_record(first.keys().map(|k| row.get(k).map(cell).unwrap_or_default()))?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
