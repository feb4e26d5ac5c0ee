//! CSV and JSON writers. Numbers are written in round-trippable
//! scientific notation; absent values are empty fields.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    #[error("cannot write {path}: {message}")]
    Write { path: PathBuf, message: String },
    #[error("cannot read {path}: {message}")]
    Read { path: PathBuf, message: String },
}

fn write_err(path: &Path, e: impl std::fmt::Display) -> ExportError {
    ExportError::Write {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

pub fn format_value(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.16e}"),
        None => String::new(),
    }
}

/// A column-major table of optional numbers.
pub struct Table {
    header: Vec<String>,
    columns: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new() -> Self {
        Self {
            header: Vec::new(),
            columns: Vec::new(),
        }
    }

    pub fn column(mut self, name: &str, values: impl IntoIterator<Item = f64>) -> Self {
        self.header.push(name.to_string());
        self.columns.push(values.into_iter().map(Some).collect());
        self
    }

    pub fn optional(mut self, name: &str, values: impl IntoIterator<Item = Option<f64>>) -> Self {
        self.header.push(name.to_string());
        self.columns.push(values.into_iter().collect());
        self
    }

    pub fn rows(&self) -> usize {
        self.columns.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn write(&self, path: &Path) -> Result<(), ExportError> {
        let mut w = csv::Writer::from_path(path).map_err(|e| write_err(path, e))?;
        w.write_record(&self.header).map_err(|e| write_err(path, e))?;
        for r in 0..self.rows() {
            let record = self
                .columns
                .iter()
                .map(|c| format_value(c.get(r).copied().flatten()));
            w.write_record(record).map_err(|e| write_err(path, e))?;
        }
        w.flush().map_err(|e| write_err(path, e))
    }
}

impl Default for Table {
    fn default() -> Self {
        Self::new()
    }
}

/// Writes rows with a mix of text and numbers, e.g. branch summaries.
pub fn write_records(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), ExportError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| write_err(path, e))?;
    w.write_record(header).map_err(|e| write_err(path, e))?;
    for row in rows {
        w.write_record(row).map_err(|e| write_err(path, e))?;
    }
    w.flush().map_err(|e| write_err(path, e))
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), ExportError> {
    let file = File::create(path).map_err(|e| write_err(path, e))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| write_err(path, e))?;
    w.write_all(b"\n").map_err(|e| write_err(path, e))?;
    w.flush().map_err(|e| write_err(path, e))
}

/// Reads named numeric columns from a CSV file with a header row.
/// Empty fields become NaN.
pub fn read_columns(path: &Path, names: &[&str]) -> Result<Vec<Vec<f64>>, ExportError> {
    let read_err = |message: String| ExportError::Read {
        path: path.to_path_buf(),
        message,
    };
    let mut r = csv::Reader::from_path(path).map_err(|e| read_err(e.to_string()))?;
    let header = r.headers().map_err(|e| read_err(e.to_string()))?.clone();
    let index: Vec<usize> = names
        .iter()
        .map(|n| {
            header
                .iter()
                .position(|h| h == *n)
                .ok_or_else(|| read_err(format!("missing column \"{n}\"")))
        })
        .collect::<Result<_, _>>()?;
    let mut out = vec![Vec::new(); names.len()];
    for (line, record) in r.records().enumerate() {
        let record = record.map_err(|e| read_err(e.to_string()))?;
        for (col, &i) in index.iter().enumerate() {
            let field = record.get(i).unwrap_or("").trim();
            let v = if field.is_empty() {
                f64::NAN
            } else {
                field
                    .parse()
                    .map_err(|_| read_err(format!("row {}: \"{field}\" is not a number", line + 2)))?
            };
            out[col].push(v);
        }
    }
    Ok(out)
}
