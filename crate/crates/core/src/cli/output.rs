//! CSV tables, JSON reports and metadata sidecars.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

impl Cell {
    /// Integers verbatim, reals at 17 significant digits.
    pub fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format!("{v:.16e}"),
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Cell::Int(v) => *v as f64,
            Cell::Real(v) => *v,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl SweepResult {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i].as_f64()).collect())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Header and numeric rows of a CSV written by [`SweepResult::write_csv`].
pub fn read_csv<R: Read>(input: R) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|s| s.parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok((header, rows))
}

/// Run metadata kept beside every output file.
#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub schema_version: u32,
    pub experiment: String,
    pub version: String,
    pub seed: u64,
    pub tol: f64,
    pub workers: usize,
    pub timestamp_unix: u64,
    pub rows: Option<usize>,
    pub columns: Option<Vec<String>>,
    pub notes: serde_json::Value,
}

impl Metadata {
    pub fn now(experiment: &str, seed: u64, tol: f64, workers: usize) -> Self {
        Self {
            schema_version: super::config::SCHEMA_VERSION,
            experiment: experiment.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            tol,
            workers,
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            rows: None,
            columns: None,
            notes: serde_json::Value::Null,
        }
    }
}

/// `<out>.meta.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
