//! Tabular results and their CSV / JSON encodings.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            // NaN and infinities become null.
            Cell::Float(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i8> for Cell {
    fn from(v: i8) -> Self {
        Cell::Int(v.into())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

pub type Row = Vec<Cell>;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Short name used in the header comment and the manifest.
    pub kind: &'static str,
    /// Units and conventions, written as the header comment.
    pub units: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Table {
    pub fn new(kind: &'static str, units: &'static str, columns: &[&str]) -> Self {
        Self {
            kind,
            units,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn header_comment(&self) -> String {
        format!("# xychain {} {}: {}", env!("CARGO_PKG_VERSION"), self.kind, self.units)
    }

    pub fn encode(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        writeln!(buf, "{}", self.header_comment())?;
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(buf);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.into_inner().map_err(|e| e.into_error().into())
    }

    fn to_json(&self) -> Result<Vec<u8>> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Cell::json))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = serde_json::json!({
            "tool": "xychain",
            "version": env!("CARGO_PKG_VERSION"),
            "kind": self.kind,
            "units": self.units,
            "columns": self.columns,
            "rows": rows,
        });
        let mut buf = serde_json::to_vec_pretty(&doc)?;
        buf.push(b'\n');
        Ok(buf)
    }
}

#[derive(Debug, Serialize)]
struct ManifestEntry {
    path: String,
    kind: &'static str,
    format: &'static str,
    rows: usize,
    sha256: String,
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    arguments: &'a [String],
    wall_time_s: f64,
    outputs: Vec<ManifestEntry>,
}

/// Path of the manifest written next to `out`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}

/// Write `table` to `out` (or stdout) and, for files, its manifest.
///
/// The manifest carries the wall time, so only the table itself is
/// byte-reproducible.
pub fn emit(
    table: &Table,
    format: Format,
    out: Option<&Path>,
    arguments: &[String],
    started: Instant,
) -> Result<()> {
    let bytes = table.encode(format)?;
    let Some(path) = out else {
        std::io::stdout().lock().write_all(&bytes)?;
        return Ok(());
    };
    fs::write(path, &bytes)?;
    let manifest = Manifest {
        tool: "xychain",
        version: env!("CARGO_PKG_VERSION"),
        arguments,
        wall_time_s: started.elapsed().as_secs_f64(),
        outputs: vec![ManifestEntry {
            path: path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default(),
            kind: table.kind,
            format: match format {
                Format::Csv => "csv",
                Format::Json => "json",
            },
            rows: table.rows.len(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        }],
    };
    let mut text = serde_json::to_vec_pretty(&manifest)?;
    text.push(b'\n');
    fs::write(manifest_path(path), text)?;
    Ok(())
}
