//! Field files (CSV plus a JSON metadata sidecar) and reports.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use weno_core::mesh::Grid;
use weno_core::run::Snapshot;

use crate::CliError;

/// Version of the field-file layout, bumped on any column or sidecar change.
pub const SCHEMA_VERSION: u32 = 1;

/// Metadata stored next to every field file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldMeta {
    pub schema_version: u32,
    pub problem: String,
    pub scheme: String,
    pub domain_x: [f64; 2],
    pub domain_y: Option<[f64; 2]>,
    pub n: usize,
    pub ny: Option<usize>,
    pub t: f64,
    pub steps: usize,
    pub columns: Vec<String>,
    pub config_hash: String,
}

/// Formats with 17 significant digits, enough to round-trip any f64.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// Node coordinates followed by the named columns, one row per node.
pub fn field_table(grid: &Grid<f64>, columns: &[(String, Vec<f64>)]) -> (Vec<String>, Vec<Vec<f64>>) {
    let nx = grid.nx();
    let ny = grid.ny();
    let mut header = vec!["x".to_string()];
    if grid.is_2d() {
        header.push("y".to_string());
    }
    header.extend(columns.iter().map(|(name, _)| name.clone()));
    let rows = (0..nx * ny)
        .map(|k| {
            let (i, j) = ((k % nx) as isize, (k / nx) as isize);
            let mut row = vec![grid.xc(i)];
            if grid.is_2d() {
                row.push(grid.yc(j));
            }
            row.extend(columns.iter().map(|(_, v)| v[k]));
            row
        })
        .collect();
    (header, rows)
}

/// Writes a numeric table as CSV.
pub fn write_table(path: &Path, header: &[String], rows: &[Vec<f64>]) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|&v| format_value(v)))?;
    }
    w.flush()?;
    Ok(())
}

/// Snapshot columns with owned names.
pub fn snapshot_columns(s: &Snapshot<f64>) -> Vec<(String, Vec<f64>)> {
    s.columns()
        .into_iter()
        .map(|(n, v)| (n.to_string(), v))
        .collect()
}

/// Writes `snapshot` as CSV plus `<path>.meta.json`; returns both paths.
pub fn write_field(
    snapshot: &Snapshot<f64>,
    grid: &Grid<f64>,
    path: &Path,
    meta: &FieldMeta,
) -> Result<Vec<PathBuf>, CliError> {
    let (header, rows) = field_table(grid, &snapshot_columns(snapshot));
    write_table(path, &header, &rows)?;
    let meta_path = sidecar_path(path);
    write_json(&meta_path, meta)?;
    Ok(vec![path.to_path_buf(), meta_path])
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Pretty JSON with a trailing newline.
pub fn write_json<S: Serialize>(path: &Path, value: &S) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Reads a CSV written by [`write_table`] back into its header and rows.
pub fn read_table(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>), CliError> {
    let mut r = csv::Reader::from_path(path)?;
    let header = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| CliError::Io(format!("{}: bad number {s:?}", path.display())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok((header, rows))
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))
}
