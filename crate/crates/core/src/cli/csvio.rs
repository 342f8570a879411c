//! Plain matrix CSV: one matrix row per line, comma separated, no header.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

use crate::types::DenseMatrix;

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("matrix file is empty")]
    Empty,
    #[error("line {line}: expected {expected} fields, found {found}")]
    Ragged {
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: `{field}` is not a number")]
    NotANumber { line: u64, field: String },
    #[error("line {line}: {message}")]
    Malformed { line: u64, message: String },
}

impl CsvError {
    /// 1-based line the error refers to, when there is one.
    pub fn line(&self) -> Option<u64> {
        match self {
            CsvError::Ragged { line, .. }
            | CsvError::NotANumber { line, .. }
            | CsvError::Malformed { line, .. } => Some(*line),
            _ => None,
        }
    }
}

pub fn parse_matrix_csv(text: &str) -> Result<DenseMatrix, CsvError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CsvError::Malformed {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let row = record
            .iter()
            .map(|field| {
                field.parse::<f64>().map_err(|_| CsvError::NotANumber {
                    line,
                    field: field.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(CsvError::Ragged {
                    line,
                    expected: first.len(),
                    found: row.len(),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CsvError::Empty);
    }
    Ok(DenseMatrix::from_rows(&rows).expect("row lengths checked above"))
}

pub fn read_rhs_csv(path: impl AsRef<Path>) -> Result<DenseMatrix, CsvError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| CsvError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_matrix_csv(&text)
}

/// Shortest text that parses back to the same `f64` (at most 17
/// significant digits).
pub fn format_real(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn write_matrix_csv<W: Write>(x: &DenseMatrix, mut out: W) -> io::Result<()> {
    for i in 0..x.rows() {
        let line: Vec<String> = (0..x.cols()).map(|j| format_real(x[(i, j)])).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    out.flush()
}

pub fn write_matrix_csv_file(x: &DenseMatrix, path: impl AsRef<Path>) -> Result<(), CsvError> {
    let path = path.as_ref();
    let io_err = |source| CsvError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = fs::File::create(path).map_err(io_err)?;
    write_matrix_csv(x, io::BufWriter::new(file)).map_err(io_err)
}
