//! Plain-text matrix/vector I/O and the decimal formatting used by every
//! exported record.
//!
//! The dense-matrix text format is one whitespace-separated row per line;
//! blank lines and lines starting with `#` are ignored. A vector is a
//! single-column matrix. All floating-point output uses 17 significant
//! digits so that values round-trip exactly.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use std::fmt::Write as _;
use std::path::Path;

/// Format a float with 17 significant digits, locale-independent.
pub fn fmt_g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Parse the dense-matrix text format.
pub fn parse_dense_matrix(text: &str) -> Result<DMatrix<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for tok in line.split_whitespace() {
            let v: f64 = tok.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                message: format!("invalid number `{tok}`"),
            })?;
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected {} columns, got {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "empty matrix file".into(),
        });
    }
    let (nr, nc) = (rows.len(), rows[0].len());
    Ok(DMatrix::from_fn(nr, nc, |i, j| rows[i][j]))
}

/// Read a dense matrix from a file.
pub fn read_dense_matrix(path: &Path) -> Result<DMatrix<f64>> {
    parse_dense_matrix(&std::fs::read_to_string(path)?)
}

/// Render a matrix in the dense text format.
pub fn format_dense_matrix(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if j > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{}", fmt_g17(m[(i, j)]));
        }
        out.push('\n');
    }
    out
}

/// Write a vector as a single-column matrix file.
pub fn write_vector(path: &Path, v: &DVector<f64>) -> Result<()> {
    let m = DMatrix::from_column_slice(v.len(), 1, v.as_slice());
    std::fs::write(path, format_dense_matrix(&m))?;
    Ok(())
}

/// Read a vector (single-column matrix file).
pub fn read_vector(path: &Path) -> Result<DVector<f64>> {
    let m = read_dense_matrix(path)?;
    if m.ncols() != 1 {
        return Err(Error::Parse {
            line: 0,
            message: format!("expected a single-column vector file, got {} columns", m.ncols()),
        });
    }
    Ok(DVector::from_column_slice(m.column(0).as_slice()))
}
