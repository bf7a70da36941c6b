//! Matrix file formats shared by the library and the command-line tool.
//!
//! JSON: `{"n": <dim>, "re": [[...]], "im": [[...]]}`, row-major, square.
//! CSV: one row per line, cells `a+bi` with no spaces (e.g. `1.5e0-2e-1i`).
//! Floats are written with 17 significant digits so output is byte-stable
//! across runs.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::CMat;

#[derive(Debug, Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// Fixed-width float formatting: 17 significant digits, scientific.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One complex cell, `a+bi` with no spaces.
pub fn format_complex(z: Complex64) -> String {
    format!("{:.16e}{:+.16e}i", z.re, z.im)
}

/// Parse `a+bi` (also accepts a bare real `a` or pure imaginary `bi`).
pub fn parse_complex(cell: &str) -> Result<Complex64, Error> {
    let s = cell.trim();
    if s.is_empty() {
        return Err(Error::Format("empty complex cell".into()));
    }
    let bad = |_| Error::Format(format!("malformed complex cell {s:?}"));
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // split at the last sign that is not a leading sign and not part of
        // an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let b = bytes[k];
            if (b == b'+' || b == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re: f64 = body[..k].parse().map_err(bad)?;
                let im_str = &body[k..];
                let im: f64 = if im_str == "+" || im_str == "-" {
                    format!("{im_str}1").parse().map_err(bad)?
                } else {
                    im_str.parse().map_err(bad)?
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = match body {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    _ => body.parse().map_err(bad)?,
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = s.parse().map_err(bad)?;
        Ok(Complex64::new(re, 0.0))
    }
}

pub fn matrix_to_json_string(m: &CMat) -> Result<String, Error> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let re: Vec<Vec<f64>> = m.rows().into_iter().map(|r| r.iter().map(|z| z.re).collect()).collect();
    let im: Vec<Vec<f64>> = m.rows().into_iter().map(|r| r.iter().map(|z| z.im).collect()).collect();
    Ok(serde_json::to_string_pretty(&MatrixJson { n, re, im })? + "\n")
}

pub fn matrix_from_json_str(s: &str) -> Result<CMat, Error> {
    let parsed: MatrixJson = serde_json::from_str(s)?;
    let n = parsed.n;
    if parsed.re.len() != n || parsed.im.len() != n {
        return Err(Error::Format(format!(
            "declared n = {n} but got {} re rows and {} im rows",
            parsed.re.len(),
            parsed.im.len()
        )));
    }
    let mut m = CMat::zeros((n, n));
    for (i, (rr, ir)) in parsed.re.iter().zip(parsed.im.iter()).enumerate() {
        if rr.len() != n || ir.len() != n {
            return Err(Error::Format(format!("row {i} has wrong length")));
        }
        for j in 0..n {
            if !rr[j].is_finite() || !ir[j].is_finite() {
                return Err(Error::Format(format!("non-finite entry at ({i}, {j})")));
            }
            m[(i, j)] = Complex64::new(rr[j], ir[j]);
        }
    }
    Ok(m)
}

pub fn matrix_to_csv_string(m: &CMat) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|&z| format_complex(z)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_from_csv_str(s: &str) -> Result<CMat, Error> {
    let rows: Vec<Vec<Complex64>> = s
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(parse_complex).collect())
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if n == 0 {
        return Err(Error::Format("empty matrix file".into()));
    }
    let mut m = CMat::zeros((n, n));
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Format(format!(
                "row {i} has {} cells, expected {n} (matrix must be square)",
                row.len()
            )));
        }
        for (j, &z) in row.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::Format(format!("non-finite entry at ({i}, {j})")));
            }
            m[(i, j)] = z;
        }
    }
    Ok(m)
}

/// Read a matrix, choosing the format by extension (`.json` or `.csv`).
pub fn read_matrix(path: &Path) -> Result<CMat, Error> {
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => matrix_from_json_str(&text),
        Some("csv") => matrix_from_csv_str(&text),
        other => Err(Error::Format(format!(
            "unsupported matrix file extension {other:?} (use .json or .csv)"
        ))),
    }
}

/// Write a matrix, choosing the format by extension.
pub fn write_matrix(path: &Path, m: &CMat) -> Result<(), Error> {
    let text = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => matrix_to_json_string(m)?,
        Some("csv") => matrix_to_csv_string(m),
        other => {
            return Err(Error::Format(format!(
                "unsupported matrix file extension {other:?} (use .json or .csv)"
            )))
        }
    };
    std::fs::write(path, text)?;
    Ok(())
}
