//! Matrix file formats: plain CSV (n rows of n comma-separated decimals) and
//! JSON (`{"n": ..., "data": [row-major]}`). Parsing never validates; feed
//! the result to [`crate::validate_correlation`] or
//! [`crate::CorrelationMatrix::from_square`] afterwards.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::SquareMat;

/// Wire format of a matrix file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Csv,
    Json,
}

/// Pick a format from a file extension; anything but `.json` reads as CSV.
pub fn format_for_path(path: &std::path::Path) -> MatrixFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => MatrixFormat::Json,
        _ => MatrixFormat::Csv,
    }
}

/// Malformed input text, as opposed to a well-formed non-correlation matrix.
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error("{0}")]
    Json(String),
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    data: Vec<f64>,
}

/// Parse `n` rows of `n` comma-separated decimals.
pub fn parse_matrix_csv(text: &str) -> std::result::Result<Vec<Vec<f64>>, ParseError> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: std::result::Result<Vec<f64>, ParseError> = line
            .split(',')
            .map(|cell| {
                cell.trim().parse::<f64>().map_err(|e| ParseError::Csv {
                    line: idx + 1,
                    message: format!("cannot parse {:?}: {e}", cell.trim()),
                })
            })
            .collect();
        rows.push(row?);
    }
    if rows.is_empty() {
        return Err(ParseError::Csv {
            line: 0,
            message: "no rows".into(),
        });
    }
    Ok(rows)
}

/// Parse the JSON object form.
pub fn parse_matrix_json(text: &str) -> std::result::Result<Vec<Vec<f64>>, ParseError> {
    let raw: MatrixJson =
        serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    if raw.n == 0 || raw.data.len() != raw.n * raw.n {
        return Err(ParseError::Json(format!(
            "data length {} does not match n = {}",
            raw.data.len(),
            raw.n
        )));
    }
    Ok(raw.data.chunks(raw.n).map(<[f64]>::to_vec).collect())
}

/// Parse either format into an unvalidated square matrix.
pub fn parse_matrix(text: &str, format: MatrixFormat) -> std::result::Result<SquareMat, IoError> {
    let rows = match format {
        MatrixFormat::Csv => parse_matrix_csv(text)?,
        MatrixFormat::Json => parse_matrix_json(text)?,
    };
    SquareMat::from_rows(rows).map_err(IoError::Shape)
}

/// Parse failure (exit code 2 territory) versus shape failure (exit code 1).
#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Shape(Error),
}

/// Twelve significant digits, enough that everything downstream of a file
/// round trip agrees to well below the reporting tolerances.
pub fn fmt_sig12(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn write_matrix_csv(m: &SquareMat) -> String {
    let n = m.n();
    let mut out = String::new();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| fmt_sig12(m.get(i, j))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_matrix_json(m: &SquareMat) -> String {
    let raw = MatrixJson {
        n: m.n(),
        data: m.data().to_vec(),
    };
    let mut s = serde_json::to_string(&raw).expect("matrix serialises");
    s.push('\n');
    s
}

/// Serialise in the requested format.
pub fn write_matrix(m: &SquareMat, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::Csv => write_matrix_csv(m),
        MatrixFormat::Json => write_matrix_json(m),
    }
}
