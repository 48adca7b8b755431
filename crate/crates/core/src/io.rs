//! Text formats for bands, vectors and dense matrices.
//!
//! * vectors: one scalar per line (`1.5`, `-2`, `3/2`); blank lines and
//!   lines starting with `#` are skipped;
//! * vectors as JSON: an array of strings or numbers;
//! * dense matrices: CSV without a header, one row per line.
//!
//! Writers use [`Scalar::to_text`], so rational values round-trip exactly.

use serde_json::Value;

use crate::dense::DenseMatrix;
use crate::error::ParseError;
use crate::scalar::{ParseScalarError, Scalar};

pub fn parse_vector<S: Scalar>(text: &str) -> Result<Vec<S>, ParseError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(S::parse_text(line).map_err(|source| ParseError::Scalar { line: idx + 1, source })?);
    }
    if out.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(out)
}

/// Parses a JSON array. Error line numbers are one-based array positions.
pub fn parse_json_vector<S: Scalar>(text: &str) -> Result<Vec<S>, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let Value::Array(items) = value else {
        return Err(ParseError::Json("expected an array".into()));
    };
    if items.is_empty() {
        return Err(ParseError::Empty);
    }
    items
        .iter()
        .enumerate()
        .map(|(idx, item)| {
            let text = match item {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                other => other.to_string(),
            };
            S::parse_text(&text).map_err(|source| ParseError::Scalar { line: idx + 1, source })
        })
        .collect()
}

pub fn parse_dense_csv<S: Scalar>(text: &str) -> Result<DenseMatrix<S>, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<S>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| ParseError::Csv(e.to_string()))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let line = record.position().map_or(rows.len() + 1, |p| p.line() as usize);
        let row = record
            .iter()
            .map(|field| S::parse_text(field).map_err(|source| ParseError::Scalar { line, source }))
            .collect::<Result<Vec<S>, _>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(ParseError::Ragged { row: rows.len() + 1, expected: first.len(), found: row.len() });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    if rows.len() != rows[0].len() {
        return Err(ParseError::NotSquare { rows: rows.len(), cols: rows[0].len() });
    }
    DenseMatrix::from_rows(rows).map_err(|e| match e {
        crate::error::LbandError::Parse(p) => p,
        other => ParseError::Csv(other.to_string()),
    })
}

pub fn write_vector<S: Scalar>(values: &[S]) -> String {
    values.iter().map(|v| v.to_text() + "\n").collect()
}

pub fn write_json_vector<S: Scalar>(values: &[S]) -> String {
    serde_json::to_string(&to_json_strings(values)).expect("strings serialize")
}

/// Values as JSON strings in canonical text form.
pub fn to_json_strings<S: Scalar>(values: &[S]) -> Value {
    Value::Array(values.iter().map(|v| Value::String(v.to_text())).collect())
}

pub fn write_dense_csv<S: Scalar>(m: &DenseMatrix<S>) -> String {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for row in m.rows() {
        writer.write_record(row.iter().map(Scalar::to_text)).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

/// Parses one scalar, for command-line arguments.
pub fn parse_scalar<S: Scalar>(text: &str) -> Result<S, ParseScalarError> {
    S::parse_text(text.trim())
}
