//! JSON values for scalars, vectors and matrices, plus the plain text form.

use lband::{DenseMatrix, Scalar};
use serde_json::Value;

pub fn scalar<S: Scalar>(v: &S) -> Value {
    Value::String(v.to_text())
}

pub fn vector<S: Scalar>(values: &[S]) -> Value {
    Value::Array(values.iter().map(scalar).collect())
}

pub fn matrix<S: Scalar>(m: &DenseMatrix<S>) -> Value {
    Value::Array(m.rows().map(vector).collect())
}

pub fn float(v: f64) -> Value {
    scalar(&v)
}

/// One `key: value` line per top-level field; nested arrays print one row
/// per line, indented.
pub fn plain(value: &Value) -> String {
    let mut out = String::new();
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                match v {
                    Value::Array(rows) if rows.iter().all(Value::is_array) && !rows.is_empty() => {
                        out.push_str(&format!("{key}:\n"));
                        for row in rows {
                            out.push_str(&format!("  {}\n", inline(row)));
                        }
                    }
                    _ => out.push_str(&format!("{key}: {}\n", inline(v))),
                }
            }
        }
        other => {
            out.push_str(&inline(other));
            out.push('\n');
        }
    }
    out
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(inline).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}
