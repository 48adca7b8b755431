//! Single-operation subcommands, generic over the scalar mode.

use std::path::Path;

use lband::io::{parse_dense_csv, parse_json_vector, parse_vector};
use lband::oracle::dense_charpoly;
use lband::{damped_covariance, damping_vector, LBandedMatrix, LbandError, Scalar, ToleranceConfig};
use serde_json::{json, Value};

use crate::args::Command;
use crate::error::CliError;
use crate::render;

pub struct Context {
    pub tol: ToleranceConfig,
    pub json_vectors: bool,
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })
}

fn read_vector<S: Scalar>(ctx: &Context, path: &Path) -> Result<Vec<S>, CliError> {
    let text = read_text(path)?;
    let parsed = if ctx.json_vectors { parse_json_vector(&text) } else { parse_vector(&text) };
    parsed.map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

fn read_band<S: Scalar>(ctx: &Context, path: &Path) -> Result<LBandedMatrix<S>, CliError> {
    Ok(LBandedMatrix::from_band(read_vector(ctx, path)?)?.with_tolerance(ctx.tol))
}

/// Runs one operation subcommand. `verify` and `bench` are handled by the
/// caller.
pub fn execute<S: Scalar>(cmd: &Command, ctx: &Context) -> Result<Value, CliError> {
    let value = match cmd {
        Command::Det(b) => {
            let a = read_band::<S>(ctx, &b.band)?;
            json!({ "det": render::scalar(&a.determinant()) })
        }
        Command::Inv(b) => {
            let inv = read_band::<S>(ctx, &b.band)?.inverse()?;
            json!({ "diag": render::vector(&inv.diag), "offdiag": render::vector(&inv.offdiag) })
        }
        Command::Quadform { band, x } => {
            let a = read_band::<S>(ctx, &band.band)?;
            let x = read_vector::<S>(ctx, x)?;
            json!({ "value": render::scalar(&a.quadratic_form(&x)?) })
        }
        Command::Definiteness(b) => {
            let a = read_band::<S>(ctx, &b.band)?;
            json!({ "class": a.classify_definiteness().name() })
        }
        Command::Ldl(b) => {
            let a = read_band::<S>(ctx, &b.band)?;
            let f = a.ldl_decompose()?;
            json!({
                "l": render::matrix(&f.dense_l()),
                "d": render::vector(f.d()),
                "unique": a.ldl_is_unique(),
            })
        }
        Command::Chol(b) => {
            let c = read_band::<S>(ctx, &b.band)?.cholesky_decompose()?;
            json!({ "l": render::matrix(&c.to_dense()) })
        }
        Command::Cofactor { band, row, col } => {
            let table = read_band::<S>(ctx, &band.band)?.cofactor_table()?;
            match (row, col) {
                (Some(i), Some(j)) => json!({
                    "cofactor": render::scalar(&table.cofactor(*i, *j)?),
                    "minor": render::scalar(&table.minor(*i, *j)?),
                }),
                _ => {
                    if table.dim() < 2 {
                        return Err(LbandError::TooSmall { min: 2, n: table.dim() }.into());
                    }
                    let m = table.cofactor_matrix();
                    json!({ "diag": render::vector(&m.diag), "offdiag": render::vector(&m.offdiag) })
                }
            }
        }
        Command::Colsub { band, k, b } => {
            let a = read_band::<S>(ctx, &band.band)?;
            let b = read_vector::<S>(ctx, b)?;
            json!({ "det": render::scalar(&a.det_column_substituted(*k, &b)?) })
        }
        Command::Charpoly { band, dense_fallback } => {
            let a = read_band::<S>(ctx, &band.band)?;
            match a.characteristic_polynomial() {
                Ok(p) => json!({ "coefficients": render::vector(p.coeffs()), "method": "recurrence" }),
                Err(e) if e.is_singular() && *dense_fallback => {
                    let p = dense_charpoly(&a.to_dense());
                    json!({ "coefficients": render::vector(p.coeffs()), "method": "dense" })
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Hprod { band, h } => {
            let a = read_band::<S>(ctx, &band.band)?;
            let h = read_vector::<S>(ctx, h)?;
            json!({ "band": render::vector(a.left_multiply_structured_upper(&h)?.band()) })
        }
        Command::Square(b) => {
            let a = read_band::<S>(ctx, &b.band)?;
            json!({ "matrix": render::matrix(&a.square()) })
        }
        Command::Damp { matrix, covariance } => {
            let text = read_text(matrix)?;
            let v = parse_dense_csv::<S>(&text).map_err(|source| CliError::Parse { path: matrix.clone(), source })?;
            let z = damping_vector(&v)?;
            let mut out = json!({ "zeta": render::vector(z.zeta()), "normalizer": render::scalar(z.normalizer()) });
            if *covariance {
                let w = damped_covariance(&v, &ctx.tol)?;
                out["covariance"] = render::matrix(w.matrix());
                out["l_banded"] = Value::Bool(w.band().is_some());
                out["band"] = w.band().map_or(Value::Null, render::vector);
                out["predicted_band"] = render::vector(&w.predicted_band());
                out["deviation"] = render::float(w.deviation());
            }
            out
        }
        Command::Verify { .. } | Command::Bench { .. } => unreachable!("dispatched by run"),
    };
    Ok(value)
}
