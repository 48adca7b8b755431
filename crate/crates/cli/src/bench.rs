//! Wall-clock scaling of closed forms against dense elimination.

use std::hint::black_box;
use std::str::FromStr;
use std::time::{Duration, Instant};

use lband::oracle::{dense_cholesky, dense_determinant, dense_eigenvalues, dense_inverse, dense_ldl};
use lband::{DenseMatrix, LBandedMatrix, ToleranceConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::ImplChoice;
use crate::error::CliError;

/// Dense variants are skipped above this size.
pub const DENSE_SIZE_CAP: usize = 512;

/// Each timed sample runs the operation often enough to take this long.
const TARGET_BATCH: Duration = Duration::from_millis(2);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchOp {
    Det,
    Inv,
    Quadform,
    Definiteness,
    Ldl,
    Chol,
}

impl BenchOp {
    pub fn name(self) -> &'static str {
        match self {
            Self::Det => "det",
            Self::Inv => "inv",
            Self::Quadform => "quadform",
            Self::Definiteness => "definiteness",
            Self::Ldl => "ldl",
            Self::Chol => "chol",
        }
    }
}

impl FromStr for BenchOp {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "det" => Self::Det,
            "inv" => Self::Inv,
            "quadform" => Self::Quadform,
            "definiteness" => Self::Definiteness,
            "ldl" => Self::Ldl,
            "chol" => Self::Chol,
            other => return Err(CliError::UnsupportedOp(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Implementation {
    ClosedForm,
    DenseOracle,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub operation: &'static str,
    pub n: usize,
    /// Median wall time of one call, in nanoseconds.
    pub nanos: f64,
    pub reps: usize,
    pub implementation: Implementation,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingFit {
    pub operation: &'static str,
    pub implementation: Implementation,
    pub exponent: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub fits: Vec<ScalingFit>,
    /// Dense sizes left out because they exceed [`DENSE_SIZE_CAP`].
    pub skipped: Vec<usize>,
}

impl BenchReport {
    pub fn exponent(&self, implementation: Implementation) -> Option<f64> {
        self.fits.iter().find(|f| f.implementation == implementation).and_then(|f| f.exponent)
    }
}

/// Least-squares slope of `log t` against `log n`. With two sizes this is
/// `log(t2/t1) / log(n2/n1)`.
pub fn scaling_exponent(points: &[(usize, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(n, t)| ((n as f64).ln(), t.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Strictly decreasing positive band with consecutive gaps of at least 0.1.
pub fn well_conditioned_band(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut band = vec![0.0; n];
    let mut acc = 0.0;
    for v in band.iter_mut().rev() {
        acc += 0.1 + rng.gen::<f64>();
        *v = acc;
    }
    band
}

/// Median per-call time over `reps` batches, after one discarded warmup
/// that also sizes the batch.
fn median_nanos(reps: usize, mut f: impl FnMut()) -> f64 {
    let start = Instant::now();
    f();
    let once = start.elapsed().max(Duration::from_nanos(1));
    let batch = (TARGET_BATCH.as_nanos() / once.as_nanos()).clamp(1, 1_000_000) as u32;
    let mut samples: Vec<f64> = (0..reps)
        .map(|_| {
            let start = Instant::now();
            for _ in 0..batch {
                f();
            }
            start.elapsed().as_nanos() as f64 / f64::from(batch)
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    samples[samples.len() / 2]
}

fn time_closed(op: BenchOp, a: &LBandedMatrix<f64>, x: &[f64], reps: usize) -> f64 {
    // factor outputs go into one buffer, so large sizes do not also time the
    // allocator handing back fresh pages on every call
    let mut out = DenseMatrix::zeros(if matches!(op, BenchOp::Ldl | BenchOp::Chol) { a.dim() } else { 0 });
    match op {
        BenchOp::Det => median_nanos(reps, || {
            black_box(black_box(a).determinant());
        }),
        BenchOp::Inv => median_nanos(reps, || {
            black_box(black_box(a).inverse().ok());
        }),
        BenchOp::Quadform => median_nanos(reps, || {
            black_box(black_box(a).quadratic_form(x).ok());
        }),
        BenchOp::Definiteness => median_nanos(reps, || {
            black_box(black_box(a).classify_definiteness());
        }),
        // the factor is materialized, as a dense factorization would be
        BenchOp::Ldl => median_nanos(reps, || {
            let f = black_box(a).ldl_decompose().expect("positive band");
            f.fill_dense_l(&mut out).expect("matching dimension");
            black_box(&out);
        }),
        BenchOp::Chol => median_nanos(reps, || {
            let c = black_box(a).cholesky_decompose().expect("positive definite band");
            c.fill_dense(&mut out).expect("matching dimension");
            black_box(&out);
        }),
    }
}

fn time_dense(op: BenchOp, m: &DenseMatrix<f64>, x: &[f64], reps: usize) -> f64 {
    let tol = ToleranceConfig::default();
    match op {
        BenchOp::Det => median_nanos(reps, || {
            black_box(dense_determinant(black_box(m)));
        }),
        BenchOp::Inv => median_nanos(reps, || {
            black_box(dense_inverse(black_box(m)).ok());
        }),
        BenchOp::Quadform => median_nanos(reps, || {
            black_box(black_box(m).quadratic_form(x).ok());
        }),
        BenchOp::Definiteness => median_nanos(reps, || {
            black_box(dense_eigenvalues(black_box(m), &tol).ok());
        }),
        BenchOp::Ldl => median_nanos(reps, || {
            black_box(dense_ldl(black_box(m), &tol));
        }),
        BenchOp::Chol => median_nanos(reps, || {
            black_box(dense_cholesky(black_box(m)).ok());
        }),
    }
}

pub fn bench(op: BenchOp, sizes: &[usize], reps: usize, which: ImplChoice, seed: u64) -> Result<BenchReport, CliError> {
    if sizes.is_empty() || sizes.contains(&0) || reps == 0 {
        return Err(CliError::Usage("bench needs positive sizes and reps".into()));
    }
    let closed = matches!(which, ImplChoice::ClosedForm | ImplChoice::Both);
    let dense = matches!(which, ImplChoice::DenseOracle | ImplChoice::Both);
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for &n in sizes {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        let a = LBandedMatrix::from_band(well_conditioned_band(n, &mut rng)).expect("n >= 1");
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if closed {
            let nanos = time_closed(op, &a, &x, reps);
            records.push(BenchRecord {
                operation: op.name(),
                n,
                nanos,
                reps,
                implementation: Implementation::ClosedForm,
            });
        }
        if dense {
            if n > DENSE_SIZE_CAP {
                skipped.push(n);
            } else {
                let nanos = time_dense(op, &a.to_dense(), &x, reps);
                records.push(BenchRecord {
                    operation: op.name(),
                    n,
                    nanos,
                    reps,
                    implementation: Implementation::DenseOracle,
                });
            }
        }
    }
    let fit = |implementation| {
        let points: Vec<(usize, f64)> =
            records.iter().filter(|r| r.implementation == implementation).map(|r| (r.n, r.nanos)).collect();
        ScalingFit { operation: op.name(), implementation, exponent: scaling_exponent(&points) }
    };
    let mut fits = Vec::new();
    if closed {
        fits.push(fit(Implementation::ClosedForm));
    }
    if dense {
        fits.push(fit(Implementation::DenseOracle));
    }
    Ok(BenchReport { records, fits, skipped })
}
