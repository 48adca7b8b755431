//! Randomized closed-form versus oracle checks.

use lband::oracle::{
    classify_by_eigenvalues, dense_charpoly, dense_cholesky, dense_cofactor, dense_determinant, dense_eigenvalues,
    dense_inverse, dense_ldl, dense_minor, DenseLdl, OracleReport,
};
use lband::{
    damped_covariance, damping_vector, damping_vector_lbanded, detect_l_banded, structured_upper, DenseMatrix,
    LBandedMatrix, LbandError, Scalar, ToleranceConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Relative tolerance for float-mode comparisons.
pub const FLOAT_TOLERANCE: f64 = 1e-8;

/// Eigenvalues within this distance of zero count as zero when the
/// eigenvalue oracle classifies definiteness.
pub const EIGEN_ZERO: f64 = 1e-9;

/// Band entries are drawn from `-ENTRY_RANGE..=ENTRY_RANGE`.
const ENTRY_RANGE: i64 = 5;

#[derive(Debug, Clone, Serialize)]
pub struct VerifySummary {
    pub mode: &'static str,
    pub seed: u64,
    pub n_max: usize,
    pub trials: usize,
    pub checks: usize,
    pub failures: usize,
    pub reports: Vec<OracleReport>,
}

/// Independent generator per `(n, trial)`, so each case is reproducible on
/// its own.
pub fn case_rng(seed: u64, n: usize, trial: usize) -> ChaCha8Rng {
    let mixed = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((n as u64) << 40) ^ trial as u64;
    ChaCha8Rng::seed_from_u64(mixed)
}

/// Short hex digest identifying an input.
pub fn digest(parts: &[&[String]]) -> String {
    let mut hasher = Sha256::new();
    for part in parts {
        hasher.update(part.join(",").as_bytes());
        hasher.update(b";");
    }
    hasher.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn texts<S: Scalar>(v: &[S]) -> Vec<String> {
    v.iter().map(Scalar::to_text).collect()
}

fn flat<S: Scalar>(m: &DenseMatrix<S>) -> Vec<S> {
    m.rows().flat_map(|r| r.iter().cloned()).collect()
}

fn random_ints<S: Scalar>(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<S> {
    (0..n).map(|_| S::from_i64(rng.gen_range(-range..=range))).collect()
}

pub fn verify<S: Scalar>(
    n_max: usize,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<VerifySummary, CliError> {
    if n_max == 0 || trials == 0 {
        return Err(CliError::Usage("verify needs n_max >= 1 and trials >= 1".into()));
    }
    let mut reports = Vec::new();
    for n in 1..=n_max {
        for trial in 0..trials {
            let mut rng = case_rng(seed, n, trial);
            check_case::<S>(n, &mut rng, tol, &mut reports);
        }
    }
    let failures = reports.iter().filter(|r| !r.pass).count();
    Ok(VerifySummary {
        mode: if S::EXACT { "rational" } else { "float" },
        seed,
        n_max,
        trials,
        checks: reports.len(),
        failures,
        reports,
    })
}

struct Recorder<'a> {
    input: String,
    out: &'a mut Vec<OracleReport>,
}

impl Recorder<'_> {
    fn compare<S: Scalar>(&mut self, op: &str, closed: &[S], oracle: &[S]) {
        self.out.push(OracleReport::compare(op, self.input.clone(), closed, oracle, FLOAT_TOLERANCE));
    }

    fn predicate(&mut self, op: &str, closed: impl ToString, oracle: impl ToString) {
        let (c, o) = (closed.to_string(), oracle.to_string());
        let pass = c == o;
        self.out.push(OracleReport::predicate(op, self.input.clone(), c, o, pass));
    }

    fn error(&mut self, op: &str, closed: impl ToString, oracle: impl ToString) {
        self.out.push(OracleReport::predicate(op, self.input.clone(), closed.to_string(), oracle.to_string(), false));
    }
}

fn check_case<S: Scalar>(n: usize, rng: &mut ChaCha8Rng, tol: &ToleranceConfig, out: &mut Vec<OracleReport>) {
    let band: Vec<S> = random_ints(rng, n, ENTRY_RANGE);
    let x: Vec<S> = random_ints(rng, n, ENTRY_RANGE);
    let b: Vec<S> = random_ints(rng, n, ENTRY_RANGE);
    let h: Vec<S> = random_ints(rng, n, ENTRY_RANGE);
    let cov_seed: Vec<S> = random_ints(rng, n * n, 3);
    let input = digest(&[&texts(&band), &texts(&x), &texts(&b), &texts(&h), &texts(&cov_seed)]);
    let mut rec = Recorder { input, out };

    let a = LBandedMatrix::from_band(band).expect("n >= 1").with_tolerance(*tol);
    let dense = a.to_dense();

    rec.compare("det", &[a.determinant()], &[dense_determinant(&dense)]);
    rec.compare("quadform", &[a.quadratic_form(&x).expect("length n")], &[dense.quadratic_form(&x).expect("length n")]);
    rec.compare("square", &flat(&a.square()), &flat(&dense.matmul(&dense).expect("square")));

    let hq = a.left_multiply_structured_upper(&h).expect("length n");
    let hd = structured_upper(&h).matmul(&dense).expect("square");
    match detect_l_banded(&hd, tol) {
        Ok(found) => rec.compare("hprod", hq.band(), found.band()),
        Err(e) => rec.error("hprod", "L-banded", e),
    }

    match dense_eigenvalues(&dense.to_f64(), tol) {
        Ok(eig) => rec.predicate("definiteness", a.classify_definiteness(), classify_by_eigenvalues(&eig, EIGEN_ZERO)),
        Err(e) => rec.error("definiteness", a.classify_definiteness(), e),
    }

    check_ldl(&a, &dense, tol, &mut rec);

    if n >= 2 {
        let m11 = dense_minor(&dense, 1, 1).expect("n >= 2");
        let mut closed = vec![m11];
        closed.extend((3..=n).map(|_| S::zero()));
        let oracle: Vec<S> = (2..=n).map(|k| dense_minor(&dense, 1, k).expect("in range")).collect();
        rec.compare("first-row-minors", &closed, &oracle);
    }

    if a.is_invertible() {
        check_invertible(&a, &dense, &b, &mut rec);
    } else {
        rec.predicate("singular", "singular", if dense_inverse(&dense).is_err() { "singular" } else { "invertible" });
    }

    check_damped_covariance::<S>(n, &cov_seed, tol, &mut rec);
}

fn check_ldl<S: Scalar>(a: &LBandedMatrix<S>, dense: &DenseMatrix<S>, tol: &ToleranceConfig, rec: &mut Recorder) {
    let oracle = dense_ldl(dense, tol);
    rec.predicate("ldl-exists", a.ldl_exists(), oracle.exists());
    if !a.a(a.dim()).approx_zero(tol) {
        rec.predicate("ldl-unique", a.ldl_is_unique(), oracle.is_unique());
    }
    if let Ok(f) = a.ldl_decompose() {
        rec.compare("ldl-reconstruct", &flat(&f.reconstruct()), &flat(dense));
        if let DenseLdl::Unique { l, d } = &oracle {
            rec.compare("ldl-factors", &[flat(&f.dense_l()), f.d().to_vec()].concat(), &[flat(l), d.clone()].concat());
        }
    }
    if a.is_positive_definite() {
        match (a.cholesky_decompose(), dense_cholesky(dense)) {
            (Ok(c), Ok(l)) => rec.compare("cholesky", &flat(&c.to_dense()), &flat(&l)),
            // both sides agree the factor leaves the field
            (Err(LbandError::IrrationalSquareRoot(_)), Err(LbandError::IrrationalSquareRoot(_))) => {}
            (c, o) => rec.error("cholesky", format!("{:?}", c.err()), format!("{:?}", o.err())),
        }
    }
}

fn check_invertible<S: Scalar>(a: &LBandedMatrix<S>, dense: &DenseMatrix<S>, b: &[S], rec: &mut Recorder) {
    let n = a.dim();
    let inv = a.inverse().expect("invertible");
    match dense_inverse(dense) {
        Ok(oracle) => rec.compare("inverse", &flat(&inv.to_dense()), &flat(&oracle)),
        Err(e) => rec.error("inverse", "invertible", e),
    }

    let ones = vec![S::one(); n];
    let row_sums = inv.mul_vec(&ones).expect("length n");
    let mut expected = vec![S::zero(); n];
    expected[n - 1] = S::one() / a.a(n).clone();
    rec.compare("inverse-row-sums", &row_sums, &expected);
    let total = row_sums.iter().fold(S::zero(), |acc, v| acc + v.clone());
    rec.compare("inverse-total", &[total], &[expected[n - 1].clone()]);

    let table = a.cofactor_table().expect("invertible");
    if n >= 2 {
        let mut closed = Vec::new();
        let mut oracle = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                closed.push(table.cofactor(i, j).expect("in range"));
                oracle.push(dense_cofactor(dense, i, j).expect("in range"));
                closed.push(table.minor(i, j).expect("in range"));
                oracle.push(dense_minor(dense, i, j).expect("in range"));
            }
        }
        rec.compare("cofactors", &closed, &oracle);
    }

    let det = a.determinant();
    let subs: Vec<S> = (1..=n).map(|k| table.det_column_substituted(k, b).expect("in range")).collect();
    let oracle: Vec<S> = (1..=n).map(|k| dense_determinant(&dense.replace_column(k, b).expect("in range"))).collect();
    rec.compare("column-substitution", &subs, &oracle);
    let solution: Vec<S> = subs.iter().map(|s| s.clone() / det.clone()).collect();
    rec.compare("cramer", &dense.mul_vec(&solution).expect("length n"), b);

    let p = a.characteristic_polynomial().expect("invertible");
    let q = dense_charpoly(dense);
    rec.compare(
        "charpoly",
        &(0..=n).map(|k| p.coeff(k)).collect::<Vec<_>>(),
        &(0..=n).map(|k| q.coeff(k)).collect::<Vec<_>>(),
    );

    match (damping_vector_lbanded(a), damping_vector(dense)) {
        (Ok(fast), Ok(slow)) => rec.compare("damping-vector", fast.zeta(), slow.zeta()),
        (fast, slow) => rec.error("damping-vector", format!("{:?}", fast.err()), format!("{:?}", slow.err())),
    }
}

/// `V = B^T B + I` is positive definite, so every damping step is defined.
fn check_damped_covariance<S: Scalar>(n: usize, entries: &[S], tol: &ToleranceConfig, rec: &mut Recorder) {
    let b = DenseMatrix::from_fn(n, |i, j| entries[i * n + j].clone());
    let v = b.transpose().matmul(&b).expect("square").add(&DenseMatrix::identity(n)).expect("square");
    match damped_covariance(&v, tol) {
        Ok(w) => match w.band() {
            Some(band) => rec.compare("damped-covariance", band, &w.predicted_band()),
            None => rec.error("damped-covariance", "not L-banded", "L-banded"),
        },
        Err(e) => rec.error("damped-covariance", e, "defined"),
    }
}
