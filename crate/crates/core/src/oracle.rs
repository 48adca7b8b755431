//! Brute-force dense reference implementations.
//!
//! Nothing here touches the closed-form code in [`crate::ops`]; the routines
//! work on plain [`DenseMatrix`] values with textbook algorithms (Bareiss
//! elimination, Gauss-Jordan, Faddeev-LeVerrier, cyclic Jacobi) so that
//! agreement with the closed forms is real evidence.

use std::any::Any;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;
use crate::error::{LbandError, Result, SingularCause};
use crate::ops::{DefinitenessClass, Polynomial};
use crate::scalar::{sign_power, Scalar, ToleranceConfig};

/// Default sweep budget for [`dense_eigenvalues`].
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Fraction-free (Bareiss) determinant with largest-magnitude row pivoting.
/// Exact in rational mode, where rows are first scaled to integers so the
/// elimination runs on `BigInt` without any gcd normalization.
pub fn dense_determinant<S: Scalar>(m: &DenseMatrix<S>) -> S {
    if let Some(q) = (m as &dyn Any).downcast_ref::<DenseMatrix<BigRational>>() {
        let det: Box<dyn Any> = Box::new(rational_determinant(q));
        return *det.downcast::<S>().expect("scalar type is BigRational");
    }
    bareiss(m)
}

fn bareiss<S: Scalar>(m: &DenseMatrix<S>) -> S {
    let n = m.dim();
    if n == 0 {
        return S::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = S::one();
    for k in 0..n - 1 {
        let Some(p) = a.pivot_row(k, k) else {
            return S::zero();
        };
        if p != k {
            a.swap_rows(k, p);
            negate = !negate;
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            let lead = a[(i, k)].clone();
            for j in k + 1..n {
                let v = (a[(i, j)].clone() * pivot.clone() - lead.clone() * a[(k, j)].clone()) / prev.clone();
                a[(i, j)] = v;
            }
        }
        prev = pivot;
    }
    let det = a[(n - 1, n - 1)].clone();
    if negate {
        -det
    } else {
        det
    }
}

fn rational_determinant(m: &DenseMatrix<BigRational>) -> BigRational {
    let mut scale = BigInt::one();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m.dim());
    for row in m.rows() {
        let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        rows.push(row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect());
        scale *= lcm;
    }
    BigRational::new(integer_bareiss(rows), scale)
}

/// Bareiss elimination on integers; every division is exact.
fn integer_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(k, p);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * &pivot_row[k] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot_row[k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Gauss-Jordan inverse with largest-magnitude pivoting.
pub fn dense_inverse<S: Scalar>(m: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    let n = m.dim();
    let tol = ToleranceConfig::default();
    let mut a = m.clone();
    let mut inv = DenseMatrix::<S>::identity(n);
    for col in 0..n {
        let p = match a.pivot_row(col, col) {
            Some(p) if S::EXACT || !a[(p, col)].approx_zero(&tol) => p,
            _ => return Err(LbandError::Singular(SingularCause::NoPivot { column: col + 1 })),
        };
        a.swap_rows(col, p);
        inv.swap_rows(col, p);
        let pivot = a[(col, col)].clone();
        for j in 0..n {
            a[(col, j)] = a[(col, j)].clone() / pivot.clone();
            inv[(col, j)] = inv[(col, j)].clone() / pivot.clone();
        }
        for r in 0..n {
            if r == col || a[(r, col)].is_zero() {
                continue;
            }
            let factor = a[(r, col)].clone();
            for j in 0..n {
                a[(r, j)] = a[(r, j)].clone() - factor.clone() * a[(col, j)].clone();
                inv[(r, j)] = inv[(r, j)].clone() - factor.clone() * inv[(col, j)].clone();
            }
        }
    }
    Ok(inv)
}

/// Faddeev-LeVerrier coefficients of `det(λI - M)`.
pub fn dense_charpoly<S: Scalar>(m: &DenseMatrix<S>) -> Polynomial<S> {
    let n = m.dim();
    let mut c = vec![S::zero(); n + 1];
    c[n] = S::one();
    // running product A * M_k; M_1 = I so A * M_1 = A
    let mut am = m.clone();
    for k in 1..=n {
        c[n - k] = -am.trace() / S::from_i64(k as i64);
        if k == n {
            break;
        }
        let mut next = am;
        for i in 0..n {
            next[(i, i)] = next[(i, i)].clone() + c[n - k].clone();
        }
        am = m.matmul(&next).expect("square operands");
    }
    Polynomial::new(c)
}

/// Determinant of `M` with one-based `row` and `col` removed.
pub fn dense_minor<S: Scalar>(m: &DenseMatrix<S>, row: usize, col: usize) -> Result<S> {
    if m.dim() < 2 {
        return Err(LbandError::TooSmall { min: 2, n: m.dim() });
    }
    Ok(dense_determinant(&m.delete(row, col)?))
}

pub fn dense_cofactor<S: Scalar>(m: &DenseMatrix<S>, row: usize, col: usize) -> Result<S> {
    Ok(sign_power::<S>(row + col) * dense_minor(m, row, col)?)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending. Iterates until the off-diagonal Frobenius mass drops below
/// `zero_tol * max(1, ||M||_F)`.
pub fn dense_eigenvalues(m: &DenseMatrix<f64>, tol: &ToleranceConfig) -> Result<Vec<f64>> {
    dense_eigenvalues_with_budget(m, tol, JACOBI_MAX_SWEEPS)
}

pub fn dense_eigenvalues_with_budget(
    m: &DenseMatrix<f64>,
    tol: &ToleranceConfig,
    max_sweeps: usize,
) -> Result<Vec<f64>> {
    m.ensure_symmetric(tol)?;
    let n = m.dim();
    let mut a = m.clone();
    let frobenius = a.rows().flatten().map(|v| v * v).sum::<f64>().sqrt();
    let threshold = tol.zero_tol * frobenius.max(1.0);
    let off_mass = |a: &DenseMatrix<f64>| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)] * a[(i, j)];
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while off_mass(&a) >= threshold {
        if sweeps == max_sweeps {
            return Err(LbandError::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut DenseMatrix<f64>, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.dim();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        a[(k, p)] = new_kp;
        a[(p, k)] = new_kp;
        a[(k, q)] = new_kq;
        a[(q, k)] = new_kq;
    }
    a[(p, p)] -= t * apq;
    a[(q, q)] += t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
}

/// Definiteness read off eigenvalue signs, using the same priority order as
/// the closed-form classifier (strict before semidefinite, positive first).
pub fn classify_by_eigenvalues(eigenvalues: &[f64], zero_tol: f64) -> DefinitenessClass {
    let min = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let max = eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min > zero_tol {
        DefinitenessClass::PositiveDefinite
    } else if min >= -zero_tol {
        DefinitenessClass::PositiveSemiDefinite
    } else if max < -zero_tol {
        DefinitenessClass::NegativeDefinite
    } else if max <= zero_tol {
        DefinitenessClass::NegativeSemiDefinite
    } else {
        DefinitenessClass::Indefinite
    }
}

/// Result of symmetric elimination without pivoting.
#[derive(Debug, Clone, PartialEq)]
pub enum DenseLdl<S> {
    /// No `L D L^T` factorization exists; elimination hit a zero pivot in this
    /// one-based column with a nonzero entry below it.
    Nonexistent { column: usize },
    /// Exactly one factorization exists.
    Unique { l: DenseMatrix<S>, d: Vec<S> },
    /// Infinitely many exist; the free entries of `L` were set to zero.
    NotUnique { l: DenseMatrix<S>, d: Vec<S> },
}

impl<S> DenseLdl<S> {
    pub fn exists(&self) -> bool {
        !matches!(self, Self::Nonexistent { .. })
    }

    pub fn is_unique(&self) -> bool {
        matches!(self, Self::Unique { .. })
    }
}

/// `L D L^T` by column-wise elimination without pivoting. A zero pivot `d_j`
/// forces the entries below it to vanish; when they do, the corresponding
/// column of `L` is free.
pub fn dense_ldl<S: Scalar>(m: &DenseMatrix<S>, tol: &ToleranceConfig) -> DenseLdl<S> {
    let n = m.dim();
    let mut l = DenseMatrix::<S>::identity(n);
    let mut d = vec![S::zero(); n];
    let mut free = false;
    for j in 0..n {
        let mut dj = m[(j, j)].clone();
        for k in 0..j {
            dj = dj - l[(j, k)].clone() * l[(j, k)].clone() * d[k].clone();
        }
        let zero_pivot = dj.approx_zero(tol);
        for i in j + 1..n {
            let mut r = m[(i, j)].clone();
            for k in 0..j {
                r = r - l[(i, k)].clone() * l[(j, k)].clone() * d[k].clone();
            }
            if !zero_pivot {
                l[(i, j)] = r / dj.clone();
            } else if r.approx_zero(tol) {
                free = true;
            } else {
                return DenseLdl::Nonexistent { column: j + 1 };
            }
        }
        d[j] = if zero_pivot { S::zero() } else { dj };
    }
    if free {
        DenseLdl::NotUnique { l, d }
    } else {
        DenseLdl::Unique { l, d }
    }
}

/// Textbook Cholesky, lower factor. Fails when a pivot is not positive or
/// its square root is not representable.
pub fn dense_cholesky<S: Scalar>(m: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    let n = m.dim();
    let mut l = DenseMatrix::<S>::zeros(n);
    for j in 0..n {
        let mut s = m[(j, j)].clone();
        for k in 0..j {
            s = s - l[(j, k)].clone() * l[(j, k)].clone();
        }
        if s <= S::zero() {
            return Err(LbandError::NotPositiveDefinite);
        }
        let root = s.sqrt().ok_or_else(|| LbandError::IrrationalSquareRoot(s.to_text()))?;
        for i in j + 1..n {
            let mut r = m[(i, j)].clone();
            for k in 0..j {
                r = r - l[(i, k)].clone() * l[(j, k)].clone();
            }
            l[(i, j)] = r / root.clone();
        }
        l[(j, j)] = root;
    }
    Ok(l)
}

/// One closed-form versus oracle comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub operation: String,
    pub input: String,
    pub closed_form: String,
    pub oracle: String,
    pub pass: bool,
    pub discrepancy: f64,
}

impl OracleReport {
    /// Compares two value lists. Exact scalars must agree exactly; floats
    /// within `float_tol * max(1, largest magnitude)`.
    pub fn compare<S: Scalar>(
        operation: impl Into<String>,
        input: impl Into<String>,
        closed_form: &[S],
        oracle: &[S],
        float_tol: f64,
    ) -> Self {
        let (pass, discrepancy) = if closed_form.len() != oracle.len() {
            (false, f64::INFINITY)
        } else {
            let disc = closed_form.iter().zip(oracle).map(|(a, b)| a.distance(b)).fold(0.0, f64::max);
            if S::EXACT {
                let equal = closed_form.iter().zip(oracle).all(|(a, b)| a == b);
                (equal, if equal { 0.0 } else { disc.max(f64::MIN_POSITIVE) })
            } else {
                let scale = oracle.iter().map(|v| v.abs().to_f64()).fold(1.0, f64::max);
                (disc <= float_tol * scale, disc)
            }
        };
        Self {
            operation: operation.into(),
            input: input.into(),
            closed_form: render(closed_form),
            oracle: render(oracle),
            pass,
            discrepancy,
        }
    }

    /// A check that is pass/fail by nature, such as a structural predicate.
    pub fn predicate(
        operation: impl Into<String>,
        input: impl Into<String>,
        closed_form: impl Into<String>,
        oracle: impl Into<String>,
        pass: bool,
    ) -> Self {
        Self {
            operation: operation.into(),
            input: input.into(),
            closed_form: closed_form.into(),
            oracle: oracle.into(),
            pass,
            discrepancy: if pass { 0.0 } else { 1.0 },
        }
    }
}

fn render<S: Scalar>(values: &[S]) -> String {
    let parts: Vec<String> = values.iter().map(Scalar::to_text).collect();
    format!("[{}]", parts.join(","))
}
