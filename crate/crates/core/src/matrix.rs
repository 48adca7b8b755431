//! The L-banded matrix type.
//!
//! An `n x n` L-banded matrix has entry `(i, j)` equal to `a_{max(i, j)}`, so
//! the band vector `[a_1, ..., a_n]` describes it completely:
//!
//! ```text
//! a1 a2 a3 a4
//! a2 a2 a3 a4
//! a3 a3 a3 a4
//! a4 a4 a4 a4
//! ```
//!
//! All public indices are one-based.

use thiserror::Error;

use crate::dense::DenseMatrix;
use crate::error::{LbandError, Result};
use crate::scalar::{Scalar, ToleranceConfig};

#[derive(Debug, Clone)]
pub struct LBandedMatrix<S> {
    band: Vec<S>,
    tol: ToleranceConfig,
}

/// Outcome of [`detect_l_banded`] when the matrix has no L-band structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("not L-banded: entry ({row}, {col}) differs from diagonal entry {diag}")]
pub struct NotLBanded {
    pub row: usize,
    pub col: usize,
    pub diag: usize,
}

impl<S: Scalar> LBandedMatrix<S> {
    pub fn from_band(band: Vec<S>) -> Result<Self> {
        if band.is_empty() {
            return Err(LbandError::EmptyBand);
        }
        Ok(Self { band, tol: ToleranceConfig::default() })
    }

    /// Replaces the tolerance used for float-mode equality and zero tests.
    pub fn with_tolerance(mut self, tol: ToleranceConfig) -> Self {
        self.tol = tol;
        self
    }

    pub fn tolerance(&self) -> &ToleranceConfig {
        &self.tol
    }

    pub fn dim(&self) -> usize {
        self.band.len()
    }

    pub fn band(&self) -> &[S] {
        &self.band
    }

    pub fn into_band(self) -> Vec<S> {
        self.band
    }

    /// One-based band entry `a_k`.
    pub fn a(&self, k: usize) -> &S {
        &self.band[k - 1]
    }

    pub fn entry(&self, i: usize, j: usize) -> Result<&S> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(&self.band[i.max(j) - 1])
    }

    pub fn to_dense(&self) -> DenseMatrix<S> {
        DenseMatrix::from_fn(self.dim(), |i, j| self.band[i.max(j)].clone())
    }

    /// L-banded matrix with band `[a_1, ..., a_k]`.
    pub fn leading_principal_submatrix(&self, k: usize) -> Result<Self> {
        self.check_index(k)?;
        Ok(Self { band: self.band[..k].to_vec(), tol: self.tol })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LBandedMatrix<T> {
        LBandedMatrix { band: self.band.iter().map(f).collect(), tol: self.tol }
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.dim() {
            return Err(LbandError::IndexOutOfRange { index, n: self.dim() });
        }
        Ok(())
    }

    pub(crate) fn check_len(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(LbandError::DimensionMismatch { expected: self.dim(), found });
        }
        Ok(())
    }
}

impl<S: PartialEq> PartialEq for LBandedMatrix<S> {
    fn eq(&self, other: &Self) -> bool {
        self.band == other.band
    }
}

/// Recovers the band of a dense matrix, or the first entry (row-major) that
/// breaks the `M[i][j] = M[max][max]` pattern.
pub fn detect_l_banded<S: Scalar>(
    m: &DenseMatrix<S>,
    tol: &ToleranceConfig,
) -> std::result::Result<LBandedMatrix<S>, NotLBanded> {
    let n = m.dim();
    for i in 0..n {
        for j in 0..n {
            let t = i.max(j);
            if !m[(i, j)].approx_eq(&m[(t, t)], tol) {
                return Err(NotLBanded { row: i + 1, col: j + 1, diag: t + 1 });
            }
        }
    }
    let band = (0..n).map(|k| m[(k, k)].clone()).collect();
    Ok(LBandedMatrix { band, tol: *tol })
}

/// Largest `|M[i][j] - M[max][max]|` over all entries.
pub fn l_band_deviation<S: Scalar>(m: &DenseMatrix<S>) -> f64 {
    let n = m.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let t = i.max(j);
            worst = worst.max(m[(i, j)].distance(&m[(t, t)]));
        }
    }
    worst
}

/// `sum_m c_m A_m`, computed on the band vectors.
pub fn linear_combination<S: Scalar>(terms: &[(S, &LBandedMatrix<S>)]) -> Result<LBandedMatrix<S>> {
    let (_, first) = terms.first().ok_or(LbandError::EmptyBand)?;
    let n = first.dim();
    let mut band = vec![S::zero(); n];
    for (c, m) in terms {
        if m.dim() != n {
            return Err(LbandError::DimensionMismatch { expected: n, found: m.dim() });
        }
        for (acc, a) in band.iter_mut().zip(m.band()) {
            *acc = acc.clone() + c.clone() * a.clone();
        }
    }
    Ok(LBandedMatrix { band, tol: first.tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use num_rational::BigRational;

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_i64(x)).collect()
    }

    fn lb(v: &[i64]) -> LBandedMatrix<BigRational> {
        LBandedMatrix::from_band(ints(v)).unwrap()
    }

    fn dense(rows: &[&[i64]]) -> DenseMatrix<BigRational> {
        DenseMatrix::from_rows(rows.iter().map(|r| ints(r)).collect()).unwrap()
    }

    #[test]
    fn from_band_pattern() {
        assert_eq!(lb(&[5]).to_dense(), dense(&[&[5]]));
        assert_eq!(lb(&[3, 2, 1]).to_dense(), dense(&[&[3, 2, 1], &[2, 2, 1], &[1, 1, 1]]));
        assert_eq!(lb(&[1, 1]).to_dense(), dense(&[&[1, 1], &[1, 1]]));
        assert_eq!(LBandedMatrix::<f64>::from_band(vec![]).unwrap_err(), LbandError::EmptyBand);
    }

    #[test]
    fn entry_uses_max_rule() {
        let a = lb(&[3, 2, 1]);
        assert_eq!(*a.entry(1, 3).unwrap(), ratio(1, 1));
        assert_eq!(*a.entry(2, 1).unwrap(), ratio(2, 1));
        assert_eq!(*lb(&[5]).entry(1, 1).unwrap(), ratio(5, 1));
        assert!(matches!(a.entry(0, 1), Err(LbandError::IndexOutOfRange { index: 0, n: 3 })));
        assert!(matches!(a.entry(1, 4), Err(LbandError::IndexOutOfRange { index: 4, n: 3 })));
    }

    #[test]
    fn detection() {
        let tol = ToleranceConfig::default();
        assert_eq!(detect_l_banded(&dense(&[&[3, 2], &[2, 2]]), &tol).unwrap(), lb(&[3, 2]));
        let err = detect_l_banded(&dense(&[&[3, 0], &[0, 2]]), &tol).unwrap_err();
        assert_eq!((err.row, err.col), (1, 2));
    }

    #[test]
    fn linear_combinations() {
        let one = ratio(1, 1);
        let a = lb(&[3, 2, 1]);
        let ones = lb(&[1, 1, 1]);
        assert_eq!(linear_combination(&[(one.clone(), &a), (ratio(0, 1), &ones)]).unwrap(), a);
        let c = linear_combination(&[(ratio(2, 1), &lb(&[1, 1])), (ratio(3, 1), &lb(&[2, 0]))]).unwrap();
        assert_eq!(c, lb(&[8, 2]));
        // dense elementwise oracle
        let expected =
            lb(&[1, 1]).to_dense().scale(&ratio(2, 1)).add(&lb(&[2, 0]).to_dense().scale(&ratio(3, 1))).unwrap();
        assert_eq!(c.to_dense(), expected);
        let zero = linear_combination(&[(one.clone(), &a), (-one, &a)]).unwrap();
        assert_eq!(zero, lb(&[0, 0, 0]));
        assert!(matches!(
            linear_combination(&[(ratio(1, 1), &a), (ratio(1, 1), &lb(&[1]))]),
            Err(LbandError::DimensionMismatch { expected: 3, found: 1 })
        ));
    }

    #[test]
    fn leading_submatrix() {
        let a = lb(&[3, 2, 1]);
        assert_eq!(a.leading_principal_submatrix(2).unwrap(), lb(&[3, 2]));
        assert_eq!(a.leading_principal_submatrix(3).unwrap(), a);
        assert_eq!(lb(&[5]).leading_principal_submatrix(1).unwrap(), lb(&[5]));
        assert!(a.leading_principal_submatrix(4).is_err());
        assert!(a.leading_principal_submatrix(0).is_err());
    }
}
