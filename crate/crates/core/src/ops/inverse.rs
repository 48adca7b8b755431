//! Determinant, invertibility and the tridiagonal inverse.

use crate::dense::DenseMatrix;
use crate::error::{LbandError, Result, SingularCause};
use crate::matrix::LBandedMatrix;
use crate::scalar::Scalar;

/// `[δ_0, δ_1, ..., δ_n]` with `δ_0 = 0`, `δ_k = 1 / (a_k - a_{k+1})` and
/// `δ_n = 1 / a_n`. Only exists for invertible matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaCoefficients<S> {
    deltas: Vec<S>,
}

impl<S: Scalar> DeltaCoefficients<S> {
    pub fn new(a: &LBandedMatrix<S>) -> Result<Self> {
        if let Some(cause) = a.singular_cause() {
            return Err(LbandError::Singular(cause));
        }
        let band = a.band();
        let n = band.len();
        let mut deltas = Vec::with_capacity(n + 1);
        deltas.push(S::zero());
        for w in band.windows(2) {
            deltas.push(S::one() / (w[0].clone() - w[1].clone()));
        }
        deltas.push(S::one() / band[n - 1].clone());
        Ok(Self { deltas })
    }

    /// `δ_k` for `0 <= k <= n`.
    pub fn get(&self, k: usize) -> &S {
        &self.deltas[k]
    }

    pub fn as_slice(&self) -> &[S] {
        &self.deltas
    }

    /// Matrix dimension `n`.
    pub fn dim(&self) -> usize {
        self.deltas.len() - 1
    }
}

/// `[Δ_1, ..., Δ_n]` with `Δ_k = a_k - a_{k+1}` and `Δ_n = a_n`.
///
/// The suffix sums telescope back to the band: `Σ_{k>=i} Δ_k = a_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaDifferences<S> {
    diffs: Vec<S>,
}

impl<S: Scalar> DeltaDifferences<S> {
    pub fn new(a: &LBandedMatrix<S>) -> Self {
        let band = a.band();
        let mut diffs: Vec<S> = band.windows(2).map(|w| w[0].clone() - w[1].clone()).collect();
        diffs.push(band[band.len() - 1].clone());
        Self { diffs }
    }

    /// One-based `Δ_k`.
    pub fn get(&self, k: usize) -> &S {
        &self.diffs[k - 1]
    }

    pub fn as_slice(&self) -> &[S] {
        &self.diffs
    }
}

/// Symmetric tridiagonal matrix in compact form.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal<S> {
    pub diag: Vec<S>,
    pub offdiag: Vec<S>,
}

impl<S: Scalar> SymTridiagonal<S> {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// One-based entry; zero outside the three central diagonals.
    pub fn get(&self, i: usize, j: usize) -> S {
        match i.abs_diff(j) {
            0 => self.diag[i - 1].clone(),
            1 => self.offdiag[i.min(j) - 1].clone(),
            _ => S::zero(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix<S> {
        DenseMatrix::from_fn(self.dim(), |i, j| self.get(i + 1, j + 1))
    }

    pub fn mul_vec(&self, x: &[S]) -> Result<Vec<S>> {
        let n = self.dim();
        if x.len() != n {
            return Err(LbandError::DimensionMismatch { expected: n, found: x.len() });
        }
        Ok((0..n)
            .map(|i| {
                let mut acc = self.diag[i].clone() * x[i].clone();
                if i > 0 {
                    acc = acc + self.offdiag[i - 1].clone() * x[i - 1].clone();
                }
                if i + 1 < n {
                    acc = acc + self.offdiag[i].clone() * x[i + 1].clone();
                }
                acc
            })
            .collect())
    }
}

impl<S: Scalar> LBandedMatrix<S> {
    /// `|A| = a_n Π_{k<n} (a_k - a_{k+1})`, in O(n).
    pub fn determinant(&self) -> S {
        let band = self.band();
        band.windows(2).fold(band[band.len() - 1].clone(), |acc, w| acc * (w[0].clone() - w[1].clone()))
    }

    /// The first reason the matrix is singular, if any. A zero last entry is
    /// reported before equal neighbours.
    pub fn singular_cause(&self) -> Option<SingularCause> {
        let tol = self.tolerance();
        let band = self.band();
        if band[band.len() - 1].approx_zero(tol) {
            return Some(SingularCause::ZeroLastEntry);
        }
        band.windows(2).position(|w| w[0].approx_eq(&w[1], tol)).map(|k| SingularCause::EqualNeighbors { k: k + 1 })
    }

    /// True iff `a_n != 0` and `a_k != a_{k+1}` for every `k < n`.
    pub fn is_invertible(&self) -> bool {
        self.singular_cause().is_none()
    }

    pub fn delta_coefficients(&self) -> Result<DeltaCoefficients<S>> {
        DeltaCoefficients::new(self)
    }

    pub fn delta_differences(&self) -> DeltaDifferences<S> {
        DeltaDifferences::new(self)
    }

    /// Tridiagonal inverse with diagonal `δ_{i-1} + δ_i` and off-diagonal
    /// `-δ_i`. O(n) time and storage.
    pub fn inverse(&self) -> Result<SymTridiagonal<S>> {
        let deltas = self.delta_coefficients()?;
        Ok(inverse_from_deltas(&deltas))
    }
}

pub(crate) fn inverse_from_deltas<S: Scalar>(deltas: &DeltaCoefficients<S>) -> SymTridiagonal<S> {
    let n = deltas.dim();
    let diag = (1..=n).map(|i| deltas.get(i - 1).clone() + deltas.get(i).clone()).collect();
    let offdiag = (1..n).map(|i| -deltas.get(i).clone()).collect();
    SymTridiagonal { diag, offdiag }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use num_rational::BigRational;

    fn lb(v: &[i64]) -> LBandedMatrix<BigRational> {
        LBandedMatrix::from_band(v.iter().map(|&x| BigRational::from_i64(x)).collect()).unwrap()
    }

    fn q(v: &[(i64, i64)]) -> Vec<BigRational> {
        v.iter().map(|&(p, d)| ratio(p, d)).collect()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(lb(&[5]).determinant(), ratio(5, 1));
        assert_eq!(lb(&[3, 2, 1]).determinant(), ratio(1, 1));
        assert_eq!(lb(&[1, 1, 1]).determinant(), ratio(0, 1));
    }

    #[test]
    fn invertibility_examples() {
        assert!(lb(&[3, 2, 1]).is_invertible());
        assert_eq!(lb(&[3, 3, 1]).singular_cause(), Some(SingularCause::EqualNeighbors { k: 1 }));
        assert_eq!(lb(&[3, 2, 0]).singular_cause(), Some(SingularCause::ZeroLastEntry));
    }

    #[test]
    fn invertibility_respects_float_tolerance() {
        let near_tie = LBandedMatrix::from_band(vec![1.0, 1.0 + 1e-14, 0.5]).unwrap();
        assert!(!near_tie.is_invertible());
        assert!(matches!(near_tie.inverse(), Err(LbandError::Singular(SingularCause::EqualNeighbors { k: 1 }))));
        let gap = LBandedMatrix::from_band(vec![1.0, 1.0 + 1e-6, 0.5]).unwrap();
        assert!(gap.is_invertible());
    }

    #[test]
    fn inverse_examples() {
        let inv = lb(&[5]).inverse().unwrap();
        assert_eq!(inv.diag, q(&[(1, 5)]));
        assert!(inv.offdiag.is_empty());

        let inv = lb(&[2, 1]).inverse().unwrap();
        assert_eq!(inv.diag, q(&[(1, 1), (2, 1)]));
        assert_eq!(inv.offdiag, q(&[(-1, 1)]));

        let inv = lb(&[3, 2, 1]).inverse().unwrap();
        assert_eq!(inv.diag, q(&[(1, 1), (2, 1), (2, 1)]));
        assert_eq!(inv.offdiag, q(&[(-1, 1), (-1, 1)]));
        assert_eq!(inv.get(1, 3), ratio(0, 1));
    }

    #[test]
    fn inverse_of_singular_reports_cause() {
        assert_eq!(lb(&[3, 2, 0]).inverse().unwrap_err(), LbandError::Singular(SingularCause::ZeroLastEntry));
        assert_eq!(lb(&[3, 2, 2]).inverse().unwrap_err(), LbandError::Singular(SingularCause::EqualNeighbors { k: 2 }));
    }

    #[test]
    fn differences_telescope() {
        let a = lb(&[7, -2, 4, 4, 1]);
        let d = a.delta_differences();
        for i in 1..=a.dim() {
            let tail = (i..=a.dim()).fold(ratio(0, 1), |acc, k| acc + d.get(k).clone());
            assert_eq!(&tail, a.a(i));
        }
    }

    #[test]
    fn tridiagonal_mul_vec_matches_dense() {
        let inv = lb(&[4, 1, -2, 3]).inverse().unwrap();
        let x = q(&[(1, 1), (-2, 3), (5, 1), (0, 1)]);
        assert_eq!(inv.mul_vec(&x).unwrap(), inv.to_dense().mul_vec(&x).unwrap());
    }
}
