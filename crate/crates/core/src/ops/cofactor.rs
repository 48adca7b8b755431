//! Minors, cofactors and column-substitution determinants.
//!
//! The cofactor matrix of an invertible symmetric matrix is `|A| A^-1`, so
//! every query reduces to the δ-coefficients and the determinant.

use crate::error::{LbandError, Result};
use crate::matrix::LBandedMatrix;
use crate::ops::inverse::{inverse_from_deltas, DeltaCoefficients, SymTridiagonal};
use crate::scalar::{sign_power, Scalar};

/// Precomputed `δ` and `|A|`; each query afterwards is O(1).
#[derive(Debug, Clone)]
pub struct CofactorTable<S> {
    deltas: DeltaCoefficients<S>,
    det: S,
}

impl<S: Scalar> CofactorTable<S> {
    pub fn new(a: &LBandedMatrix<S>) -> Result<Self> {
        let deltas = a.delta_coefficients()?;
        Ok(Self { deltas, det: a.determinant() })
    }

    pub fn dim(&self) -> usize {
        self.deltas.dim()
    }

    pub fn determinant(&self) -> &S {
        &self.det
    }

    pub fn deltas(&self) -> &DeltaCoefficients<S> {
        &self.deltas
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.dim() {
            return Err(LbandError::IndexOutOfRange { index, n: self.dim() });
        }
        Ok(())
    }

    pub fn cofactor(&self, i: usize, j: usize) -> Result<S> {
        let n = self.dim();
        if n < 2 {
            return Err(LbandError::TooSmall { min: 2, n });
        }
        self.check_index(i)?;
        self.check_index(j)?;
        let d = &self.deltas;
        Ok(match i.abs_diff(j) {
            0 => (d.get(i - 1).clone() + d.get(i).clone()) * self.det.clone(),
            1 => -(d.get(i.min(j)).clone() * self.det.clone()),
            _ => S::zero(),
        })
    }

    /// `M_{i,j} = (-1)^{i+j} C_{i,j}`.
    pub fn minor(&self, i: usize, j: usize) -> Result<S> {
        Ok(sign_power::<S>(i + j) * self.cofactor(i, j)?)
    }

    /// The cofactor matrix, which is also the adjugate, in tridiagonal form.
    pub fn cofactor_matrix(&self) -> SymTridiagonal<S> {
        let inv = inverse_from_deltas(&self.deltas);
        let scale = |v: S| v * self.det.clone();
        SymTridiagonal {
            diag: inv.diag.into_iter().map(scale).collect(),
            offdiag: inv.offdiag.into_iter().map(scale).collect(),
        }
    }

    /// `|A <-k- b| = g_k |A|`, with `g_k` the `k`-th entry of `A^-1 b`.
    pub fn det_column_substituted(&self, k: usize, b: &[S]) -> Result<S> {
        let n = self.dim();
        if b.len() != n {
            return Err(LbandError::DimensionMismatch { expected: n, found: b.len() });
        }
        self.check_index(k)?;
        let d = &self.deltas;
        let bk = &b[k - 1];
        let mut g = if k == n { d.get(n).clone() * bk.clone() } else { S::zero() };
        if k > 1 {
            g = g + d.get(k - 1).clone() * (bk.clone() - b[k - 2].clone());
        }
        if k < n {
            g = g + d.get(k).clone() * (bk.clone() - b[k].clone());
        }
        Ok(g * self.det.clone())
    }
}

impl<S: Scalar> LBandedMatrix<S> {
    pub fn cofactor_table(&self) -> Result<CofactorTable<S>> {
        CofactorTable::new(self)
    }

    /// O(n) per call; use [`CofactorTable`] for repeated queries.
    pub fn cofactor(&self, i: usize, j: usize) -> Result<S> {
        self.cofactor_table()?.cofactor(i, j)
    }

    pub fn minor(&self, i: usize, j: usize) -> Result<S> {
        self.cofactor_table()?.minor(i, j)
    }

    pub fn det_column_substituted(&self, k: usize, b: &[S]) -> Result<S> {
        self.cofactor_table()?.det_column_substituted(k, b)
    }
}
