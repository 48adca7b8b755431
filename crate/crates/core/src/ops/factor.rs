//! Closed-form LDL and Cholesky factorizations.
//!
//! Both factors are stored compactly: `L` is implied by the band through
//! `l_{i,j} = a_i / a_j`, so producing the factors is O(n) and only the dense
//! views cost O(n^2).

use crate::dense::DenseMatrix;
use crate::error::{LbandError, Result};
use crate::matrix::LBandedMatrix;
use crate::scalar::Scalar;

/// `A = L D L^T` with `L` unit lower triangular.
///
/// When the band ends in zeros `a_{p+1} = ... = a_n = 0`, the factors are the
/// block form `L = [L~ 0; 0 I]`, `D = [D~ 0; 0 0]` built from the leading
/// `p x p` block.
#[derive(Debug, Clone, PartialEq)]
pub struct LdlFactors<S> {
    band: Vec<S>,
    d: Vec<S>,
    active: usize,
}

impl<S: Scalar> LdlFactors<S> {
    pub fn dim(&self) -> usize {
        self.band.len()
    }

    /// Diagonal of `D`.
    pub fn d(&self) -> &[S] {
        &self.d
    }

    /// Size `p` of the leading block carrying the nontrivial factors.
    pub fn active_dim(&self) -> usize {
        self.active
    }

    /// One-based entry of `L`.
    pub fn l(&self, i: usize, j: usize) -> S {
        if i == j {
            S::one()
        } else if i < j || i > self.active {
            S::zero()
        } else {
            self.band[i - 1].clone() / self.band[j - 1].clone()
        }
    }

    pub fn dense_l(&self) -> DenseMatrix<S> {
        let mut out = DenseMatrix::zeros(self.dim());
        self.fill_dense_l(&mut out).expect("matching dimension");
        out
    }

    /// Writes `L` into an existing `n x n` matrix, row by row.
    pub fn fill_dense_l(&self, out: &mut DenseMatrix<S>) -> Result<()> {
        let n = self.dim();
        if out.dim() != n {
            return Err(LbandError::DimensionMismatch { expected: n, found: out.dim() });
        }
        let recip: Vec<S> = self.band[..self.active].iter().map(|a| S::one() / a.clone()).collect();
        for i in 0..n {
            let row = out.row_mut(i);
            let (lower, upper) = row.split_at_mut(i);
            if i < self.active {
                for (l, r) in lower.iter_mut().zip(&recip) {
                    *l = self.band[i].clone() * r.clone();
                }
            } else {
                lower.fill(S::zero());
            }
            upper[0] = S::one();
            upper[1..].fill(S::zero());
        }
        Ok(())
    }

    /// `L D L^T` as a dense matrix.
    pub fn reconstruct(&self) -> DenseMatrix<S> {
        let l = self.dense_l();
        let n = self.dim();
        DenseMatrix::from_fn(n, |i, j| {
            (0..=i.min(j)).fold(S::zero(), |acc, k| acc + l[(i, k)].clone() * self.d[k].clone() * l[(j, k)].clone())
        })
    }
}

/// `A = L^ L^T` for positive definite `A`, with
/// `l^_{i,j} = (a_i / a_j) sqrt(d_j)` for `i >= j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CholeskyFactor<S> {
    band: Vec<S>,
    sqrt_d: Vec<S>,
}

impl<S: Scalar> CholeskyFactor<S> {
    pub fn dim(&self) -> usize {
        self.band.len()
    }

    /// One-based entry of the lower-triangular factor.
    pub fn entry(&self, i: usize, j: usize) -> S {
        if i < j {
            S::zero()
        } else {
            self.band[i - 1].clone() / self.band[j - 1].clone() * self.sqrt_d[j - 1].clone()
        }
    }

    /// Diagonal of the factor, `sqrt(d_j)`.
    pub fn diagonal(&self) -> &[S] {
        &self.sqrt_d
    }

    pub fn to_dense(&self) -> DenseMatrix<S> {
        let mut out = DenseMatrix::zeros(self.dim());
        self.fill_dense(&mut out).expect("matching dimension");
        out
    }

    /// Writes the factor into an existing `n x n` matrix, row by row.
    pub fn fill_dense(&self, out: &mut DenseMatrix<S>) -> Result<()> {
        let n = self.dim();
        if out.dim() != n {
            return Err(LbandError::DimensionMismatch { expected: n, found: out.dim() });
        }
        let scale: Vec<S> = self.sqrt_d.iter().zip(&self.band).map(|(r, a)| r.clone() / a.clone()).collect();
        for i in 0..n {
            let (lower, upper) = out.row_mut(i).split_at_mut(i + 1);
            for (l, s) in lower.iter_mut().zip(&scale) {
                *l = self.band[i].clone() * s.clone();
            }
            upper.fill(S::zero());
        }
        Ok(())
    }

    pub fn reconstruct(&self) -> DenseMatrix<S> {
        let l = self.to_dense();
        DenseMatrix::from_fn(self.dim(), |i, j| {
            (0..=i.min(j)).fold(S::zero(), |acc, k| acc + l[(i, k)].clone() * l[(j, k)].clone())
        })
    }
}

impl<S: Scalar> LBandedMatrix<S> {
    /// Index `p` of the last nonzero band entry, or `None` for the zero band.
    fn last_nonzero(&self) -> Option<usize> {
        let tol = self.tolerance();
        self.band().iter().rposition(|v| !v.approx_zero(tol)).map(|p| p + 1)
    }

    /// First zero among `a_1..a_{p-1}`, which rules out an LDL decomposition.
    fn ldl_obstruction(&self) -> Option<usize> {
        let p = self.last_nonzero()?;
        let tol = self.tolerance();
        self.band()[..p - 1].iter().position(|v| v.approx_zero(tol)).map(|k| k + 1)
    }

    /// An LDL decomposition exists iff `a_k != 0` for all `k < p`, where `p` is
    /// the last nonzero band index. The zero band factors as `L = I`, `D = 0`.
    pub fn ldl_exists(&self) -> bool {
        self.ldl_obstruction().is_none()
    }

    /// Sufficient condition for a unique LDL decomposition: `a_i != 0` for
    /// `i < n` and `a_{j-1} != a_j` for `2 <= j < n`. Also necessary when
    /// `a_n != 0`.
    pub fn ldl_is_unique(&self) -> bool {
        let tol = self.tolerance();
        let band = self.band();
        let n = band.len();
        band[..n - 1].iter().all(|v| !v.approx_zero(tol))
            && band[..n - 1].windows(2).all(|w| !w[0].approx_eq(&w[1], tol))
    }

    pub fn ldl_decompose(&self) -> Result<LdlFactors<S>> {
        if let Some(index) = self.ldl_obstruction() {
            return Err(LbandError::NoLdlDecomposition { index });
        }
        let band = self.band();
        let active = self.last_nonzero().unwrap_or(0);
        let mut d = vec![S::zero(); band.len()];
        if active > 0 {
            d[0] = band[0].clone();
        }
        for k in 1..active {
            let (prev, cur) = (&band[k - 1], &band[k]);
            d[k] = cur.clone() / prev.clone() * (prev.clone() - cur.clone());
        }
        Ok(LdlFactors { band: band.to_vec(), d, active })
    }

    pub fn cholesky_decompose(&self) -> Result<CholeskyFactor<S>> {
        if !self.is_positive_definite() {
            return Err(LbandError::NotPositiveDefinite);
        }
        let ldl = self.ldl_decompose()?;
        let sqrt_d = ldl
            .d
            .iter()
            .map(|d| d.sqrt().ok_or_else(|| LbandError::IrrationalSquareRoot(d.to_text())))
            .collect::<Result<Vec<_>>>()?;
        Ok(CholeskyFactor { band: ldl.band, sqrt_d })
    }
}
