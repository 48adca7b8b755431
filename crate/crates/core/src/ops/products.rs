//! Products that stay structured: `H A` for a particular upper-triangular `H`,
//! and `A^2`.

use crate::dense::DenseMatrix;
use crate::error::Result;
use crate::matrix::LBandedMatrix;
use crate::scalar::Scalar;

/// The upper-triangular `H` generated by `h`: `H[i][j] = h_j` above the
/// diagonal and `H[j][j] = h_1 + ... + h_j`.
pub fn structured_upper<S: Scalar>(h: &[S]) -> DenseMatrix<S> {
    let n = h.len();
    let mut out = DenseMatrix::zeros(n);
    let mut prefix = S::zero();
    for j in 0..n {
        prefix = prefix + h[j].clone();
        for i in 0..j {
            out[(i, j)] = h[j].clone();
        }
        out[(j, j)] = prefix.clone();
    }
    out
}

impl<S: Scalar> LBandedMatrix<S> {
    /// Band of `Q = H A`: `q_t = a_t (h_1 + ... + h_t) + Σ_{k>t} h_k a_k`,
    /// O(n) via prefix and suffix sums.
    pub fn left_multiply_structured_upper(&self, h: &[S]) -> Result<LBandedMatrix<S>> {
        self.check_len(h.len())?;
        let band = self.band();
        let n = band.len();
        let mut tail = vec![S::zero(); n + 1];
        for k in (0..n).rev() {
            tail[k] = tail[k + 1].clone() + h[k].clone() * band[k].clone();
        }
        let mut prefix = S::zero();
        let q = (0..n)
            .map(|t| {
                prefix = prefix.clone() + h[t].clone();
                band[t].clone() * prefix.clone() + tail[t + 1].clone()
            })
            .collect();
        Ok(LBandedMatrix::from_band(q)?.with_tolerance(*self.tolerance()))
    }

    /// `A^2` with `b_{i,j} = a_t (m a_m + Σ_{k=m+1}^{t} a_k) + Σ_{k>t} a_k^2`
    /// for `m = min(i, j)`, `t = max(i, j)`. O(n^2) total.
    pub fn square(&self) -> DenseMatrix<S> {
        let band = self.band();
        let n = band.len();
        // prefix[k] = a_1 + ... + a_k, tail_sq[k] = Σ_{i>k} a_i^2 (one-based k)
        let mut prefix = vec![S::zero(); n + 1];
        for k in 1..=n {
            prefix[k] = prefix[k - 1].clone() + band[k - 1].clone();
        }
        let mut tail_sq = vec![S::zero(); n + 1];
        for k in (0..n).rev() {
            tail_sq[k] = tail_sq[k + 1].clone() + band[k].clone() * band[k].clone();
        }
        let mut out = DenseMatrix::zeros(n);
        for m in 1..=n {
            let am = &band[m - 1];
            let head = S::from_i64(m as i64) * am.clone();
            for t in m..=n {
                let inner = head.clone() + prefix[t].clone() - prefix[m].clone();
                let v = band[t - 1].clone() * inner + tail_sq[t].clone();
                out[(m - 1, t - 1)] = v.clone();
                out[(t - 1, m - 1)] = v;
            }
        }
        out
    }
}
