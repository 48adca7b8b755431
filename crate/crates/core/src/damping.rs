//! Covariance-optimal vector damping.
//!
//! Given the covariance `V` of `t` past estimates, the convex combination
//! with least variance uses weights `ζ = V^-1 1 / (1^T V^-1 1)`. Damping every
//! step this way produces a covariance of damped estimates that is L-banded.

use crate::dense::DenseMatrix;
use crate::error::{LbandError, Result};
use crate::matrix::{detect_l_banded, l_band_deviation, LBandedMatrix, NotLBanded};
use crate::scalar::{Scalar, ToleranceConfig};

/// Damping weights together with the normalizer `1^T V^-1 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DampingVector<S> {
    zeta: Vec<S>,
    normalizer: S,
}

impl<S: Scalar> DampingVector<S> {
    pub fn zeta(&self) -> &[S] {
        &self.zeta
    }

    pub fn into_zeta(self) -> Vec<S> {
        self.zeta
    }

    /// `1^T V^-1 1`; its reciprocal is the variance of the damped estimate.
    pub fn normalizer(&self) -> &S {
        &self.normalizer
    }

    pub fn len(&self) -> usize {
        self.zeta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeta.is_empty()
    }

    pub fn sum(&self) -> S {
        self.zeta.iter().fold(S::zero(), |acc, z| acc + z.clone())
    }
}

/// Solves `V y = 1` and normalizes. `V` must be symmetric and invertible.
pub fn damping_vector<S: Scalar>(v: &DenseMatrix<S>) -> Result<DampingVector<S>> {
    let tol = ToleranceConfig::default();
    v.ensure_symmetric(&tol)?;
    let ones = vec![S::one(); v.dim()];
    let y = v.solve(&ones)?;
    let normalizer = y.iter().fold(S::zero(), |acc, yi| acc + yi.clone());
    if normalizer.approx_zero(&tol) {
        return Err(LbandError::ZeroNormalizer);
    }
    let zeta = y.into_iter().map(|yi| yi / normalizer.clone()).collect();
    Ok(DampingVector { zeta, normalizer })
}

/// For an invertible L-banded matrix `A^-1 1 = a_n^-1 e_n`, so the damping
/// vector is the last basis vector.
pub fn damping_vector_lbanded<S: Scalar>(a: &LBandedMatrix<S>) -> Result<DampingVector<S>> {
    if let Some(cause) = a.singular_cause() {
        return Err(LbandError::Singular(cause));
    }
    let n = a.dim();
    let mut zeta = vec![S::zero(); n];
    zeta[n - 1] = S::one();
    Ok(DampingVector { zeta, normalizer: S::one() / a.a(n).clone() })
}

/// Covariance of estimates damped with the optimal weights at every step.
#[derive(Debug, Clone)]
pub struct DampedCovariance<S> {
    matrix: DenseMatrix<S>,
    vectors: Vec<DampingVector<S>>,
    detection: std::result::Result<LBandedMatrix<S>, NotLBanded>,
    deviation: f64,
}

impl<S: Scalar> DampedCovariance<S> {
    pub fn matrix(&self) -> &DenseMatrix<S> {
        &self.matrix
    }

    /// `ζ_k` for `k = 1..=t`, unpadded.
    pub fn vectors(&self) -> &[DampingVector<S>] {
        &self.vectors
    }

    /// The L-banded form of the covariance, or where the pattern breaks.
    pub fn detection(&self) -> std::result::Result<&LBandedMatrix<S>, NotLBanded> {
        self.detection.as_ref().map_err(|e| *e)
    }

    pub fn band(&self) -> Option<&[S]> {
        self.detection.as_ref().ok().map(|a| a.band())
    }

    /// Largest distance of any entry from its L-band diagonal entry.
    pub fn deviation(&self) -> f64 {
        self.deviation
    }

    /// `1 / (1^T V_k^-1 1)` for each leading block `V_k`; the band the
    /// covariance should carry.
    pub fn predicted_band(&self) -> Vec<S> {
        self.vectors.iter().map(|z| S::one() / z.normalizer.clone()).collect()
    }
}

/// Builds `Ŵ[i][j] = ζ_i^T V ζ_j` where `ζ_k` damps the leading `k x k`
/// block of `V` and is zero-padded to length `t`. Structure is detected
/// with `tol`.
pub fn damped_covariance<S: Scalar>(v: &DenseMatrix<S>, tol: &ToleranceConfig) -> Result<DampedCovariance<S>> {
    v.ensure_symmetric(tol)?;
    let t = v.dim();
    let mut vectors = Vec::with_capacity(t);
    for k in 1..=t {
        let z = damping_vector(&v.leading_block(k)?)
            .map_err(|e| LbandError::DampingStep { step: k, source: Box::new(e) })?;
        vectors.push(z);
    }
    let padded: Vec<Vec<S>> = vectors
        .iter()
        .map(|z| {
            let mut p = z.zeta().to_vec();
            p.resize(t, S::zero());
            p
        })
        .collect();
    let v_zeta: Vec<Vec<S>> = padded.iter().map(|p| v.mul_vec(p)).collect::<Result<_>>()?;
    let mut matrix = DenseMatrix::zeros(t);
    for i in 0..t {
        for j in i..t {
            let w = padded[i].iter().zip(&v_zeta[j]).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
            matrix[(i, j)] = w.clone();
            matrix[(j, i)] = w;
        }
    }
    let deviation = l_band_deviation(&matrix);
    let detection = detect_l_banded(&matrix, tol);
    Ok(DampedCovariance { matrix, vectors, detection, deviation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::SingularCause;
    use crate::scalar::ratio;
    use num_rational::BigRational;

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_i64(x)).collect()
    }

    #[test]
    fn damping_vector_examples() {
        let z = damping_vector(&DenseMatrix::<BigRational>::identity(3)).unwrap();
        assert_eq!(z.zeta(), &[ratio(1, 3), ratio(1, 3), ratio(1, 3)]);
        assert_eq!(z.sum(), ratio(1, 1));
        let a = LBandedMatrix::from_band(ints(&[3, 2, 1])).unwrap();
        let z = damping_vector(&a.to_dense()).unwrap();
        assert_eq!(z.zeta(), &ints(&[0, 0, 1])[..]);
        let z = damping_vector(&DenseMatrix::diagonal(&ints(&[1, 4]))).unwrap();
        assert_eq!(z.zeta(), &[ratio(4, 5), ratio(1, 5)]);
        assert_eq!(z.normalizer(), &ratio(5, 4));
    }

    #[test]
    fn damping_vector_errors() {
        let singular = DenseMatrix::from_rows(vec![ints(&[1, 1]), ints(&[1, 1])]).unwrap();
        assert!(damping_vector(&singular).unwrap_err().is_singular());
        // V^-1 1 = [1, -1] sums to zero
        let v = DenseMatrix::diagonal(&ints(&[1, -1]));
        assert_eq!(damping_vector(&v).unwrap_err(), LbandError::ZeroNormalizer);
        let asym = DenseMatrix::from_rows(vec![ints(&[1, 2]), ints(&[0, 1])]).unwrap();
        assert!(matches!(damping_vector(&asym), Err(LbandError::NotSymmetric { .. })));
    }

    #[test]
    fn lbanded_shortcut_examples() {
        let lb = |v: Vec<BigRational>| LBandedMatrix::from_band(v).unwrap();
        assert_eq!(damping_vector_lbanded(&lb(ints(&[3, 2, 1]))).unwrap().zeta(), &ints(&[0, 0, 1])[..]);
        assert_eq!(damping_vector_lbanded(&lb(ints(&[5]))).unwrap().zeta(), &ints(&[1])[..]);
        let a = lb(vec![ratio(2, 1), ratio(1, 1), ratio(1, 2), ratio(1, 4)]);
        let fast = damping_vector_lbanded(&a).unwrap();
        assert_eq!(fast.zeta(), &ints(&[0, 0, 0, 1])[..]);
        assert_eq!(fast, damping_vector(&a.to_dense()).unwrap());
        assert_eq!(
            damping_vector_lbanded(&lb(ints(&[2, 2]))).unwrap_err(),
            LbandError::Singular(SingularCause::EqualNeighbors { k: 1 })
        );
    }

    #[test]
    fn damped_covariance_examples() {
        let tol = ToleranceConfig::default();
        let w = damped_covariance(&DenseMatrix::<BigRational>::identity(2), &tol).unwrap();
        let expected =
            DenseMatrix::from_rows(vec![vec![ratio(1, 1), ratio(1, 2)], vec![ratio(1, 2), ratio(1, 2)]]).unwrap();
        assert_eq!(w.matrix(), &expected);
        assert_eq!(w.band(), Some(&[ratio(1, 1), ratio(1, 2)][..]));
        assert_eq!(w.predicted_band(), vec![ratio(1, 1), ratio(1, 2)]);
        assert_eq!(w.deviation(), 0.0);

        let w = damped_covariance(&DenseMatrix::diagonal(&ints(&[7])), &tol).unwrap();
        assert_eq!(w.band(), Some(&ints(&[7])[..]));
    }

    #[test]
    fn damped_covariance_of_general_pd_matrix_is_l_banded() {
        // B^T B + I for an integer B, so positive definite
        let b = DenseMatrix::from_rows(vec![
            ints(&[2, -1, 0, 3, 1]),
            ints(&[1, 4, -2, 0, 0]),
            ints(&[0, 1, 3, -1, 2]),
            ints(&[-1, 0, 1, 2, 5]),
            ints(&[3, 2, 0, 1, -1]),
        ])
        .unwrap();
        let v = b.transpose().matmul(&b).unwrap().add(&DenseMatrix::identity(5)).unwrap();
        let w = damped_covariance(&v, &ToleranceConfig::default()).unwrap();
        let band = w.band().expect("L-banded");
        assert_eq!(band, &w.predicted_band()[..]);
        assert!(band.windows(2).all(|p| p[0] > p[1]));
        assert!(band.iter().all(|x| *x > ratio(0, 1)));
    }

    #[test]
    fn damped_covariance_reports_failing_step() {
        // leading 1x1 block is zero
        let v = DenseMatrix::from_rows(vec![ints(&[0, 1]), ints(&[1, 0])]).unwrap();
        let err = damped_covariance(&v, &ToleranceConfig::default()).unwrap_err();
        assert!(matches!(err, LbandError::DampingStep { step: 1, .. }));
        assert!(err.is_singular());
    }
}
