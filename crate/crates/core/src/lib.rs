//! Closed-form algebra for L-banded matrices.
//!
//! A symmetric matrix is L-banded when entry `(i, j)` equals `a_{max(i, j)}`
//! for a band vector `[a_1, ..., a_n]`. Determinant, inverse, definiteness,
//! LDL and Cholesky factors, cofactors, the characteristic polynomial and a
//! few structured products all have closed forms in the band entries; they
//! live in [`ops`] as methods on [`LBandedMatrix`].
//!
//! Every routine is generic over [`Scalar`], implemented for `f64` and for
//! exact `BigRational`. [`oracle`] holds dense brute-force counterparts used
//! to check the closed forms, and [`damping`] the vector-damping computation
//! whose covariances are L-banded.
//!
//! ```
//! use lband::{LBandedMatrix, ratio};
//!
//! let a = LBandedMatrix::from_band(vec![ratio(3, 1), ratio(2, 1), ratio(1, 1)]).unwrap();
//! assert_eq!(a.determinant(), ratio(1, 1));
//! assert_eq!(a.inverse().unwrap().get(2, 2), ratio(2, 1));
//! ```

pub mod damping;
pub mod dense;
pub mod error;
pub mod io;
pub mod matrix;
pub mod ops;
pub mod oracle;
pub mod scalar;

pub use damping::{damped_covariance, damping_vector, damping_vector_lbanded, DampedCovariance, DampingVector};
pub use dense::DenseMatrix;
pub use error::{LbandError, ParseError, Result, SingularCause};
pub use matrix::{detect_l_banded, l_band_deviation, linear_combination, LBandedMatrix, NotLBanded};
pub use ops::{
    structured_upper, CholeskyFactor, CofactorTable, DefinitenessClass, DeltaCoefficients, DeltaDifferences,
    LdlFactors, Polynomial, SymTridiagonal,
};
pub use scalar::{ratio, ParseScalarError, Scalar, ToleranceConfig, ToleranceError};

pub use num_rational::BigRational;
