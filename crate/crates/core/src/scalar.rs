//! Scalar contract shared by every algorithm in the crate.
//!
//! Two instantiations are provided: `f64` for the fast paths and
//! [`BigRational`] for exact oracle comparisons. Tolerance-aware comparisons
//! go through [`Scalar::approx_eq`] and [`Scalar::approx_zero`]; the exact
//! type ignores the tolerance entirely.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Equality and zero thresholds used in float mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Relative tolerance for scalar equality.
    pub eq_tol: f64,
    /// Absolute tolerance for zero tests.
    pub zero_tol: f64,
}

impl ToleranceConfig {
    pub const DEFAULT_EQ_TOL: f64 = 1e-12;
    pub const DEFAULT_ZERO_TOL: f64 = 1e-12;

    pub fn new(eq_tol: f64, zero_tol: f64) -> Result<Self, ToleranceError> {
        if !(eq_tol > 0.0 && eq_tol.is_finite()) {
            return Err(ToleranceError::NonPositive { name: "eq_tol", value: eq_tol });
        }
        if !(zero_tol > 0.0 && zero_tol.is_finite()) {
            return Err(ToleranceError::NonPositive { name: "zero_tol", value: zero_tol });
        }
        Ok(Self { eq_tol, zero_tol })
    }

    /// `|x - y| <= max(eq_tol * max(|x|, |y|), zero_tol)`.
    pub fn close(&self, x: f64, y: f64) -> bool {
        if x == y {
            return true;
        }
        let scale = x.abs().max(y.abs());
        (x - y).abs() <= (self.eq_tol * scale).max(self.zero_tol)
    }
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { eq_tol: Self::DEFAULT_EQ_TOL, zero_tol: Self::DEFAULT_ZERO_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ToleranceError {
    #[error("{name} must be strictly positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {text:?} as a scalar")]
pub struct ParseScalarError {
    pub text: String,
}

/// An ordered field element.
pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static {
    /// True when arithmetic is exact and tolerances are ignored.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self;

    /// Square root, if it exists in this field.
    fn sqrt(&self) -> Option<Self>;

    /// Parses `"1.5"`, `"-2"`, `"1e-3"` or `"3/2"`.
    fn parse_text(text: &str) -> Result<Self, ParseScalarError>;

    fn approx_eq(&self, other: &Self, tol: &ToleranceConfig) -> bool;

    fn approx_zero(&self, tol: &ToleranceConfig) -> bool;

    /// Strictly positive and not within `zero_tol` of zero.
    fn definitely_positive(&self, tol: &ToleranceConfig) -> bool {
        *self > Self::zero() && !self.approx_zero(tol)
    }

    /// Strictly greater and not approximately equal.
    fn definitely_greater(&self, other: &Self, tol: &ToleranceConfig) -> bool {
        *self > *other && !self.approx_eq(other, tol)
    }

    /// Magnitude of `self - other` as a float, used for discrepancy reports.
    fn distance(&self, other: &Self) -> f64 {
        (self.clone() - other.clone()).abs().to_f64()
    }

    /// Canonical text form: shortest round-trip decimal for floats, `p/q`
    /// for rationals.
    fn to_text(&self) -> String {
        self.to_string()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn parse_text(text: &str) -> Result<Self, ParseScalarError> {
        let t = text.trim();
        let err = || ParseScalarError { text: text.to_string() };
        if let Some((p, q)) = t.split_once('/') {
            let p: f64 = p.trim().parse().map_err(|_| err())?;
            let q: f64 = q.trim().parse().map_err(|_| err())?;
            if q == 0.0 {
                return Err(err());
            }
            return Ok(p / q);
        }
        let v: f64 = t.parse().map_err(|_| err())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(err())
        }
    }

    fn approx_eq(&self, other: &Self, tol: &ToleranceConfig) -> bool {
        tol.close(*self, *other)
    }

    fn approx_zero(&self, tol: &ToleranceConfig) -> bool {
        f64::abs(*self) <= tol.zero_tol
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        (&n * &n == *self.numer() && &d * &d == *self.denom()).then(|| BigRational::new(n, d))
    }

    fn parse_text(text: &str) -> Result<Self, ParseScalarError> {
        parse_rational(text.trim()).ok_or_else(|| ParseScalarError { text: text.to_string() })
    }

    fn approx_eq(&self, other: &Self, _tol: &ToleranceConfig) -> bool {
        self == other
    }

    fn approx_zero(&self, _tol: &ToleranceConfig) -> bool {
        self.is_zero()
    }
}

fn parse_rational(t: &str) -> Option<BigRational> {
    if let Some((p, q)) = t.split_once('/') {
        let p = parse_decimal(p.trim())?;
        let q = parse_decimal(q.trim())?;
        if q.is_zero() {
            return None;
        }
        return Some(p / q);
    }
    parse_decimal(t)
}

const MAX_DECIMAL_EXPONENT: u32 = 4096;

/// Exact decimal parsing: `[+-]digits[.digits][(e|E)[+-]digits]`.
fn parse_decimal(t: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    if exponent.unsigned_abs() > MAX_DECIMAL_EXPONENT {
        return None;
    }
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::parse_bytes(all_digits.as_bytes(), 10)?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Convenience constructor for exact rationals, mostly used in tests.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `(-1)^k` as a scalar.
pub(crate) fn sign_power<S: Scalar>(k: usize) -> S {
    if k.is_multiple_of(2) {
        S::one()
    } else {
        -S::one()
    }
}
