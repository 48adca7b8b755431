//! Characteristic polynomial by a three-term recurrence.
//!
//! `p_A(λ) = |λI - A| = |A| |λA^-1 - I|`, and the leading principal minors
//! `f_k` of the tridiagonal `λA^-1 - I` satisfy
//!
//! ```text
//! f_0 = 1,  f_1 = δ_1 λ - 1,
//! f_k = ((δ_{k-1} + δ_k) λ - 1) f_{k-1} - δ_{k-1}^2 λ^2 f_{k-2}.
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::LBandedMatrix;
use crate::scalar::Scalar;

/// Dense polynomial, coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    /// Trailing zero coefficients are dropped, so the zero polynomial has no
    /// coefficients.
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    /// Coefficient of `λ^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < S::zero();
            let mag = c.abs();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = mag.is_one() && k > 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("λ")?,
                _ => write!(f, "λ^{k}")?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> LBandedMatrix<S> {
    /// Monic `p_A(λ) = |A| f_n`. Requires an invertible matrix; O(n^2)
    /// coefficient arithmetic.
    pub fn characteristic_polynomial(&self) -> Result<Polynomial<S>> {
        let deltas = self.delta_coefficients()?;
        let n = self.dim();
        // f_{k-2}, f_{k-1}
        let mut older: Vec<S> = vec![S::one()];
        let mut prev: Vec<S> = vec![-S::one(), deltas.get(1).clone()];
        for k in 2..=n {
            let lin = deltas.get(k - 1).clone() + deltas.get(k).clone();
            let quad = deltas.get(k - 1).clone() * deltas.get(k - 1).clone();
            let mut next = vec![S::zero(); k + 1];
            for (i, c) in prev.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + lin.clone() * c.clone();
                next[i] = next[i].clone() - c.clone();
            }
            for (i, c) in older.iter().enumerate() {
                next[i + 2] = next[i + 2].clone() - quad.clone() * c.clone();
            }
            older = std::mem::replace(&mut prev, next);
        }
        let det = self.determinant();
        Ok(Polynomial::new(prev.into_iter().map(|c| c * det.clone()).collect()))
    }

    /// `p_A(λ)` by running the same recurrence on values instead of
    /// coefficients. O(n), and in floating point far better conditioned than
    /// evaluating the coefficient vector, whose entries grow combinatorially.
    pub fn characteristic_value(&self, lambda: &S) -> Result<S> {
        let deltas = self.delta_coefficients()?;
        let n = self.dim();
        let mut older = S::one();
        let mut prev = deltas.get(1).clone() * lambda.clone() - S::one();
        for k in 2..=n {
            let lin = (deltas.get(k - 1).clone() + deltas.get(k).clone()) * lambda.clone() - S::one();
            let dl = deltas.get(k - 1).clone() * lambda.clone();
            let next = lin * prev.clone() - dl.clone() * dl * older;
            older = std::mem::replace(&mut prev, next);
        }
        Ok(self.determinant() * prev)
    }
}
