//! Quadratic form and definiteness classification.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::LBandedMatrix;
use crate::scalar::Scalar;

/// Single-valued definiteness label.
///
/// Semidefinite labels are only reported when the corresponding strict label
/// does not apply; `Indefinite` covers everything else. The zero matrix is
/// `PositiveSemiDefinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DefinitenessClass {
    PositiveDefinite,
    PositiveSemiDefinite,
    NegativeDefinite,
    NegativeSemiDefinite,
    Indefinite,
}

impl DefinitenessClass {
    pub fn name(&self) -> &'static str {
        match self {
            Self::PositiveDefinite => "PositiveDefinite",
            Self::PositiveSemiDefinite => "PositiveSemiDefinite",
            Self::NegativeDefinite => "NegativeDefinite",
            Self::NegativeSemiDefinite => "NegativeSemiDefinite",
            Self::Indefinite => "Indefinite",
        }
    }
}

impl std::fmt::Display for DefinitenessClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy)]
enum Chain {
    Strict,
    Weak,
}

impl<S: Scalar> LBandedMatrix<S> {
    /// `x^T A x = Σ_k Δ_k (x_1 + ... + x_k)^2`, in O(n).
    pub fn quadratic_form(&self, x: &[S]) -> Result<S> {
        self.check_len(x.len())?;
        let band = self.band();
        let n = band.len();
        let mut prefix = S::zero();
        let mut total = S::zero();
        for k in 0..n {
            prefix = prefix + x[k].clone();
            let weight = if k + 1 < n { band[k].clone() - band[k + 1].clone() } else { band[k].clone() };
            total = total + weight * prefix.clone() * prefix.clone();
        }
        Ok(total)
    }

    pub fn classify_definiteness(&self) -> DefinitenessClass {
        if self.descending_to_zero(Chain::Strict) {
            DefinitenessClass::PositiveDefinite
        } else if self.descending_to_zero(Chain::Weak) {
            DefinitenessClass::PositiveSemiDefinite
        } else if self.ascending_to_zero(Chain::Strict) {
            DefinitenessClass::NegativeDefinite
        } else if self.ascending_to_zero(Chain::Weak) {
            DefinitenessClass::NegativeSemiDefinite
        } else {
            DefinitenessClass::Indefinite
        }
    }

    /// `a_1 > a_2 > ... > a_n > 0`.
    pub fn is_positive_definite(&self) -> bool {
        self.descending_to_zero(Chain::Strict)
    }

    /// `a_1 >= a_2 >= ... >= a_n >= 0`; true for positive definite matrices too.
    pub fn is_positive_semidefinite(&self) -> bool {
        self.descending_to_zero(Chain::Weak)
    }

    pub fn is_negative_definite(&self) -> bool {
        self.ascending_to_zero(Chain::Strict)
    }

    pub fn is_negative_semidefinite(&self) -> bool {
        self.ascending_to_zero(Chain::Weak)
    }

    /// Checks `a_1 ? a_2 ? ... ? a_n ? 0` where `?` is `>` or `>=`.
    fn descending_to_zero(&self, chain: Chain) -> bool {
        let tol = self.tolerance();
        let band = self.band();
        let holds = |hi: &S, lo: &S| match chain {
            Chain::Strict => hi.definitely_greater(lo, tol),
            Chain::Weak => hi > lo || hi.approx_eq(lo, tol),
        };
        band.windows(2).all(|w| holds(&w[0], &w[1])) && holds(&band[band.len() - 1], &S::zero())
    }

    fn ascending_to_zero(&self, chain: Chain) -> bool {
        self.map(|v| -v.clone()).descending_to_zero(chain)
    }
}
