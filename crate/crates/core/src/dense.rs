//! Row-major dense square matrices.
//!
//! This is the substrate for the brute-force oracles and the damping
//! computation. Storage holds both triangles. `Index<(usize, usize)>` is
//! zero-based; the named accessors taking `row`/`col` are one-based like the
//! rest of the public API.

use std::ops::{Index, IndexMut};

use crate::error::{LbandError, ParseError, Result, SingularCause};
use crate::scalar::{Scalar, ToleranceConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<S> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![S::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn diagonal(values: &[S]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(ParseError::Ragged { row: r + 1, expected: n, found: row.len() }.into());
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [S] {
        &mut self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    /// One-based entry access.
    pub fn get(&self, row: usize, col: usize) -> Result<&S> {
        for index in [row, col] {
            if index == 0 || index > self.n {
                return Err(LbandError::IndexOutOfRange { index, n: self.n });
            }
        }
        Ok(&self[(row - 1, col - 1)])
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DenseMatrix<T> {
        DenseMatrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> DenseMatrix<f64> {
        self.map(Scalar::to_f64)
    }

    /// First symmetry violation as a one-based `(row, col)` pair.
    pub fn symmetry_violation(&self, tol: &ToleranceConfig) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self[(i, j)].approx_eq(&self[(j, i)], tol) {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }

    pub fn ensure_symmetric(&self, tol: &ToleranceConfig) -> Result<()> {
        match self.symmetry_violation(tol) {
            Some((row, col)) => Err(LbandError::NotSymmetric { row, col }),
            None => Ok(()),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs.n)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let lhs = &self[(i, k)];
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = lhs.clone() * rhs[(k, j)].clone();
                    let slot = &mut out[(i, j)];
                    *slot = slot.clone() + prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[S]) -> Result<Vec<S>> {
        self.check_dim(x.len())?;
        Ok(self
            .rows()
            .map(|row| row.iter().zip(x).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect())
    }

    /// `x^T M x` by direct summation over all entries.
    pub fn quadratic_form(&self, x: &[S]) -> Result<S> {
        let mx = self.mul_vec(x)?;
        Ok(x.iter().zip(&mx).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        self.check_dim(rhs.n)?;
        Ok(Self { n: self.n, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect() })
    }

    /// Largest entrywise `|self - rhs|`.
    pub fn max_abs_diff(&self, rhs: &Self) -> Result<f64> {
        self.check_dim(rhs.n)?;
        Ok(self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.distance(b)).fold(0.0, f64::max))
    }

    pub fn trace(&self) -> S {
        (0..self.n).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Leading `k x k` block.
    pub fn leading_block(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.n {
            return Err(LbandError::IndexOutOfRange { index: k, n: self.n });
        }
        Ok(Self::from_fn(k, |i, j| self[(i, j)].clone()))
    }

    /// The matrix with one-based `row` and `col` removed.
    pub fn delete(&self, row: usize, col: usize) -> Result<Self> {
        for index in [row, col] {
            if index == 0 || index > self.n {
                return Err(LbandError::IndexOutOfRange { index, n: self.n });
            }
        }
        let keep_rows = (0..self.n).filter(|&i| i != row - 1);
        let mut entries = Vec::with_capacity((self.n - 1) * (self.n - 1));
        for i in keep_rows {
            for j in (0..self.n).filter(|&j| j != col - 1) {
                entries.push(self[(i, j)].clone());
            }
        }
        Ok(Self { n: self.n - 1, entries })
    }

    /// The matrix with one-based column `k` replaced by `b`.
    pub fn replace_column(&self, k: usize, b: &[S]) -> Result<Self> {
        if k == 0 || k > self.n {
            return Err(LbandError::IndexOutOfRange { index: k, n: self.n });
        }
        self.check_dim(b.len())?;
        let mut out = self.clone();
        for (i, v) in b.iter().enumerate() {
            out[(i, k - 1)] = v.clone();
        }
        Ok(out)
    }

    /// Solves `M y = rhs` by Gaussian elimination with largest-magnitude
    /// pivoting. Exact for rational scalars.
    pub fn solve(&self, rhs: &[S]) -> Result<Vec<S>> {
        self.check_dim(rhs.len())?;
        let n = self.n;
        let tol = ToleranceConfig::default();
        let mut a = self.clone();
        let mut y = rhs.to_vec();
        for col in 0..n {
            let pivot_row = a.pivot_row(col, col);
            let pivot_row = match pivot_row {
                Some(r) if !a[(r, col)].approx_zero(&tol) || S::EXACT => r,
                _ => return Err(LbandError::Singular(SingularCause::NoPivot { column: col + 1 })),
            };
            a.swap_rows(col, pivot_row);
            y.swap(col, pivot_row);
            let pivot = a[(col, col)].clone();
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone() / pivot.clone();
                for c in col..n {
                    let v = a[(r, c)].clone() - factor.clone() * a[(col, c)].clone();
                    a[(r, c)] = v;
                }
                y[r] = y[r].clone() - factor * y[col].clone();
            }
        }
        for col in (0..n).rev() {
            let mut acc = y[col].clone();
            for c in col + 1..n {
                acc = acc - a[(col, c)].clone() * y[c].clone();
            }
            y[col] = acc / a[(col, col)].clone();
        }
        Ok(y)
    }

    /// Row index in `from..n` holding the largest-magnitude nonzero entry of
    /// column `col`.
    pub(crate) fn pivot_row(&self, col: usize, from: usize) -> Option<usize> {
        let mut best: Option<(usize, S)> = None;
        for r in from..self.n {
            let v = &self[(r, col)];
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            if best.as_ref().is_none_or(|(_, b)| mag > *b) {
                best = Some((r, mag));
            }
        }
        best.map(|(r, _)| r)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.n {
            self.entries.swap(a * self.n + c, b * self.n + c);
        }
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.n {
            return Err(LbandError::DimensionMismatch { expected: self.n, found });
        }
        Ok(())
    }
}

impl<S> Index<(usize, usize)> for DenseMatrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.entries[i * self.n + j]
    }
}

impl<S> IndexMut<(usize, usize)> for DenseMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.entries[i * self.n + j]
    }
}
