//! Dense square matrices over any [`Scalar`], plus the argument tuple of a
//! polydeterminant.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense `n x n` matrix stored row-major. Entry `(i, j)` is row `i`, column `j`.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(vec![S::one(); n])
    }

    pub fn from_diagonal(diag: Vec<S>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n);
        for (i, d) in diag.into_iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from row-major data of length `n * n`.
    pub fn from_row_major(n: usize, data: Vec<S>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Self::from_row_major(n, rows.into_iter().flatten().collect())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn trace(&self) -> S {
        (0..self.n).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn scale(&self, alpha: &S) -> Self {
        self.map(|x| x.clone() * alpha.clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// In-place `self += other`; dimensions must already agree.
    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = a.clone() + b.clone();
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let cell = &mut out.data[i * n + j];
                    *cell = cell.clone() + a.clone() * other.data[k * n + j].clone();
                }
            }
        }
        out
    }

    /// Determinant. Closed-form cofactor expansion for `n <= 3`, LU with
    /// partial pivoting (largest modulus) otherwise.
    pub fn det(&self) -> S {
        let a = |i: usize, j: usize| self.data[i * self.n + j].clone();
        match self.n {
            0 => S::one(),
            1 => a(0, 0),
            2 => a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0),
            3 => {
                a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                    - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                    + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
            }
            _ => self.det_lu(),
        }
    }

    /// Determinant by LU factorisation regardless of size.
    pub fn det_lu(&self) -> S {
        match Lu::factor(self) {
            Some(lu) => lu.det(),
            None => S::zero(),
        }
    }

    /// Inverse via LU. Fails when the matrix is (numerically) singular:
    /// for floating scalars `|det| < 1e-12 * (max row norm)^n`, for exact scalars `det == 0`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let lu = Lu::factor(self);
        let det = lu.as_ref().map_or_else(S::zero, Lu::det);
        let det_modulus = det.modulus();
        let singular = if S::EXACT {
            det.is_zero()
        } else {
            let row_norm = (0..n)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .map(|x| x.modulus().powi(2))
                        .sum::<f64>()
                        .sqrt()
                })
                .fold(0.0f64, f64::max);
            det_modulus < 1e-12 * row_norm.powi(n as i32) || det_modulus == 0.0
        };
        let lu = match (singular, lu) {
            (false, Some(lu)) => lu,
            _ => return Err(Error::Singular { det_modulus }),
        };
        let mut inv = Self::zeros(n);
        for col in 0..n {
            let mut e = vec![S::zero(); n];
            e[col] = S::one();
            let x = lu.solve(e);
            for (row, v) in x.into_iter().enumerate() {
                inv.data[row * n + col] = v;
            }
        }
        Ok(inv)
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).modulus())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    /// `max |U U^dagger - 1|`.
    pub fn unitarity_defect(&self) -> f64 {
        self.mul_unchecked(&self.conj_transpose())
            .max_abs_diff(&Self::identity(self.n))
    }
}

/// Row-pivoted LU factors packed into one matrix.
struct Lu<S> {
    n: usize,
    lu: Vec<S>,
    perm: Vec<usize>,
    odd_swaps: bool,
}

impl<S: Scalar> Lu<S> {
    /// Returns `None` when a zero pivot column is hit (exactly singular).
    fn factor(m: &Matrix<S>) -> Option<Self> {
        let n = m.n;
        let mut lu = m.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd_swaps = false;
        for k in 0..n {
            let (p, best) = (k..n)
                .map(|i| (i, lu[i * n + k].modulus()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            // Exact scalars may have a non-zero pivot whose f64 image underflows.
            let pivot_zero = if S::EXACT {
                lu[p * n + k].is_zero()
            } else {
                best == 0.0
            };
            if pivot_zero {
                return None;
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                odd_swaps = !odd_swaps;
            }
            let pivot = lu[k * n + k].clone();
            for i in k + 1..n {
                let factor = lu[i * n + k].clone() / pivot.clone();
                if factor.is_zero() {
                    lu[i * n + k] = factor;
                    continue;
                }
                for j in k + 1..n {
                    let v = lu[k * n + j].clone();
                    lu[i * n + j] = lu[i * n + j].clone() - factor.clone() * v;
                }
                lu[i * n + k] = factor;
            }
        }
        Some(Self {
            n,
            lu,
            perm,
            odd_swaps,
        })
    }

    fn det(&self) -> S {
        let prod = (0..self.n).fold(S::one(), |acc, i| acc * self.lu[i * self.n + i].clone());
        if self.odd_swaps {
            -prod
        } else {
            prod
        }
    }

    fn solve(&self, b: Vec<S>) -> Vec<S> {
        let n = self.n;
        let mut y: Vec<S> = self.perm.iter().map(|&p| b[p].clone()).collect();
        for i in 0..n {
            for j in 0..i {
                let v = self.lu[i * n + j].clone() * y[j].clone();
                y[i] = y[i].clone() - v;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let v = self.lu[i * n + j].clone() * y[j].clone();
                y[i] = y[i].clone() - v;
            }
            y[i] = y[i].clone() / self.lu[i * n + i].clone();
        }
        y
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[S]> = self.data.chunks(self.n.max(1)).collect();
        f.debug_struct("Matrix")
            .field("n", &self.n)
            .field("rows", &rows)
            .finish()
    }
}

/// Ordered argument list `(A_1, ..., A_n)` of a polydeterminant: exactly
/// `n` matrices, each `n x n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixTuple<S> {
    n: usize,
    items: Vec<Matrix<S>>,
}

impl<S: Scalar> MatrixTuple<S> {
    pub fn new(items: Vec<Matrix<S>>) -> Result<Self> {
        let n = items.first().map(Matrix::n).ok_or(Error::EmptyMatrix)?;
        if items.len() != n {
            return Err(Error::TupleArity {
                n,
                count: items.len(),
            });
        }
        if let Some(bad) = items.iter().find(|m| m.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.n(),
            });
        }
        Ok(Self { n, items })
    }

    /// `n` copies of the same matrix.
    pub fn repeated(m: &Matrix<S>) -> Self {
        Self {
            n: m.n(),
            items: vec![m.clone(); m.n()],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn items(&self) -> &[Matrix<S>] {
        &self.items
    }

    pub fn into_items(self) -> Vec<Matrix<S>> {
        self.items
    }

    /// Applies `f` to every argument.
    pub fn map(&self, f: impl Fn(&Matrix<S>) -> Matrix<S>) -> Self {
        Self {
            n: self.n,
            items: self.items.iter().map(f).collect(),
        }
    }

    /// Same tuple with arguments `i` and `j` exchanged.
    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut items = self.items.clone();
        items.swap(i, j);
        Self { n: self.n, items }
    }

    /// Same tuple with argument `i` replaced.
    pub fn with_item(&self, i: usize, m: Matrix<S>) -> Result<Self> {
        if m.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: m.n(),
            });
        }
        let mut items = self.items.clone();
        items[i] = m;
        Ok(Self { n: self.n, items })
    }
}
