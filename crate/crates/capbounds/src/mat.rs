//! Dense row-major matrices, generic over the scalar type.
//!
//! Exact kernels (elimination, rank, kernel bases) are available for any
//! [`Field`] scalar; floating helpers for [`Real`] scalars. Both live on the
//! same container so certificates and numeric code share one matrix type.

use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Real};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Mat<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data length mismatch");
        Mat { rows, cols, data }
    }
}

impl<T: Clone> Mat<T> {
    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Mat { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        Mat::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        })
    }

    /// New matrix keeping the listed columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Mat::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::filled(rows, cols, T::zero())
    }
}

impl<T: Clone + Zero + One> Mat<T> {
    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T: Clone + Zero + std::ops::Mul<Output = T>> Mat<T> {
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out: Mat<T> = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + t;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: std::fmt::Debug> std::fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{:?} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Exact elimination kernels.
// ---------------------------------------------------------------------------

impl<F: Field> Mat<F> {
    /// Reduce in place to row echelon form; returns the pivot column of each
    /// produced nonzero row, in order.
    pub fn row_echelon_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self[(r, c)].inv();
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let factor = self[(i, c)].clone();
                    for j in c..self.cols {
                        let t = factor.clone() * self[(r, j)].clone();
                        self[(i, j)] = self[(i, j)].clone() - t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Exact rank via elimination on a working copy.
    pub fn rank(&self) -> usize {
        self.clone().row_echelon_in_place().len()
    }

    /// Basis of the null space `{x : Ax = 0}`, returned as columns. Empty
    /// (0-column) matrix when the kernel is trivial.
    pub fn kernel_basis(&self) -> Mat<F> {
        let mut work = self.clone();
        let pivots = work.row_echelon_in_place();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Mat::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis[(fc, k)] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                basis[(pc, k)] = -work[(row, fc)].clone();
            }
        }
        basis
    }

    /// Columns of `self` that form a basis of its column space
    /// (the pivot columns, lowest indices first).
    pub fn col_space_basis(&self) -> Mat<F> {
        let pivots = self.clone().row_echelon_in_place();
        self.select_cols(&pivots)
    }

    /// True iff the columns are linearly independent.
    pub fn full_column_rank(&self) -> bool {
        self.rank() == self.cols
    }

    /// Solve the square system `Ax = b` exactly. Errors if singular.
    pub fn solve(&self, b: &[F]) -> Result<Vec<F>> {
        assert!(self.is_square() && b.len() == self.rows);
        let rhs = Mat::from_fn(self.rows, 1, |i, _| b[i].clone());
        let mut aug = self.hstack(&rhs);
        let pivots = aug.row_echelon_in_place();
        if pivots.len() != self.rows || pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::Numeric("singular system".into()));
        }
        Ok((0..self.rows).map(|i| aug[(i, self.cols)].clone()).collect())
    }
}

// ---------------------------------------------------------------------------
// Floating helpers.
// ---------------------------------------------------------------------------

impl<R: Real> Mat<R> {
    pub fn max_abs(&self) -> R {
        self.data
            .iter()
            .fold(R::zero(), |m, v| if v.abs() > m { v.abs() } else { m })
    }

    pub fn frob_norm(&self) -> R {
        self.data
            .iter()
            .fold(R::zero(), |s, v| s + *v * *v)
            .sqrt()
    }

    pub fn trace(&self) -> R {
        assert!(self.is_square());
        (0..self.rows).fold(R::zero(), |s, i| s + self[(i, i)])
    }

    pub fn scale(&self, a: R) -> Self {
        self.map(|v| *v * a)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + rhs[(i, j)])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - rhs[(i, j)])
    }

    pub fn symmetrize(&self) -> Self {
        assert!(self.is_square());
        let half = R::from_f64(0.5);
        Mat::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)]) * half
        })
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Cholesky factor L (lower) with `A = L Lᵀ`; `None` if not positive
    /// definite within floating tolerance.
    pub fn cholesky(&self) -> Option<Mat<R>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut l = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                if i == j {
                    if s <= R::zero() || !s.is_finite() {
                        return None;
                    }
                    l[(i, i)] = s.sqrt();
                } else {
                    l[(i, j)] = s / l[(j, j)];
                }
            }
        }
        Some(l)
    }

    /// Inverse of a symmetric positive definite matrix via its Cholesky
    /// factor. `None` if not PD.
    pub fn spd_inverse(&self) -> Option<Mat<R>> {
        let l = self.cholesky()?;
        let n = self.rows;
        // Forward/back substitution per unit vector.
        let mut inv = Mat::zeros(n, n);
        for col in 0..n {
            let mut y = vec![R::zero(); n];
            for i in 0..n {
                let mut s = if i == col { R::one() } else { R::zero() };
                for k in 0..i {
                    s -= l[(i, k)] * y[k];
                }
                y[i] = s / l[(i, i)];
            }
            let mut x = vec![R::zero(); n];
            for i in (0..n).rev() {
                let mut s = y[i];
                for k in i + 1..n {
                    s -= l[(k, i)] * x[k];
                }
                x[i] = s / l[(i, i)];
            }
            for i in 0..n {
                inv[(i, col)] = x[i];
            }
        }
        Some(inv)
    }

    /// Solve `Ax = b` by LU with partial pivoting. Errors when singular to
    /// working precision.
    pub fn lu_solve(&self, b: &[R]) -> Result<Vec<R>> {
        assert!(self.is_square() && b.len() == self.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut x: Vec<R> = b.to_vec();
        for k in 0..n {
            let mut p = k;
            for i in k + 1..n {
                if a[(i, k)].abs() > a[(p, k)].abs() {
                    p = i;
                }
            }
            if a[(p, k)].abs() < R::from_f64(1e-300) {
                return Err(Error::Numeric("singular linear system in lu_solve".into()));
            }
            if p != k {
                for j in 0..n {
                    let t = a[(k, j)];
                    a[(k, j)] = a[(p, j)];
                    a[(p, j)] = t;
                }
                x.swap(k, p);
            }
            for i in k + 1..n {
                let f = a[(i, k)] / a[(k, k)];
                if f == R::zero() {
                    continue;
                }
                for j in k..n {
                    let t = a[(k, j)] * f;
                    a[(i, j)] -= t;
                }
                x[i] = x[i] - x[k] * f;
            }
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= a[(i, j)] * x[j];
            }
            x[i] = s / a[(i, i)];
        }
        Ok(x)
    }
}
