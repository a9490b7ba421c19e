//! Small dense matrices: `f64` for the eigensolver and PSD tests, exact
//! big-integer matrices for Hankel determinants.

use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Row-major dense `f64` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from rows; panics on ragged input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self[(i, k)] * other[(k, j)]).sum()
        })
    }

    /// `self * a + other * b`, entrywise.
    pub fn combine(&self, a: f64, other: &Matrix, b: f64) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest `|M_ij - M_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..i {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Square matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    /// Converts entries to `f64`, dividing entry `(i, j)` by `weight(i, j)`.
    pub fn to_f64_scaled(&self, weight: impl Fn(usize, usize) -> f64) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| {
            self.get(i, j).to_f64().unwrap_or(f64::INFINITY) / weight(i, j)
        })
    }

    pub fn to_f64(&self) -> Matrix {
        self.to_f64_scaled(|_, _| 1.0)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination. The empty
    /// matrix has determinant 1.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::from(1);
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = 1;
        let mut prev = BigInt::from(1);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Submatrix keeping the listed rows and columns.
    pub fn principal(&self, keep: &[usize]) -> Self {
        Self::from_fn(keep.len(), |a, b| self.get(keep[a], keep[b]).clone())
    }

    fn minor(&self, row: usize, col: usize) -> Self {
        let rows: Vec<usize> = (0..self.n).filter(|&r| r != row).collect();
        let cols: Vec<usize> = (0..self.n).filter(|&c| c != col).collect();
        Self::from_fn(self.n - 1, |a, b| self.get(rows[a], cols[b]).clone())
    }

    /// Exact adjugate `adj(M)`, so that `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Self {
        if self.n == 1 {
            return Self::from_fn(1, |_, _| BigInt::from(1));
        }
        // adj(M)_{ij} = (-1)^{i+j} det(minor(j, i))
        Self::from_fn(self.n, |i, j| {
            let c = self.minor(j, i).det();
            if (i + j) % 2 == 0 {
                c
            } else {
                -c
            }
        })
    }

    /// Leading principal minors `det(M_{1..k})` for `k = 1..=n`.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        (1..=self.n)
            .map(|k| self.principal(&(0..k).collect::<Vec<_>>()).det())
            .collect()
    }
}
