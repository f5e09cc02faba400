//! Small dense matrices and Gaussian elimination over either scalar field.
//!
//! Sizes here are tiny ((N+1) x (N+1) with N <= 20), so no pivot-growth or
//! blocking concerns. Exact mode eliminates without pivoting: the systems
//! solved in this crate are symmetric positive definite, so every leading
//! principal minor is nonzero. Float mode uses partial pivoting.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..self.cols {
                    acc = acc + self.get(i, j).clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }
}

/// Solves A x = b by Gaussian elimination.
///
/// Exact scalars: no pivoting (see module docs), zero pivot reports
/// `SingularSystem`. Float scalars: partial pivoting on |pivot|.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Result<Vec<S>> {
    assert_eq!(a.rows(), a.cols(), "square system expected");
    assert_eq!(a.rows(), b.len());
    let n = a.rows();
    let mut m = a.clone();
    let mut rhs = b.to_vec();

    for col in 0..n {
        if !S::EXACT {
            let mut best = col;
            let mut best_mag = m.get(col, col).to_f64().abs();
            for r in col + 1..n {
                let mag = m.get(r, col).to_f64().abs();
                if mag > best_mag {
                    best = r;
                    best_mag = mag;
                }
            }
            if best != col {
                for j in 0..n {
                    let tmp = m.get(col, j).clone();
                    m.set(col, j, m.get(best, j).clone());
                    m.set(best, j, tmp);
                }
                rhs.swap(col, best);
            }
        }
        let pivot = m.get(col, col).clone();
        if pivot.is_zero() {
            return Err(Error::SingularSystem(format!("zero pivot at column {col}")));
        }
        for r in col + 1..n {
            let factor = m.get(r, col).clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for j in col..n {
                let v = m.get(r, j).clone() - factor.clone() * m.get(col, j).clone();
                m.set(r, j, v);
            }
            let v = rhs[r].clone() - factor * rhs[col].clone();
            rhs[r] = v;
        }
    }

    let mut x = vec![S::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for j in row + 1..n {
            acc = acc - m.get(row, j).clone() * x[j].clone();
        }
        x[row] = acc / m.get(row, row).clone();
    }
    Ok(x)
}
