//! Small dense complex linear algebra: rank-revealing QR, square solves and
//! least squares. Matrices are row-major `rows x cols` slices.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.cols + j] = v;
    }

    fn column_norm_sqr(&self, j: usize, from: usize) -> T {
        (from..self.rows).fold(T::zero(), |acc, i| acc + self.get(i, j).norm_sqr())
    }

    fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Applies a Householder reflection to zero column `col` below row `col`.
    /// Returns the new diagonal entry.
    fn householder_step(&mut self, col: usize, rhs: Option<&mut [Complex<T>]>) -> Complex<T> {
        let m = self.rows;
        let alpha_norm = self.column_norm_sqr(col, col).sqrt();
        if alpha_norm == T::zero() {
            return Complex::zero();
        }
        let x0 = self.get(col, col);
        let phase = if x0.norm() == T::zero() {
            Complex::one()
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * alpha_norm;
        let mut v: Vec<Complex<T>> = (col..m).map(|i| self.get(i, col)).collect();
        v[0] = v[0] - alpha;
        let vnorm_sqr = v.iter().fold(T::zero(), |a, z| a + z.norm_sqr());
        if vnorm_sqr == T::zero() {
            return alpha;
        }
        let two = T::one() + T::one();
        for j in col..self.cols {
            let dot = (col..m).fold(Complex::zero(), |acc, i| acc + v[i - col].conj() * self.get(i, j));
            let f = dot * (two / vnorm_sqr);
            for i in col..m {
                let val = self.get(i, j) - v[i - col] * f;
                self.set(i, j, val);
            }
        }
        if let Some(b) = rhs {
            let dot = (col..m).fold(Complex::zero(), |acc, i| acc + v[i - col].conj() * b[i]);
            let f = dot * (two / vnorm_sqr);
            for i in col..m {
                b[i] = b[i] - v[i - col] * f;
            }
        }
        alpha
    }
}

/// Numerical rank by Householder QR with column pivoting.
///
/// A diagonal entry `|r_ii|` counts toward the rank when it exceeds
/// `tol * max_j ||a_j||` (largest initial column norm).
pub fn numerical_rank<T: Real>(matrix: &CMatrix<T>, tol: T) -> usize {
    let mut a = matrix.clone();
    let steps = a.rows.min(a.cols);
    let scale = (0..a.cols)
        .map(|j| a.column_norm_sqr(j, 0).sqrt())
        .fold(T::zero(), T::max);
    if scale == T::zero() {
        return 0;
    }
    let threshold = tol * scale;
    let mut rank = 0;
    for col in 0..steps {
        let (pivot, best) = (col..a.cols)
            .map(|j| (j, a.column_norm_sqr(j, col)))
            .fold((col, T::neg_infinity()), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best.sqrt() <= threshold {
            break;
        }
        a.swap_columns(col, pivot);
        let diag = a.householder_step(col, None);
        if diag.norm() <= threshold {
            break;
        }
        rank += 1;
    }
    rank
}

/// Solves the square system `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve<T: Real>(a: &CMatrix<T>, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let n = a.rows;
    if a.cols != n || b.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "solve expects square system, got {}x{} with rhs {}",
            a.rows,
            a.cols,
            b.len()
        )));
    }
    let mut m = a.clone();
    let mut x = b.to_vec();
    let scale = m.data.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    let tiny = scale * T::epsilon() * T::of(n as f64);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m.get(i, col).norm().partial_cmp(&m.get(j, col).norm()).unwrap())
            .unwrap();
        if m.get(pivot, col).norm() <= tiny {
            return Err(Error::Singular);
        }
        if pivot != col {
            for j in 0..n {
                m.data.swap(col * n + j, pivot * n + j);
            }
            x.swap(col, pivot);
        }
        let d = m.get(col, col);
        for i in col + 1..n {
            let f = m.get(i, col) / d;
            if f.is_zero() {
                continue;
            }
            for j in col..n {
                let v = m.get(i, j) - f * m.get(col, j);
                m.set(i, j, v);
            }
            x[i] = x[i] - f * x[col];
        }
    }
    for i in (0..n).rev() {
        let s = (i + 1..n).fold(x[i], |acc, j| acc - m.get(i, j) * x[j]);
        x[i] = s / m.get(i, i);
    }
    Ok(x)
}

/// Least-squares solution of an overdetermined full-column-rank system via QR.
pub fn least_squares<T: Real>(a: &CMatrix<T>, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    if b.len() != a.rows || a.rows < a.cols {
        return Err(Error::ShapeMismatch(format!(
            "least squares expects tall system, got {}x{} with rhs {}",
            a.rows,
            a.cols,
            b.len()
        )));
    }
    let mut r = a.clone();
    let mut rhs = b.to_vec();
    let n = a.cols;
    let scale = r.data.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    let mut diag = Vec::with_capacity(n);
    for col in 0..n {
        diag.push(r.householder_step(col, Some(&mut rhs)));
    }
    let tiny = scale * T::epsilon() * T::of(a.rows as f64);
    let mut x = vec![Complex::zero(); n];
    for i in (0..n).rev() {
        if diag[i].norm() <= tiny {
            return Err(Error::Singular);
        }
        let s = (i + 1..n).fold(rhs[i], |acc, j| acc - r.get(i, j) * x[j]);
        x[i] = s / diag[i];
    }
    Ok(x)
}
