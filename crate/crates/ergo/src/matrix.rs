//! Dense matrices over the complex field, plus the validated stochastic wrapper.
//!
//! A single carrier type is used everywhere: a matrix is "real" when every
//! imaginary part is exactly zero, which products of real matrices preserve
//! bit-for-bit in IEEE arithmetic.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Matrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "entry count {} does not match {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Row-major real entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        let data = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Matrix::from_data(rows, cols, data)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::DimensionMismatch("no rows".into()));
        }
        let c = rows[0].len();
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Matrix::from_data(r, c, data)
    }

    /// Column vector from a real slice.
    pub fn column_from_real(entries: &[f64]) -> Self {
        Matrix::from_real(entries.len(), 1, entries).unwrap()
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

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn re(&self, i: usize, j: usize) -> f64 {
        self.get(i, j).re
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn adjoint(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).conj());
            }
        }
        t
    }

    pub fn scale(&self, c: Complex64) -> Matrix {
        let data = self.data.iter().map(|z| z * c).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// y = A x.
    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vec({})",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        let mut y = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self.get(i, j) * x[j];
            }
            y[i] = acc;
        }
        Ok(y)
    }

    /// r = x^* A, the row vector obtained by conjugate-transposed left action.
    pub fn left_mul_adjoint(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vec({})^* * {}x{}",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        let mut r = vec![Complex64::new(0.0, 0.0); self.cols];
        for i in 0..self.rows {
            let xi = x[i].conj();
            if xi == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..self.cols {
                r[j] += xi * self.get(i, j);
            }
        }
        Ok(r)
    }

    pub fn trace(&self) -> Complex64 {
        let n = self.rows.min(self.cols);
        (0..n).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Plain k-th power by repeated multiplication. Small k only; the limit
    /// studies use their own scaled iterations.
    pub fn pow(&self, k: u32) -> Result<Matrix> {
        let n = self.require_square()?;
        let mut out = Matrix::identity(n);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0 && z.re >= 0.0)
    }

    pub fn require_real_nonnegative(&self) -> Result<()> {
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.re(i, j);
                if v < 0.0 {
                    return Err(Error::NegativeEntry {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
        }
        Ok(())
    }

    /// Real parts of a row, for real-path algorithms.
    pub fn real_row(&self, i: usize) -> Vec<f64> {
        self.row(i).iter().map(|z| z.re).collect()
    }
}

/// Default column-sum tolerance at [`StochasticMatrix`] validation.
pub const STOCHASTIC_TOL: f64 = 1e-12;

/// Validated nonnegative column-stochastic matrix.
///
/// Entries are renormalized per column at construction so that the identity
/// `e^T S = e^T` holds to machine precision downstream; the raw input is kept
/// for reporting.
#[derive(Debug, Clone)]
pub struct StochasticMatrix {
    inner: Matrix,
    raw: Matrix,
    tol: f64,
}

impl StochasticMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        StochasticMatrix::with_tolerance(m, STOCHASTIC_TOL)
    }

    pub fn with_tolerance(m: Matrix, tol: f64) -> Result<Self> {
        let n = m.require_square()?;
        m.require_real_nonnegative()?;
        let mut inner = m.clone();
        for j in 0..n {
            let sum: f64 = (0..n).map(|i| m.re(i, j)).sum();
            if (sum - 1.0).abs() > tol {
                return Err(Error::NotStochastic { col: j, sum, tol });
            }
            for i in 0..n {
                inner.set(i, j, Complex64::new(m.re(i, j) / sum, 0.0));
            }
        }
        Ok(StochasticMatrix { inner, raw: m, tol })
    }

    pub fn n(&self) -> usize {
        self.inner.rows()
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.inner.re(i, j)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.inner
    }

    /// The input as supplied, before column renormalization.
    pub fn raw(&self) -> &Matrix {
        &self.raw
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Uniform matrix (1/n) e e^T, the unique rank-one fixed point of the
    /// proper coefficients.
    pub fn uniform(n: usize) -> Self {
        let m = Matrix::from_real(n, n, &vec![1.0 / n as f64; n * n]).unwrap();
        StochasticMatrix::new(m).unwrap()
    }

    /// Smallest entry of each row.
    pub fn row_minima(&self) -> Vec<f64> {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j)).fold(f64::INFINITY, f64::min))
            .collect()
    }

    /// max_i min_j s_ij, positive exactly when tau_{n-1} < 1.
    pub fn max_row_min(&self) -> f64 {
        self.row_minima().into_iter().fold(0.0, f64::max)
    }
}
