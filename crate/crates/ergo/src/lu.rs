//! LU factorization with partial pivoting, in complex arithmetic. Real
//! systems keep exactly-zero imaginary parts through the elimination.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub struct Lu {
    factors: Matrix,
    perm: Vec<usize>,
    sign_flips: usize,
    singular: bool,
}

impl Lu {
    pub fn factor(a: &Matrix) -> Result<Lu> {
        let n = a.require_square()?;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign_flips = 0usize;
        let mut singular = false;
        for k in 0..n {
            let mut p = k;
            let mut pmax = lu.get(k, k).norm();
            for i in k + 1..n {
                let v = lu.get(i, k).norm();
                if v > pmax {
                    pmax = v;
                    p = i;
                }
            }
            if pmax == 0.0 {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu.get(k, j);
                    lu.set(k, j, lu.get(p, j));
                    lu.set(p, j, tmp);
                }
                perm.swap(k, p);
                sign_flips += 1;
            }
            let pivot = lu.get(k, k);
            for i in k + 1..n {
                let m = lu.get(i, k) / pivot;
                lu.set(i, k, m);
                if m == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in k + 1..n {
                    let v = lu.get(i, j) - m * lu.get(k, j);
                    lu.set(i, j, v);
                }
            }
        }
        Ok(Lu {
            factors: lu,
            perm,
            sign_flips,
            singular,
        })
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn det(&self) -> Complex64 {
        if self.singular {
            return Complex64::new(0.0, 0.0);
        }
        let n = self.factors.rows();
        let mut d = if self.sign_flips % 2 == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(-1.0, 0.0)
        };
        for i in 0..n {
            d *= self.factors.get(i, i);
        }
        d
    }

    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.factors.rows();
        if b.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "rhs length {} vs system size {}",
                b.len(),
                n
            )));
        }
        if self.singular {
            return Err(Error::Internal("solve on singular LU factorization".into()));
        }
        let mut y: Vec<Complex64> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 1..n {
            for j in 0..i {
                let m = self.factors.get(i, j) * y[j];
                y[i] -= m;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let m = self.factors.get(i, j) * y[j];
                y[i] -= m;
            }
            y[i] /= self.factors.get(i, i);
        }
        Ok(y)
    }

    /// Real convenience path; requires a real factorization and rhs.
    pub fn solve_real(&self, b: &[f64]) -> Result<Vec<f64>> {
        let bc: Vec<Complex64> = b.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let x = self.solve(&bc)?;
        Ok(x.into_iter().map(|z| z.re).collect())
    }
}

/// det(A) via LU.
pub fn determinant(a: &Matrix) -> Result<Complex64> {
    Ok(Lu::factor(a)?.det())
}
