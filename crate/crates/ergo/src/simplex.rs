//! Compact dense two-phase simplex for the tiny box LPs behind the exact
//! Inf-norm coefficient evaluation:
//!
//!   maximize c^T x   subject to   W^T x = 0,  -1 <= x_i <= 1.
//!
//! Shifted to standard form with u = x + e in [0, 2]^n, slacks for the upper
//! bounds, and artificials for the equality rows. Bland's rule, so the
//! iteration cannot cycle.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

const EPS: f64 = 1e-11;

/// Returns (max value, maximizer x) of c^T x over [-1,1]^n intersected with
/// ker W^T. W is n x m real, full column rank not required.
pub fn maximize_over_box_section(c: &[f64], w: &Matrix) -> Result<(f64, Vec<f64>)> {
    let n = c.len();
    let m = w.cols();
    if w.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "objective length {} vs constraint rows {}",
            n,
            w.rows()
        )));
    }
    // Standard-form data: variables [u_0..u_{n-1}, s_0..s_{n-1}], rows are
    // m equalities W^T u = W^T e followed by n bound rows u_i + s_i = 2.
    let rows = m + n;
    let cols = 2 * n;
    let mut a = vec![0.0; rows * cols];
    let mut b = vec![0.0; rows];
    for r in 0..m {
        let mut rhs = 0.0;
        for i in 0..n {
            a[r * cols + i] = w.re(i, r);
            rhs += w.re(i, r);
        }
        b[r] = rhs;
    }
    for i in 0..n {
        let r = m + i;
        a[r * cols + i] = 1.0;
        a[r * cols + n + i] = 1.0;
        b[r] = 2.0;
    }
    // Make all rhs nonnegative before adding artificials.
    for r in 0..rows {
        if b[r] < 0.0 {
            b[r] = -b[r];
            for j in 0..cols {
                a[r * cols + j] = -a[r * cols + j];
            }
        }
    }
    let mut objective = vec![0.0; cols];
    for i in 0..n {
        objective[i] = c[i];
    }

    let mut tab = Tableau::new(a, b, rows, cols);
    tab.phase_one()?;
    let value_shift: f64 = c.iter().sum::<f64>(); // c^T x = c^T u - c^T e
    let val = tab.phase_two(&objective)?;
    let u = tab.primal_solution();
    let x: Vec<f64> = (0..n).map(|i| (u[i] - 1.0).clamp(-1.0, 1.0)).collect();
    Ok((val - value_shift, x))
}

struct Tableau {
    /// rows x (cols + artificials) coefficient matrix, dense row-major.
    a: Vec<f64>,
    b: Vec<f64>,
    rows: usize,
    cols: usize,
    total: usize,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(a0: Vec<f64>, b: Vec<f64>, rows: usize, cols: usize) -> Tableau {
        let total = cols + rows;
        let mut a = vec![0.0; rows * total];
        for r in 0..rows {
            a[r * total..r * total + cols].copy_from_slice(&a0[r * cols..(r + 1) * cols]);
            a[r * total + cols + r] = 1.0; // artificial
        }
        let basis = (cols..cols + rows).collect();
        Tableau {
            a,
            b,
            rows,
            cols,
            total,
            basis,
        }
    }

    fn phase_one(&mut self) -> Result<()> {
        // Minimize the sum of artificials == maximize its negation.
        let mut obj = vec![0.0; self.total];
        for j in self.cols..self.total {
            obj[j] = -1.0;
        }
        let val = self.optimize(&obj, true)?;
        if val < -1e-7 {
            return Err(Error::Internal(format!(
                "box LP infeasible (phase-1 objective {val}); constraint matrix inconsistent"
            )));
        }
        // Pivot any leftover artificial out of the basis where possible.
        for r in 0..self.rows {
            if self.basis[r] >= self.cols {
                if let Some(j) = (0..self.cols)
                    .find(|&j| self.a[r * self.total + j].abs() > EPS)
                {
                    self.pivot(r, j);
                }
            }
        }
        Ok(())
    }

    fn phase_two(&mut self, c: &[f64]) -> Result<f64> {
        let mut obj = vec![0.0; self.total];
        obj[..self.cols].copy_from_slice(c);
        self.optimize(&obj, false)
    }

    /// Maximize obj over the current feasible basis; returns the optimum.
    fn optimize(&mut self, obj: &[f64], allow_artificials: bool) -> Result<f64> {
        let limit = 10_000;
        for _ in 0..limit {
            // Reduced costs via the basic objective row.
            let mut y = vec![0.0; self.rows]; // multipliers: c_B per row
            for r in 0..self.rows {
                y[r] = obj[self.basis[r]];
            }
            // Bland: first improving column.
            let scan_end = if allow_artificials { self.total } else { self.cols };
            let mut entering = None;
            for j in 0..scan_end {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = obj[j];
                for r in 0..self.rows {
                    reduced -= y[r] * self.a[r * self.total + j];
                }
                if reduced > EPS {
                    entering = Some(j);
                    break;
                }
            }
            let j = match entering {
                Some(j) => j,
                None => {
                    let mut val = 0.0;
                    for r in 0..self.rows {
                        val += obj[self.basis[r]] * self.b[r];
                    }
                    return Ok(val);
                }
            };
            // Ratio test, Bland ties by smallest basis index.
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let coef = self.a[r * self.total + j];
                if coef > EPS {
                    let ratio = self.b[r] / coef;
                    match leave {
                        None => leave = Some((r, ratio)),
                        Some((lr, lratio)) => {
                            if ratio < lratio - EPS
                                || (ratio < lratio + EPS && self.basis[r] < self.basis[lr])
                            {
                                leave = Some((r, ratio));
                            }
                        }
                    }
                }
            }
            let (r, _) = leave.ok_or_else(|| {
                Error::Internal("box LP unbounded; the feasible set is a bounded polytope".into())
            })?;
            self.pivot(r, j);
        }
        Err(Error::Internal("simplex iteration limit reached".into()))
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let piv = self.a[r * self.total + j];
        let inv = 1.0 / piv;
        for col in 0..self.total {
            self.a[r * self.total + col] *= inv;
        }
        self.b[r] *= inv;
        for row in 0..self.rows {
            if row == r {
                continue;
            }
            let f = self.a[row * self.total + j];
            if f == 0.0 {
                continue;
            }
            for col in 0..self.total {
                self.a[row * self.total + col] -= f * self.a[r * self.total + col];
            }
            self.b[row] -= f * self.b[r];
        }
        self.basis[r] = j;
    }

    fn primal_solution(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.cols];
        for r in 0..self.rows {
            if self.basis[r] < self.cols {
                x[self.basis[r]] = self.b[r];
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unconstrained_box_max_is_l1_norm() {
        // No equality constraints: max c^T x over the cube is ||c||_1.
        let w = Matrix::zeros(3, 1); // zero column: constraint 0 = 0
        let c = [1.0, -2.0, 3.0];
        let (val, x) = maximize_over_box_section(&c, &w).unwrap();
        assert!((val - 6.0).abs() < 1e-9, "val {val}");
        assert!((x[0] - 1.0).abs() < 1e-9);
        assert!((x[1] + 1.0).abs() < 1e-9);
    }

    #[test]
    fn sum_zero_constraint() {
        // max x1 + x2 + x3 with sum(x) = 0 over the cube: optimum 2 - 1... no:
        // objective equals the constraint, so the max is 0.
        let w = Matrix::from_real_rows(&[&[1.0], &[1.0], &[1.0]]).unwrap();
        let c = [1.0, 1.0, 1.0];
        let (val, _) = maximize_over_box_section(&c, &w).unwrap();
        assert!(val.abs() < 1e-9, "val {val}");

        // max x1 - x3 with sum(x) = 0: take x = (1, 0, -1) -> 2.
        let c = [1.0, 0.0, -1.0];
        let (val, x) = maximize_over_box_section(&c, &w).unwrap();
        assert!((val - 2.0).abs() < 1e-9, "val {val}");
        let s: f64 = x.iter().sum();
        assert!(s.abs() < 1e-9);
    }

    #[test]
    fn brute_force_cross_check() {
        // Random-ish fixed instance, oracle = dense grid over the cube
        // section via enumeration of the two free coordinates.
        let w = Matrix::from_real_rows(&[&[1.0], &[-2.0], &[0.5]]).unwrap();
        let c = [0.7, 0.3, -1.1];
        let (val, x) = maximize_over_box_section(&c, &w).unwrap();
        // Feasibility of the reported maximizer.
        let dot: f64 = (0..3).map(|i| w.re(i, 0) * x[i]).sum();
        assert!(dot.abs() < 1e-8);
        let mut oracle = f64::NEG_INFINITY;
        let steps = 400;
        for a in 0..=steps {
            for b in 0..=steps {
                let x1 = -1.0 + 2.0 * a as f64 / steps as f64;
                let x2 = -1.0 + 2.0 * b as f64 / steps as f64;
                // Solve the constraint for x3.
                let x3 = -(w.re(0, 0) * x1 + w.re(1, 0) * x2) / w.re(2, 0);
                if x3.abs() <= 1.0 {
                    oracle = oracle.max(c[0] * x1 + c[1] * x2 + c[2] * x3);
                }
            }
        }
        assert!(val >= oracle - 1e-6, "val {val}, oracle {oracle}");
        assert!(val <= oracle + 0.05, "val {val}, oracle {oracle}");
    }
}
