//! Power iteration for dominant eigenvectors of nonnegative matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Left dominant eigenvector of a real nonnegative square matrix: y >= 0,
/// ||y||_1 = 1, ||y^T A - rho y^T||_1 <= tol. Power iteration on A^T with
/// the spectral radius estimated by the iteration's own growth factor.
pub fn dominant_left_eigenvector(a: &Matrix, tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    let n = a.require_square()?;
    a.require_real_nonnegative()?;
    let mut y = vec![1.0 / n as f64; n];
    let mut rho = 0.0;
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        // z^T = y^T A
        let mut z = vec![0.0; n];
        for i in 0..n {
            let yi = y[i];
            if yi == 0.0 {
                continue;
            }
            for j in 0..n {
                z[j] += yi * a.re(i, j);
            }
        }
        let mass: f64 = z.iter().sum();
        if mass == 0.0 {
            return Err(Error::PowerNonConvergence {
                iters: max_iter,
                residual: f64::INFINITY,
            });
        }
        // Rayleigh-style quotient for nonnegative iterates with ||y||_1 = 1.
        rho = mass;
        residual = z
            .iter()
            .zip(&y)
            .map(|(zj, yj)| (zj - rho * yj).abs())
            .sum();
        for (yj, zj) in y.iter_mut().zip(&z) {
            *yj = zj / mass;
        }
        if residual <= tol * rho.max(f64::MIN_POSITIVE) {
            return Ok(y);
        }
    }
    // Residual is scaled the same way the convergence check is.
    Err(Error::PowerNonConvergence {
        iters: max_iter,
        residual: residual / rho.max(f64::MIN_POSITIVE),
    })
}

/// Right dominant eigenvector, same contract transposed.
pub fn dominant_right_eigenvector(a: &Matrix, tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    dominant_left_eigenvector(&a.transpose(), tol, max_iter)
}

/// ||y^T A - rho y^T||_1, the left-eigenvector residual used by the input
/// gates on the coefficient operations.
pub fn left_residual(a: &Matrix, y: &[f64], rho: f64) -> Result<f64> {
    let yc: Vec<Complex64> = y.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let z = a.left_mul_adjoint(&yc)?;
    Ok(z
        .iter()
        .zip(y)
        .map(|(zj, yj)| (zj.re - rho * yj).abs() + zj.im.abs())
        .sum())
}

/// ||A x - rho x||_1 for the right-eigenvector gates.
pub fn right_residual(a: &Matrix, x: &[f64], rho: f64) -> Result<f64> {
    let xc: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let z = a.mul_vec(&xc)?;
    Ok(z
        .iter()
        .zip(x)
        .map(|(zi, xi)| (zi.re - rho * xi).abs() + zi.im.abs())
        .sum())
}
