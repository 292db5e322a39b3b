//! Householder QR: full unitary factor for orthogonal-complement bases,
//! column pivoting for rank decisions, and small nullspace extraction.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Rank tolerance used for Jordan-basis validation.
pub const RANK_TOL: f64 = 1e-10;

/// Full QR of an n x m matrix (n >= m not required): returns (Q, R) with Q
/// n x n unitary and R n x m upper triangular.
pub fn qr_full(a: &Matrix) -> (Matrix, Matrix) {
    let n = a.rows();
    let m = a.cols();
    let mut r = a.clone();
    let mut q = Matrix::identity(n);
    for k in 0..m.min(n.saturating_sub(1)) {
        let mut v: Vec<Complex64> = (k..n).map(|i| r.get(i, k)).collect();
        let xnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if v[0].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            v[0] / v[0].norm()
        };
        let alpha = -phase * xnorm;
        v[0] -= alpha;
        let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sqr;
        // R := (I - tau v v^*) R on rows k..n.
        for j in k..m {
            let mut dot = Complex64::new(0.0, 0.0);
            for (idx, i) in (k..n).enumerate() {
                dot += v[idx].conj() * r.get(i, j);
            }
            dot *= tau;
            for (idx, i) in (k..n).enumerate() {
                let val = r.get(i, j) - v[idx] * dot;
                r.set(i, j, val);
            }
        }
        r.set(k, k, alpha);
        for i in k + 1..n {
            r.set(i, k, Complex64::new(0.0, 0.0));
        }
        // Q := Q (I - tau v v^*).
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (idx, j) in (k..n).enumerate() {
                dot += q.get(i, j) * v[idx];
            }
            dot *= tau;
            for (idx, j) in (k..n).enumerate() {
                let val = q.get(i, j) - dot * v[idx].conj();
                q.set(i, j, val);
            }
        }
    }
    (q, r)
}

/// Numerical rank via column-pivoted QR at tolerance `tol` relative to the
/// largest column norm.
pub fn rank(a: &Matrix, tol: f64) -> usize {
    pivoted_qr_q(a, tol).1
}

/// Column-pivoted Householder QR, accumulating the full unitary factor:
/// A Pi = Q R with rank decided at `tol`. The pivoting makes the leading
/// `rank` columns of Q a basis of range(A) even when leading columns of A
/// vanish.
fn pivoted_qr_q(a: &Matrix, tol: f64) -> (Matrix, usize) {
    let n = a.rows();
    let m = a.cols();
    let mut w = a.clone();
    let mut q = Matrix::identity(n);
    let mut rank = 0usize;
    let mut first_pivot = 0.0_f64;
    for k in 0..m.min(n) {
        // Pivot: remaining column with largest norm.
        let mut best = k;
        let mut best_norm = 0.0;
        for j in k..m {
            let norm: f64 = (k..n).map(|i| w.get(i, j).norm_sqr()).sum::<f64>().sqrt();
            if norm > best_norm {
                best_norm = norm;
                best = j;
            }
        }
        if k == 0 {
            first_pivot = best_norm;
        }
        if best_norm <= tol * first_pivot.max(1e-300) {
            break;
        }
        if best != k {
            for i in 0..n {
                let tmp = w.get(i, k);
                w.set(i, k, w.get(i, best));
                w.set(i, best, tmp);
            }
        }
        // Householder on column k.
        let mut v: Vec<Complex64> = (k..n).map(|i| w.get(i, k)).collect();
        let xnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let phase = if v[0].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            v[0] / v[0].norm()
        };
        let alpha = -phase * xnorm;
        v[0] -= alpha;
        let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr > 0.0 {
            let tau = 2.0 / vnorm_sqr;
            for j in k..m {
                let mut dot = Complex64::new(0.0, 0.0);
                for (idx, i) in (k..n).enumerate() {
                    dot += v[idx].conj() * w.get(i, j);
                }
                dot *= tau;
                for (idx, i) in (k..n).enumerate() {
                    let val = w.get(i, j) - v[idx] * dot;
                    w.set(i, j, val);
                }
            }
            w.set(k, k, alpha);
            for i in k + 1..n {
                w.set(i, k, Complex64::new(0.0, 0.0));
            }
            // Q := Q (I - tau v v^*).
            for i in 0..n {
                let mut dot = Complex64::new(0.0, 0.0);
                for (idx, j) in (k..n).enumerate() {
                    dot += q.get(i, j) * v[idx];
                }
                dot *= tau;
                for (idx, j) in (k..n).enumerate() {
                    let val = q.get(i, j) - dot * v[idx].conj();
                    q.set(i, j, val);
                }
            }
        }
        rank += 1;
    }
    (q, rank)
}

/// Orthonormal basis (n x (n-m)) of the orthogonal complement of range(W),
/// i.e. of ker W^*. Errors if W is rank deficient at [`RANK_TOL`].
pub fn complement_basis(w: &Matrix) -> Result<Matrix> {
    let n = w.rows();
    let m = w.cols();
    if m > n {
        return Err(Error::DimensionMismatch(format!(
            "basis has more columns ({m}) than rows ({n})"
        )));
    }
    let r = rank(w, RANK_TOL);
    if r < m {
        return Err(Error::RankDeficient { rank: r, cols: m });
    }
    let (q, _) = qr_full(w);
    let mut out = Matrix::zeros(n, (n - m).max(1));
    if n == m {
        // Empty complement; callers treat this as the degenerate feasible
        // set {0}. Return a zero column so dimensions stay positive.
        return Ok(Matrix::zeros(n, 1));
    }
    for i in 0..n {
        for j in 0..n - m {
            out.set(i, j, q.get(i, m + j));
        }
    }
    Ok(out)
}

/// Basis of the nullspace of a small matrix B, as a list of vectors (empty
/// when B has full column rank). Computed from the full QR of B^*: the
/// trailing columns of Q span ker B.
pub fn nullspace(b: &Matrix, tol: f64) -> Vec<Vec<Complex64>> {
    let cols = b.cols();
    let (q, r) = pivoted_qr_q(&b.adjoint(), tol);
    if r == cols {
        return Vec::new();
    }
    (r..cols).map(|j| q.col(j)).collect()
}
