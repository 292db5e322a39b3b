//! Dense spectrum computation: Hessenberg reduction followed by the shifted
//! QR iteration, in complex arithmetic throughout so real and complex inputs
//! share one path.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Desk-scale guard on the eigensolver.
pub const MAX_EIG_DIM: usize = 64;

const MAX_SWEEPS_PER_EIG: usize = 60;

/// All eigenvalues of a square matrix, sorted by non-increasing modulus,
/// ties broken by non-increasing real part, then non-increasing imaginary
/// part.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<Complex64>,
    moduli: Vec<f64>,
    n: usize,
}

impl Spectrum {
    fn from_unsorted(mut eigs: Vec<Complex64>) -> Self {
        eigs.sort_by(|a, b| {
            b.norm()
                .partial_cmp(&a.norm())
                .unwrap()
                .then(b.re.partial_cmp(&a.re).unwrap())
                .then(b.im.partial_cmp(&a.im).unwrap())
        });
        let moduli = eigs.iter().map(|z| z.norm()).collect();
        let n = eigs.len();
        Spectrum {
            eigenvalues: eigs,
            moduli,
            n,
        }
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn moduli(&self) -> &[f64] {
        &self.moduli
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spectral_radius(&self) -> f64 {
        self.moduli[0]
    }

    /// |lambda_k| with 1-based k, following the modulus ordering.
    pub fn modulus_of(&self, k: usize) -> f64 {
        self.moduli[k - 1]
    }

    /// Largest modulus among eigenvalues different from rho, i.e. the
    /// subdominant modulus after removing every copy of the spectral radius
    /// eigenvalue (matched within `tol`).
    pub fn subdominant_modulus(&self, tol: f64) -> f64 {
        // rho(A) is itself an eigenvalue for the matrices of interest; drop
        // every eigenvalue equal to the dominant one as a complex number.
        let dominant = self.eigenvalues[0];
        self.eigenvalues
            .iter()
            .filter(|z| (*z - dominant).norm() > tol)
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues via Hessenberg + shifted QR.
pub fn spectrum(a: &Matrix) -> Result<Spectrum> {
    let n = a.require_square()?;
    if n > MAX_EIG_DIM {
        return Err(Error::SizeGuard { n, max: MAX_EIG_DIM });
    }
    if n == 1 {
        return Ok(Spectrum::from_unsorted(vec![a.get(0, 0)]));
    }
    let mut h = a.clone();
    hessenberg_in_place(&mut h);
    let eigs = qr_eigenvalues(&mut h, f64::EPSILON)?;
    Ok(Spectrum::from_unsorted(eigs))
}

/// Same as [`spectrum`] but with a tightened deflation threshold; used to
/// recheck borderline conjecture findings.
pub fn spectrum_refined(a: &Matrix) -> Result<Spectrum> {
    let n = a.require_square()?;
    if n > MAX_EIG_DIM {
        return Err(Error::SizeGuard { n, max: MAX_EIG_DIM });
    }
    if n == 1 {
        return Ok(Spectrum::from_unsorted(vec![a.get(0, 0)]));
    }
    let mut h = a.clone();
    hessenberg_in_place(&mut h);
    let eigs = qr_eigenvalues(&mut h, f64::EPSILON * 0.25)?;
    Ok(Spectrum::from_unsorted(eigs))
}

fn hessenberg_in_place(h: &mut Matrix) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k, rows k+1..n.
        let mut x: Vec<Complex64> = (k + 1..n).map(|i| h.get(i, k)).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * xnorm;
        x[0] -= alpha;
        let vnorm_sqr: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sqr;

        // H := (I - tau v v^*) H, rows k+1..n.
        for j in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (idx, i) in (k + 1..n).enumerate() {
                dot += x[idx].conj() * h.get(i, j);
            }
            dot *= tau;
            for (idx, i) in (k + 1..n).enumerate() {
                let v = h.get(i, j) - x[idx] * dot;
                h.set(i, j, v);
            }
        }
        // H := H (I - tau v v^*), cols k+1..n.
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (idx, j) in (k + 1..n).enumerate() {
                dot += h.get(i, j) * x[idx];
            }
            dot *= tau;
            for (idx, j) in (k + 1..n).enumerate() {
                let v = h.get(i, j) - dot * x[idx].conj();
                h.set(i, j, v);
            }
        }
        // Zero out the eliminated entries explicitly.
        h.set(k + 1, k, alpha);
        for i in k + 2..n {
            h.set(i, k, Complex64::new(0.0, 0.0));
        }
    }
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    // Eigenvalue of [[a,b],[c,d]] closest to d.
    let t = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (t * t - det).sqrt();
    let l1 = t + disc;
    let l2 = t - disc;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn qr_eigenvalues(h: &mut Matrix, defl_eps: f64) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let mut eigs: Vec<Complex64> = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iters_this_eig = 0usize;
    loop {
        // Deflate trailing converged eigenvalues.
        loop {
            if hi == 0 {
                eigs.push(h.get(0, 0));
                return Ok(eigs);
            }
            let sub = h.get(hi, hi - 1).norm();
            let scale = h.get(hi - 1, hi - 1).norm() + h.get(hi, hi).norm();
            if sub <= defl_eps * scale.max(f64::MIN_POSITIVE) {
                h.set(hi, hi - 1, Complex64::new(0.0, 0.0));
                eigs.push(h.get(hi, hi));
                hi -= 1;
                iters_this_eig = 0;
            } else {
                break;
            }
        }
        // Find the start of the active unreduced block.
        let mut lo = hi;
        while lo > 0 {
            let sub = h.get(lo, lo - 1).norm();
            let scale = h.get(lo - 1, lo - 1).norm() + h.get(lo, lo).norm();
            if sub <= defl_eps * scale.max(f64::MIN_POSITIVE) {
                h.set(lo, lo - 1, Complex64::new(0.0, 0.0));
                break;
            }
            lo -= 1;
        }

        iters_this_eig += 1;
        if iters_this_eig > MAX_SWEEPS_PER_EIG {
            return Err(Error::NonConvergence {
                sweeps: MAX_SWEEPS_PER_EIG,
            });
        }
        let sigma = if iters_this_eig % 12 == 0 {
            // Exceptional shift to break symmetric stalls.
            h.get(hi, hi) + Complex64::new(1.5 * h.get(hi, hi - 1).norm(), 0.0)
        } else if hi - lo >= 1 {
            wilkinson_shift(
                h.get(hi - 1, hi - 1),
                h.get(hi - 1, hi),
                h.get(hi, hi - 1),
                h.get(hi, hi),
            )
        } else {
            h.get(hi, hi)
        };

        qr_step(h, lo, hi, sigma);
    }
}

/// One explicit single-shift QR sweep on the active block [lo, hi].
fn qr_step(h: &mut Matrix, lo: usize, hi: usize, sigma: Complex64) {
    let n = h.rows();
    for i in lo..=hi {
        let v = h.get(i, i) - sigma;
        h.set(i, i, v);
    }
    // Givens rotations eliminating the subdiagonal (rows), stored for the RQ
    // pass (columns).
    let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
    for i in lo..hi {
        let a = h.get(i, i);
        let b = h.get(i + 1, i);
        let (c, s) = givens(a, b);
        rots.push((c, s));
        // Apply [c s; -conj(s) c] to rows i, i+1. Column lo-1 carries the
        // subdiagonal entry coupling the block to the deflated part above.
        for j in lo.saturating_sub(1)..n {
            let hi_j = h.get(i, j);
            let hip_j = h.get(i + 1, j);
            h.set(i, j, hi_j * c + hip_j * s);
            h.set(i + 1, j, -hi_j * s.conj() + hip_j * c);
        }
    }
    for (k, (c, s)) in rots.iter().enumerate() {
        let i = lo + k;
        // Right-multiply by the adjoint rotation on columns i, i+1.
        let top = (i + 2).min(hi + 1);
        for r in 0..top {
            let h_ri = h.get(r, i);
            let h_rip = h.get(r, i + 1);
            h.set(r, i, h_ri * *c + h_rip * s.conj());
            h.set(r, i + 1, -h_ri * *s + h_rip * *c);
        }
    }
    for i in lo..=hi {
        let v = h.get(i, i) + sigma;
        h.set(i, i, v);
    }
}

/// Complex Givens rotation with real cosine: G [a; b] = [r; 0].
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let r = an.hypot(bn);
    let c = an / r;
    let s = (a / an) * b.conj() / r;
    (c, s)
}

/// Largest eigenvalue of a Hermitian positive semidefinite matrix, clamped at
/// zero. Used for singular values of projected maps.
pub fn largest_psd_eigenvalue(g: &Matrix) -> Result<f64> {
    let sp = spectrum(g)?;
    Ok(sp
        .eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(0.0, f64::max))
}

/// Largest singular value of a rectangular complex matrix, via the Gram
/// matrix on the smaller side.
pub fn sigma_max(m: &Matrix) -> Result<f64> {
    let g = if m.rows() <= m.cols() {
        m.mul(&m.adjoint())?
    } else {
        m.adjoint().mul(m)?
    };
    Ok(largest_psd_eigenvalue(&g)?.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_spectrum() {
        let a = Matrix::from_real_rows(&[
            &[1.0, 0.0, 0.0],
            &[0.0, 0.5, 0.0],
            &[0.0, 0.0, 0.25],
        ])
        .unwrap();
        let sp = spectrum(&a).unwrap();
        let m = sp.moduli();
        assert!((m[0] - 1.0).abs() < 1e-12);
        assert!((m[1] - 0.5).abs() < 1e-12);
        assert!((m[2] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn counterexample_matrix_eigenvalues() {
        let s = crate::test_matrices::a3();
        let sp = spectrum(s.matrix()).unwrap();
        // Column-stochastic: dominant eigenvalue 1.
        assert!((sp.eigenvalues()[0] - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        // Two significant figures reported for |lambda_3|.
        assert!((sp.modulus_of(3) - 0.064).abs() < 5e-3);
        // Trace identity: lambda_2 + lambda_3 = trace - 1.
        let sum23 = sp.eigenvalues()[1] + sp.eigenvalues()[2];
        assert!((sum23 - Complex64::new(0.73 - 1.0, 0.0)).norm() < 1e-10);
        // Full values against the 3x3 characteristic-polynomial root oracle.
        let roots = cubic_roots_oracle(s.matrix());
        for (got, want) in sp.moduli().iter().zip(roots.iter()) {
            assert!((got - want).abs() < 1e-10, "got {got}, oracle {want}");
        }
    }

    /// Independent oracle: roots of the characteristic polynomial of a real
    /// 3x3 matrix by the trigonometric cubic formula; returns sorted moduli.
    fn cubic_roots_oracle(a: &Matrix) -> Vec<f64> {
        let m = |i: usize, j: usize| a.re(i, j);
        let tr = m(0, 0) + m(1, 1) + m(2, 2);
        // Sum of principal 2x2 minors.
        let p = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)
            + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)
            + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
        let det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        // lambda^3 - tr lambda^2 + p lambda - det = 0; depressed cubic.
        let b = -tr;
        let c = p;
        let d = -det;
        let q = (3.0 * c - b * b) / 9.0;
        let r = (9.0 * b * c - 27.0 * d - 2.0 * b * b * b) / 54.0;
        let disc = q * q * q + r * r;
        let mut roots: Vec<f64> = if disc <= 0.0 {
            let theta = (r / (-q * q * q).sqrt()).clamp(-1.0, 1.0).acos();
            let t = 2.0 * (-q).sqrt();
            (0..3)
                .map(|k| {
                    t * ((theta + 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos() - b / 3.0
                })
                .collect()
        } else {
            panic!("oracle expects three real roots for this fixture");
        };
        roots.sort_by(|x, y| y.abs().partial_cmp(&x.abs()).unwrap());
        roots.into_iter().map(|x| x.abs()).collect()
    }

    #[test]
    fn complex_matrix_spectrum() {
        // Upper-triangular complex matrix: eigenvalues on the diagonal.
        let i = Complex64::new(0.0, 1.0);
        let a = Matrix::from_data(
            2,
            2,
            vec![
                Complex64::new(1.0, 1.0),
                Complex64::new(3.0, -2.0),
                Complex64::new(0.0, 0.0),
                2.0 * i,
            ],
        )
        .unwrap();
        let sp = spectrum(&a).unwrap();
        assert!(sp
            .eigenvalues()
            .iter()
            .any(|z| (z - Complex64::new(1.0, 1.0)).norm() < 1e-10));
        assert!(sp.eigenvalues().iter().any(|z| (z - 2.0 * i).norm() < 1e-10));
    }

    #[test]
    fn rotation_has_complex_pair() {
        let a = Matrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        let sp = spectrum(&a).unwrap();
        assert!((sp.moduli()[0] - 1.0).abs() < 1e-12);
        assert!(sp.eigenvalues()[0].im.abs() > 0.9);
    }

    #[test]
    fn size_guard() {
        let a = Matrix::zeros(65, 65);
        assert!(matches!(spectrum(&a), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn sigma_max_of_known_matrix() {
        let m = Matrix::from_real_rows(&[&[3.0, 0.0], &[0.0, 4.0]]).unwrap();
        assert!((sigma_max(&m).unwrap() - 4.0).abs() < 1e-10);
    }
}
