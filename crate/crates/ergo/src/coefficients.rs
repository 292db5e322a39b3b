//! Ergodicity coefficients: the norm-based family over a Jordan-selection
//! kernel (phi, mu, tau with a vector norm), the row-minima coefficient
//! tau(A, y) for matrices with a positive dominant left eigenvector, and the
//! subset-generalized tau_m in max and min variants.

use num_complex::Complex64;

use crate::eig::{self, sigma_max};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, StochasticMatrix};
use crate::norms::{box_norm, real_norm, vector_norm, InnerNorm, NormKind};
use crate::power;
use crate::qr::{self, RANK_TOL};
use crate::sampling::{complex_normal, derive_seed, rng_from, standard_normal};
use crate::simplex;

/// Relative residual gate on user-supplied dominant eigenvectors. The theory
/// assumes exact eigenvectors; numerically computed ones must pass within
/// this slack.
pub const EIGENVECTOR_GATE: f64 = 1e-6;

/// Largest dimension for the exact combinatorial One/Inf evaluations.
pub const EXACT_COMBINATORIAL_MAX_DIM: usize = 12;

/// Largest dimension for tau_m subset scans.
pub const TAU_M_MAX_DIM: usize = 20;

/// A subset nu of eigenvalues together with a full-column-rank basis of the
/// associated Jordan space. The Jordan blocks themselves are never formed.
#[derive(Debug, Clone)]
pub struct JordanSelection {
    w: Matrix,
    selected: Vec<Complex64>,
    rho_complement: Option<f64>,
}

impl JordanSelection {
    /// Build from an explicit basis; validates full column rank.
    pub fn new(w: Matrix, selected: Vec<Complex64>, rho_complement: Option<f64>) -> Result<Self> {
        let r = qr::rank(&w, RANK_TOL);
        if r < w.cols() {
            return Err(Error::RankDeficient {
                rank: r,
                cols: w.cols(),
            });
        }
        Ok(JordanSelection {
            w,
            selected,
            rho_complement,
        })
    }

    /// Infer the selected eigenvalues and the complement radius from the
    /// matrix itself: the restriction of A to range(W) is
    /// (W^*W)^{-1} W^* A W, whose spectrum is nu with multiplicity; the
    /// remaining eigenvalues of A give rho(nu-bar).
    pub fn from_invariant_basis(a: &Matrix, w: Matrix) -> Result<Self> {
        let n = a.require_square()?;
        if w.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "basis has {} rows for a {}x{} matrix",
                w.rows(),
                n,
                n
            )));
        }
        let r = qr::rank(&w, RANK_TOL);
        if r < w.cols() {
            return Err(Error::RankDeficient {
                rank: r,
                cols: w.cols(),
            });
        }
        let wh = w.adjoint();
        let gram = wh.mul(&w)?;
        let lu = crate::lu::Lu::factor(&gram)?;
        let aw = wh.mul(&a.mul(&w)?)?;
        // Solve gram * R = W^* A W column by column.
        let m = w.cols();
        let mut restriction = Matrix::zeros(m, m);
        for j in 0..m {
            let col = lu.solve(&aw.col(j))?;
            for i in 0..m {
                restriction.set(i, j, col[i]);
            }
        }
        let selected = eig::spectrum(&restriction)?.eigenvalues().to_vec();
        let full = eig::spectrum(a)?;
        // Remove the selected eigenvalues (greedy nearest match) from the
        // full spectrum; the complement radius is the largest leftover.
        let mut pool: Vec<Complex64> = full.eigenvalues().to_vec();
        for s in &selected {
            if let Some((idx, _)) = pool
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| (*a - s).norm().partial_cmp(&(*b - s).norm()).unwrap())
            {
                pool.remove(idx);
            }
        }
        let rho_complement = pool.iter().map(|z| z.norm()).fold(0.0, f64::max);
        Ok(JordanSelection {
            w,
            selected,
            rho_complement: Some(rho_complement),
        })
    }

    pub fn w(&self) -> &Matrix {
        &self.w
    }

    pub fn selected(&self) -> &[Complex64] {
        &self.selected
    }

    pub fn rho_complement(&self) -> Option<f64> {
        self.rho_complement
    }

    /// Check A W = W diag(selected) for diagonalizable constructions.
    pub fn validate_eigenbasis(&self, a: &Matrix, tol: f64) -> Result<()> {
        if self.selected.len() != self.w.cols() {
            return Err(Error::DimensionMismatch(
                "selected eigenvalue count differs from basis width".into(),
            ));
        }
        let aw = a.mul(&self.w)?;
        for j in 0..self.w.cols() {
            for i in 0..self.w.rows() {
                let want = self.w.get(i, j) * self.selected[j];
                if (aw.get(i, j) - want).norm() > tol {
                    return Err(Error::Internal(format!(
                        "basis column {j} is not an eigenvector within {tol}"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    ProjectedSvd,
    SupportEnumeration,
    VertexEnumeration,
    MonteCarlo,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::ProjectedSvd => "projected_svd",
            Method::SupportEnumeration => "support_enumeration",
            Method::VertexEnumeration => "vertex_enumeration",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

/// A computed coefficient with its certification metadata. Monte Carlo
/// values are lower bounds of the true maximum, never upper bounds.
#[derive(Debug, Clone)]
pub struct CoefficientReport {
    pub name: &'static str,
    pub value: f64,
    pub norm: Option<NormKind>,
    pub method: Method,
    pub samples: u64,
    pub certified_exact: bool,
}

/// Optimization domain for the kernel maximization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Real,
    Complex,
}

// ---------------------------------------------------------------------------
// Row-minima coefficients.
// ---------------------------------------------------------------------------

/// tau_{n-1}(S) = 1 - sum_i min_j s_ij, the classical proper coefficient.
pub fn tau_n1(s: &StochasticMatrix) -> f64 {
    1.0 - s.row_minima().iter().sum::<f64>()
}

fn deficit_matrix(s: &StochasticMatrix) -> Vec<Vec<f64>> {
    let n = s.n();
    let mins = s.row_minima();
    (0..n)
        .map(|i| (0..n).map(|j| s.entry(i, j) - mins[i]).collect())
        .collect()
}

/// tau_m(S): max over row subsets V of size m of the best per-column deficit
/// sum. For fixed column j the optimal V is the m largest deficits, so the
/// subset scan reduces to a sort per column.
pub fn tau_m(s: &StochasticMatrix, m: usize) -> Result<f64> {
    let n = s.n();
    if m < 1 || m > n {
        return Err(Error::MOutOfRange { m, n });
    }
    if n > TAU_M_MAX_DIM {
        return Err(Error::SizeGuard {
            n,
            max: TAU_M_MAX_DIM,
        });
    }
    let d = deficit_matrix(s);
    let mut best = 0.0f64;
    for j in 0..n {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| d[b][j].partial_cmp(&d[a][j]).unwrap());
        // Sum the selected rows in index order so the result is bit-identical
        // to the subset-enumeration route on the same subset.
        let mut top: Vec<usize> = idx[..m].to_vec();
        top.sort_unstable();
        let sum: f64 = top.iter().map(|&i| d[i][j]).sum();
        best = best.max(sum);
    }
    Ok(best)
}

/// Subset-enumeration route for tau_m, shared by the min variant and kept as
/// an independent cross-check of the sort shortcut.
pub fn tau_m_enumerated(s: &StochasticMatrix, m: usize, minimize_over_subsets: bool) -> Result<f64> {
    let n = s.n();
    if m < 1 || m > n {
        return Err(Error::MOutOfRange { m, n });
    }
    if n > TAU_M_MAX_DIM {
        return Err(Error::SizeGuard {
            n,
            max: TAU_M_MAX_DIM,
        });
    }
    let d = deficit_matrix(s);
    let mut result = if minimize_over_subsets {
        f64::INFINITY
    } else {
        f64::NEG_INFINITY
    };
    for_each_combination(n, m, |subset| {
        let mut col_best = f64::NEG_INFINITY;
        for j in 0..n {
            let sum: f64 = subset.iter().map(|&i| d[i][j]).sum();
            col_best = col_best.max(sum);
        }
        if minimize_over_subsets {
            result = result.min(col_best);
        } else {
            result = result.max(col_best);
        }
    });
    Ok(result)
}

/// The min-variant of tau_m: outer max over subsets replaced by min, inner
/// max over columns retained.
pub fn tau_m_min_variant(s: &StochasticMatrix, m: usize) -> Result<f64> {
    tau_m_enumerated(s, m, true)
}

/// tau(A, y) = rho(A) - sum_i (min_j y_j^{-1} a_ij) y_i for nonnegative A
/// with a strictly positive left dominant eigenvector y.
pub fn tau_haviv(a: &Matrix, y: &[f64]) -> Result<f64> {
    let n = a.require_square()?;
    a.require_real_nonnegative()?;
    if y.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "eigenvector length {} vs matrix size {}",
            y.len(),
            n
        )));
    }
    for (i, &v) in y.iter().enumerate() {
        if v <= 0.0 {
            return Err(Error::NonPositiveVector { index: i, value: v });
        }
    }
    let rho = eig::spectrum(a)?.spectral_radius();
    let residual = power::left_residual(a, y, rho)?;
    let scale: f64 = y.iter().sum();
    let gate = EIGENVECTOR_GATE * rho.max(f64::MIN_POSITIVE) * scale;
    if residual > gate {
        return Err(Error::ResidualGate { residual, gate });
    }
    let mut sum = 0.0;
    for i in 0..n {
        let row_min = (0..n)
            .map(|j| a.re(i, j) / y[j])
            .fold(f64::INFINITY, f64::min);
        sum += row_min * y[i];
    }
    Ok(rho - sum)
}

// ---------------------------------------------------------------------------
// Kernel-constrained norm maximization (phi, mu, tau with a vector norm).
// ---------------------------------------------------------------------------

/// phi(W_nu, A) = max ||x^* A|| over the unit ball of `kind` intersected
/// with ker W^*.
pub fn phi(
    sel: &JordanSelection,
    a: &Matrix,
    kind: NormKind,
    budget: u64,
    seed: u64,
) -> Result<CoefficientReport> {
    let n = a.require_square()?;
    if sel.w().rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "basis has {} rows for a {}x{} matrix",
            sel.w().rows(),
            n,
            n
        )));
    }
    let mut report = max_over_kernel(a, sel.w(), kind, Domain::Complex, budget, seed)?;
    report.name = "phi";
    Ok(report)
}

/// mu(x, A) = max ||y^T A|| over complex y with ||y|| <= 1 and y^T x = 0.
/// The bilinear constraint forces both real and imaginary parts of y off x,
/// so the feasible set is exactly ker W^* with W = [x].
pub fn mu(
    x: &[f64],
    a: &Matrix,
    kind: NormKind,
    budget: u64,
    seed: u64,
) -> Result<CoefficientReport> {
    perron_gate(a, x)?;
    let w = Matrix::column_from_real(x);
    let mut report = max_over_kernel(a, &w, kind, Domain::Complex, budget, seed)?;
    report.name = "mu";
    Ok(report)
}

/// tau(x, A) with a vector norm: as mu but over real y only.
pub fn tau_vecnorm(
    x: &[f64],
    a: &Matrix,
    kind: NormKind,
    budget: u64,
    seed: u64,
) -> Result<CoefficientReport> {
    perron_gate(a, x)?;
    let w = Matrix::column_from_real(x);
    let mut report = max_over_kernel(a, &w, kind, Domain::Real, budget, seed)?;
    report.name = "tau_vecnorm";
    Ok(report)
}

pub(crate) fn perron_gate(a: &Matrix, x: &[f64]) -> Result<()> {
    let n = a.require_square()?;
    a.require_real_nonnegative()?;
    if x.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "eigenvector length {} vs matrix size {}",
            x.len(),
            n
        )));
    }
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::NonPositiveVector {
            index: 0,
            value: 0.0,
        });
    }
    if let Some((i, &v)) = x.iter().enumerate().find(|(_, &v)| v < 0.0) {
        return Err(Error::NonPositiveVector { index: i, value: v });
    }
    let rho = eig::spectrum(a)?.spectral_radius();
    let residual = power::right_residual(a, x, rho)?;
    let scale: f64 = x.iter().sum();
    let gate = EIGENVECTOR_GATE * rho.max(f64::MIN_POSITIVE) * scale;
    if residual > gate {
        return Err(Error::ResidualGate { residual, gate });
    }
    Ok(())
}

/// Shared dispatch for the kernel-constrained maximization. Exposed so that
/// callers can run the generalized real maximization of the limit lemmas on
/// an arbitrary basis.
pub fn max_over_kernel(
    a: &Matrix,
    w: &Matrix,
    kind: NormKind,
    domain: Domain,
    budget: u64,
    seed: u64,
) -> Result<CoefficientReport> {
    let n = a.require_square()?;
    if w.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "basis rows {} vs matrix size {n}",
            w.rows()
        )));
    }
    let r = qr::rank(w, RANK_TOL);
    if r < w.cols() {
        return Err(Error::RankDeficient {
            rank: r,
            cols: w.cols(),
        });
    }
    let base = |value: f64, method: Method, samples: u64, certified: bool| CoefficientReport {
        name: "kernel_max",
        value,
        norm: Some(kind),
        method,
        samples,
        certified_exact: certified,
    };
    // Degenerate feasible set: only x = 0 when W is square nonsingular.
    if w.cols() == n {
        return Ok(base(0.0, Method::ClosedForm, 0, true));
    }
    let real_inputs = a.is_real() && w.is_real();

    // On the real domain the box lift of a norm coincides with the norm
    // itself, both in the constraint and in the objective (x^T A is real).
    let effective = match (domain, kind) {
        (Domain::Real, NormKind::Box(inner)) => inner.as_kind(),
        _ => kind,
    };

    match effective {
        NormKind::Two => {
            let value = projected_sigma_max(a, w)?;
            Ok(base(value, Method::ProjectedSvd, 0, true))
        }
        NormKind::One if real_inputs && n <= EXACT_COMBINATORIAL_MAX_DIM => {
            let (value, _) = exact_real_max(a, w, InnerNorm::One)?;
            Ok(base(value, Method::SupportEnumeration, 0, true))
        }
        NormKind::Inf if real_inputs && n <= EXACT_COMBINATORIAL_MAX_DIM => {
            let (value, _) = exact_real_max(a, w, InnerNorm::Inf)?;
            Ok(base(value, Method::VertexEnumeration, 0, true))
        }
        _ => {
            let value = sample_lower_bound(a, w, kind, domain, budget, seed)?;
            Ok(base(value, Method::MonteCarlo, budget, false))
        }
    }
}

/// sigma_max of the map c -> (Qc)^* A where Q spans ker W^*: the exact Two
/// norm answer on either domain.
fn projected_sigma_max(a: &Matrix, w: &Matrix) -> Result<f64> {
    let q = qr::complement_basis(w)?;
    let m = q.adjoint().mul(a)?;
    sigma_max(&m)
}

/// Exact real maximization of ||x^T A|| over the unit ball of `inner`
/// intersected with ker W^T, with the maximizer. Requires real A and W.
///
/// One norm: extreme points of the cross-polytope section have support of
/// size at most rank(W)+1 with a one-dimensional homogeneous solution set;
/// enumerate supports. Inf norm: 2n tiny LPs over the cube section, one per
/// column and sign. Two norm: projected singular pair.
pub fn exact_real_max(a: &Matrix, w: &Matrix, inner: InnerNorm) -> Result<(f64, Vec<f64>)> {
    let n = a.require_square()?;
    if !a.is_real() || !w.is_real() {
        return Err(Error::NotReal);
    }
    if w.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "basis rows {} vs matrix size {n}",
            w.rows()
        )));
    }
    if w.cols() >= n {
        return Ok((0.0, vec![0.0; n]));
    }
    match inner {
        InnerNorm::Two => {
            let q = qr::complement_basis(w)?;
            let m = q.adjoint().mul(a)?;
            let value = sigma_max(&m)?;
            let c = top_left_singular_vector(&m);
            let x: Vec<f64> = (0..n)
                .map(|i| {
                    (0..q.cols())
                        .map(|k| q.re(i, k) * c[k])
                        .sum::<f64>()
                })
                .collect();
            Ok((value, x))
        }
        InnerNorm::One => one_norm_max_real(a, w),
        InnerNorm::Inf => inf_norm_max_real(a, w),
    }
}

fn top_left_singular_vector(m: &Matrix) -> Vec<f64> {
    // Power iteration on the Gram matrix; deterministic start.
    let g = m.mul(&m.adjoint()).unwrap();
    let d = g.rows();
    let mut v = vec![1.0 / (d as f64).sqrt(); d];
    for _ in 0..500 {
        let mut nv = vec![0.0; d];
        for i in 0..d {
            for j in 0..d {
                nv[i] += g.re(i, j) * v[j];
            }
        }
        let norm = real_norm(&nv, InnerNorm::Two);
        if norm == 0.0 {
            return v;
        }
        for (t, s) in v.iter_mut().zip(&nv) {
            *t = s / norm;
        }
    }
    v
}

fn one_norm_max_real(a: &Matrix, w: &Matrix) -> Result<(f64, Vec<f64>)> {
    let n = a.rows();
    let m = w.cols();
    let wt = w.transpose();
    let max_support = (m + 1).min(n);
    let mut best = 0.0f64;
    let mut best_x = vec![0.0; n];
    for size in 1..=max_support {
        for_each_combination(n, size, |supp| {
            // m x size submatrix of W^T on the support.
            let mut sub = Matrix::zeros(m.max(1), size);
            if m > 0 {
                for (cj, &i) in supp.iter().enumerate() {
                    for r in 0..m {
                        sub.set(r, cj, wt.get(r, i));
                    }
                }
            }
            let kernel = if m == 0 {
                vec![(0..size)
                    .map(|k| if k == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
                    .collect::<Vec<_>>()]
            } else {
                qr::nullspace(&sub, RANK_TOL)
            };
            for v in kernel {
                let mut x = vec![0.0; n];
                for (k, &i) in supp.iter().enumerate() {
                    x[i] = v[k].re;
                }
                let l1 = real_norm(&x, InnerNorm::One);
                if l1 < 1e-12 {
                    continue;
                }
                for t in x.iter_mut() {
                    *t /= l1;
                }
                let val = row_image_norm(a, &x, InnerNorm::One);
                if val > best {
                    best = val;
                    best_x = x;
                }
            }
        });
    }
    Ok((best, best_x))
}

fn inf_norm_max_real(a: &Matrix, w: &Matrix) -> Result<(f64, Vec<f64>)> {
    let n = a.rows();
    let mut best = 0.0f64;
    let mut best_x = vec![0.0; n];
    for j in 0..n {
        for sign in [1.0, -1.0] {
            let c: Vec<f64> = (0..n).map(|i| sign * a.re(i, j)).collect();
            let (val, x) = simplex::maximize_over_box_section(&c, w)?;
            if val > best {
                best = val;
                best_x = x;
            }
        }
    }
    Ok((best, best_x))
}

/// ||x^T A|| for real x under a real norm.
fn row_image_norm(a: &Matrix, x: &[f64], inner: InnerNorm) -> f64 {
    let n = a.rows();
    let cols = a.cols();
    let mut r = vec![0.0; cols];
    for i in 0..n {
        let xi = x[i];
        if xi == 0.0 {
            continue;
        }
        for j in 0..cols {
            r[j] += xi * a.re(i, j);
        }
    }
    real_norm(&r, inner)
}

// ---------------------------------------------------------------------------
// Monte Carlo lower bounds.
// ---------------------------------------------------------------------------

const SAMPLE_CHUNK: u64 = 4096;

/// Seeded sampling lower bound: random Gaussian directions projected onto
/// ker W^* and renormalized to the unit sphere of `kind`. The result is
/// independent of the worker partitioning because every fixed-size chunk
/// derives its own RNG stream from (seed, chunk index).
pub fn sample_lower_bound(
    a: &Matrix,
    w: &Matrix,
    kind: NormKind,
    domain: Domain,
    budget: u64,
    seed: u64,
) -> Result<f64> {
    if budget == 0 {
        return Ok(0.0);
    }
    let q = qr::complement_basis(w)?;
    if q.max_abs() == 0.0 {
        return Ok(0.0);
    }
    let chunks: u64 = budget.div_ceil(SAMPLE_CHUNK);
    let workers = crate::worker_count().min(chunks as usize).max(1);
    let next = std::sync::atomic::AtomicU64::new(0);
    let result = std::sync::Mutex::new(0.0f64);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut local = 0.0f64;
                loop {
                    let c = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if c >= chunks {
                        break;
                    }
                    let count = SAMPLE_CHUNK.min(budget - c * SAMPLE_CHUNK);
                    let chunk_best =
                        sample_chunk(a, &q, kind, domain, count, derive_seed(seed, c));
                    local = local.max(chunk_best);
                }
                let mut guard = result.lock().unwrap();
                if local > *guard {
                    *guard = local;
                }
            });
        }
    });
    Ok(result.into_inner().unwrap())
}

fn sample_chunk(
    a: &Matrix,
    q: &Matrix,
    kind: NormKind,
    domain: Domain,
    count: u64,
    seed: u64,
) -> f64 {
    let mut rng = rng_from(seed);
    let n = q.rows();
    let d = q.cols();
    let mut best = 0.0f64;
    for _ in 0..count {
        // Draw coefficients in the complement basis directly; this is the
        // projected Gaussian up to the basis isometry.
        let coeff: Vec<Complex64> = (0..d)
            .map(|_| match domain {
                Domain::Complex => complex_normal(&mut rng),
                Domain::Real => Complex64::new(standard_normal(&mut rng), 0.0),
            })
            .collect();
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += q.get(i, k) * coeff[k];
            }
            x[i] = acc;
        }
        let norm = vector_norm(&x, kind);
        if norm < 1e-300 {
            continue;
        }
        for z in x.iter_mut() {
            *z /= norm;
        }
        let image = a.left_mul_adjoint(&x).unwrap();
        let val = vector_norm(&image, kind);
        if val > best {
            best = val;
        }
    }
    best
}

/// Box-norm sample of ||x^* A||_box over the box-norm unit sphere of
/// ker W^T, used by the box-lift equivalence checks.
pub fn sample_box_norm_values(
    a: &Matrix,
    w: &Matrix,
    inner: InnerNorm,
    count: u64,
    seed: u64,
) -> Result<Vec<f64>> {
    let q = qr::complement_basis(w)?;
    let n = q.rows();
    let d = q.cols();
    let mut rng = rng_from(seed);
    let mut out = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let coeff: Vec<Complex64> = (0..d).map(|_| complex_normal(&mut rng)).collect();
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            for k in 0..d {
                x[i] += q.get(i, k) * coeff[k];
            }
        }
        let norm = box_norm(&x, inner);
        if norm < 1e-300 {
            continue;
        }
        for z in x.iter_mut() {
            *z /= norm;
        }
        let image = a.left_mul_adjoint(&x)?;
        out.push(box_norm(&image, inner));
    }
    Ok(out)
}

/// Visit every k-subset of {0,...,n-1} in lexicographic order.
pub fn for_each_combination<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // Advance.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
