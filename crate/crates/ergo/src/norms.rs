//! Vector norms over C^n: the 1/2/inf norms and the box lift of a real norm
//! to complex vectors, `sup_a ||Re x cos a + Im x sin a||`.

use num_complex::Complex64;

/// Inner norm admissible under the box lift. The box norm may not nest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InnerNorm {
    One,
    Two,
    Inf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormKind {
    One,
    Two,
    Inf,
    Box(InnerNorm),
}

impl NormKind {
    pub fn label(&self) -> &'static str {
        match self {
            NormKind::One => "one",
            NormKind::Two => "two",
            NormKind::Inf => "inf",
            NormKind::Box(InnerNorm::One) => "box(one)",
            NormKind::Box(InnerNorm::Two) => "box(two)",
            NormKind::Box(InnerNorm::Inf) => "box(inf)",
        }
    }
}

impl InnerNorm {
    pub fn as_kind(self) -> NormKind {
        match self {
            InnerNorm::One => NormKind::One,
            InnerNorm::Two => NormKind::Two,
            InnerNorm::Inf => NormKind::Inf,
        }
    }
}

/// ||x|| for non-empty x.
pub fn vector_norm(x: &[Complex64], kind: NormKind) -> f64 {
    assert!(!x.is_empty(), "vector_norm on empty vector");
    match kind {
        NormKind::One => x.iter().map(|z| z.norm()).sum(),
        NormKind::Two => x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
        NormKind::Inf => x.iter().map(|z| z.norm()).fold(0.0, f64::max),
        NormKind::Box(inner) => box_norm(x, inner),
    }
}

pub fn real_norm(x: &[f64], inner: InnerNorm) -> f64 {
    match inner {
        InnerNorm::One => x.iter().map(|v| v.abs()).sum(),
        InnerNorm::Two => x.iter().map(|v| v * v).sum::<f64>().sqrt(),
        InnerNorm::Inf => x.iter().map(|v| v.abs()).fold(0.0, f64::max),
    }
}

/// Absolute tolerance of the grid-plus-golden-section maximization used for
/// the One/Inf inner norms.
pub const BOX_NORM_TOL: f64 = 1e-10;
const BOX_GRID_POINTS: usize = 720;

/// The box norm `sup_a ||Re x cos a + Im x sin a||`.
///
/// Exact for real x (the sup is |cos a| ||x||) and for the Two inner norm
/// (largest singular value of the n x 2 real matrix [Re x, Im x]); the
/// One/Inf inner norms are maximized numerically over the period.
pub fn box_norm(x: &[Complex64], inner: InnerNorm) -> f64 {
    assert!(!x.is_empty(), "box_norm on empty vector");
    let re: Vec<f64> = x.iter().map(|z| z.re).collect();
    let im: Vec<f64> = x.iter().map(|z| z.im).collect();
    if im.iter().all(|&v| v == 0.0) {
        return real_norm(&re, inner);
    }
    if re.iter().all(|&v| v == 0.0) {
        return real_norm(&im, inner);
    }
    match inner {
        InnerNorm::Two => {
            // Largest eigenvalue of the 2x2 Gram matrix of [Re x, Im x].
            let g11: f64 = re.iter().map(|v| v * v).sum();
            let g22: f64 = im.iter().map(|v| v * v).sum();
            let g12: f64 = re.iter().zip(&im).map(|(a, b)| a * b).sum();
            let mid = 0.5 * (g11 + g22);
            let rad = (0.25 * (g11 - g22) * (g11 - g22) + g12 * g12).sqrt();
            (mid + rad).max(0.0).sqrt()
        }
        InnerNorm::One | InnerNorm::Inf => {
            let f = |alpha: f64| {
                let v: Vec<f64> = re
                    .iter()
                    .zip(&im)
                    .map(|(r, i)| r * alpha.cos() + i * alpha.sin())
                    .collect();
                real_norm(&v, inner)
            };
            // The objective has period pi up to sign; scan a full turn anyway,
            // then refine around the best grid point.
            let step = 2.0 * std::f64::consts::PI / BOX_GRID_POINTS as f64;
            let mut best_a = 0.0;
            let mut best = f(0.0);
            for k in 1..BOX_GRID_POINTS {
                let a = k as f64 * step;
                let v = f(a);
                if v > best {
                    best = v;
                    best_a = a;
                }
            }
            golden_section_max(f, best_a - step, best_a + step, BOX_NORM_TOL).1
        }
    }
}

/// Golden-section search for the maximum of a unimodal function on [a, b].
/// Returns (argmax, max).
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid).max(fc).max(fd))
}
