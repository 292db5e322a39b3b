//! Property tests for the structural invariants: norm axioms, spectral
//! identities, coefficient monotonicity, and the bound chains.

use ergo::coefficients::{self, Domain, JordanSelection};
use ergo::eig;
use ergo::sampling::{complex_normal, random_stochastic, rng_from};
use ergo::{
    box_norm, graph, lu, tau_haviv, tau_m, tau_m_min_variant, tau_n1, vector_norm, InnerNorm,
    Matrix, NormKind, StochasticMatrix,
};
use num_complex::Complex64;
use proptest::prelude::*;

const ALL_KINDS: [NormKind; 6] = [
    NormKind::One,
    NormKind::Two,
    NormKind::Inf,
    NormKind::Box(InnerNorm::One),
    NormKind::Box(InnerNorm::Two),
    NormKind::Box(InnerNorm::Inf),
];

fn complex_vector(seed: u64, n: usize) -> Vec<Complex64> {
    let mut rng = rng_from(seed);
    (0..n).map(|_| complex_normal(&mut rng)).collect()
}

fn random_real_matrix(seed: u64, n: usize) -> Matrix {
    let mut rng = rng_from(seed);
    let data: Vec<f64> = (0..n * n)
        .map(|_| ergo::sampling::standard_normal(&mut rng).abs())
        .collect();
    Matrix::from_real(n, n, &data).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_axioms(seed in any::<u64>(), n in 1usize..7, scale in -3.0f64..3.0) {
        let x = complex_vector(seed, n);
        let y = complex_vector(seed.wrapping_add(1), n);
        for kind in ALL_KINDS {
            let nx = vector_norm(&x, kind);
            prop_assert!(nx >= 0.0);
            // Absolute homogeneity.
            let sx: Vec<Complex64> = x.iter().map(|z| z * scale).collect();
            let lhs = vector_norm(&sx, kind);
            prop_assert!((lhs - scale.abs() * nx).abs() <= 1e-8 * (1.0 + nx));
            // Triangle inequality (box norms are evaluated to 1e-10).
            let sum: Vec<Complex64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            let ny = vector_norm(&y, kind);
            prop_assert!(vector_norm(&sum, kind) <= nx + ny + 1e-8);
        }
    }

    #[test]
    fn box_norm_reduces_to_plain_on_real(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = rng_from(seed);
        let x: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(ergo::sampling::standard_normal(&mut rng), 0.0))
            .collect();
        for inner in [InnerNorm::One, InnerNorm::Two, InnerNorm::Inf] {
            let plain = vector_norm(&x, inner.as_kind());
            prop_assert!((box_norm(&x, inner) - plain).abs() <= 1e-12 * (1.0 + plain));
        }
    }

    #[test]
    fn spectrum_trace_and_det(seed in any::<u64>(), n in 2usize..7) {
        let mut rng = rng_from(seed);
        let data: Vec<Complex64> = (0..n * n).map(|_| complex_normal(&mut rng)).collect();
        let a = Matrix::from_data(n, n, data).unwrap();
        let spec = eig::spectrum(&a).unwrap();
        let scale = a.max_abs().max(1.0);
        let tr: Complex64 = spec.eigenvalues().iter().sum();
        prop_assert!((tr - a.trace()).norm() <= 1e-7 * scale * n as f64);
        let prod: Complex64 = spec.eigenvalues().iter().product();
        let det = lu::determinant(&a).unwrap();
        prop_assert!((prod - det).norm() <= 1e-6 * (1.0 + det.norm()));
    }

    #[test]
    fn stochastic_spectral_facts(seed in any::<u64>(), n in 2usize..8) {
        let s = random_stochastic(&mut rng_from(seed), n, 0.2);
        let spec = eig::spectrum(s.matrix()).unwrap();
        prop_assert!((spec.spectral_radius() - 1.0).abs() <= 1e-8);
        for m in spec.moduli() {
            prop_assert!(*m <= 1.0 + 1e-9);
        }
        // Eq. (s) bound.
        prop_assert!(spec.modulus_of(2) <= tau_n1(&s) + 1e-9);
    }

    #[test]
    fn primitive_implies_irreducible(seed in any::<u64>(), n in 2usize..8) {
        let s = random_stochastic(&mut rng_from(seed), n, 0.6);
        let a = s.matrix();
        if graph::is_primitive(a).unwrap() {
            prop_assert!(graph::is_irreducible(a).unwrap());
        }
    }

    #[test]
    fn tau_m_monotone_and_bounded(seed in any::<u64>(), n in 2usize..8) {
        let s = random_stochastic(&mut rng_from(seed), n, 0.3);
        let mut prev = 0.0;
        for m in 1..=n {
            let t = tau_m(&s, m).unwrap();
            prop_assert!(t >= prev - 1e-14, "tau_{m} < tau_{}", m - 1);
            prop_assert!(t >= 0.0 && t <= 1.0 + 1e-12);
            prop_assert!(tau_m_min_variant(&s, m).unwrap() <= t + 1e-14);
            prev = t;
        }
    }

    #[test]
    fn tau_haviv_matches_tau_n1_on_stochastic(seed in any::<u64>(), n in 2usize..7) {
        let s = random_stochastic(&mut rng_from(seed), n, 0.0);
        let got = tau_haviv(s.matrix(), &vec![1.0; n]).unwrap();
        prop_assert!((got - tau_n1(&s)).abs() <= 1e-8);
    }

    #[test]
    fn sampling_never_beats_projected_svd(seed in any::<u64>(), n in 3usize..7) {
        let a = random_real_matrix(seed, n);
        let w = Matrix::column_from_real(&vec![1.0; n]);
        let sel = JordanSelection::new(w.clone(), vec![], None).unwrap();
        let exact = coefficients::phi(&sel, &a, NormKind::Two, 0, 0).unwrap().value;
        let sampled =
            coefficients::sample_lower_bound(&a, &w, NormKind::Two, Domain::Complex, 2_000, seed)
                .unwrap();
        prop_assert!(sampled <= exact + 1e-9, "sampled {sampled} > exact {exact}");
    }

    #[test]
    fn phi_shrinks_as_the_basis_grows(seed in any::<u64>(), n in 3usize..7) {
        // Adding basis columns shrinks the feasible set, so phi decreases.
        let a = random_real_matrix(seed, n);
        let mut rng = rng_from(seed.wrapping_add(7));
        let c1: Vec<f64> = (0..n).map(|_| ergo::sampling::standard_normal(&mut rng)).collect();
        let c2: Vec<f64> = (0..n).map(|_| ergo::sampling::standard_normal(&mut rng)).collect();
        let mut w1 = Matrix::zeros(n, 1);
        let mut w2 = Matrix::zeros(n, 2);
        for i in 0..n {
            w1.set(i, 0, Complex64::new(c1[i], 0.0));
            w2.set(i, 0, Complex64::new(c1[i], 0.0));
            w2.set(i, 1, Complex64::new(c2[i], 0.0));
        }
        if ergo::qr::rank(&w2, 1e-10) < 2 {
            return Ok(()); // degenerate draw
        }
        let phi1 = coefficients::max_over_kernel(&a, &w1, NormKind::Two, Domain::Complex, 0, 0)
            .unwrap()
            .value;
        let phi2 = coefficients::max_over_kernel(&a, &w2, NormKind::Two, Domain::Complex, 0, 0)
            .unwrap()
            .value;
        prop_assert!(phi2 <= phi1 + 1e-9, "phi grew: {phi1} -> {phi2}");
    }

    #[test]
    fn stationary_routes_agree(seed in any::<u64>(), n in 2usize..7) {
        let s = {
            let mut rng = rng_from(seed);
            ergo::sampling::random_stochastic_positive_row(&mut rng, n)
        };
        let xm = ergo::stationary_via_msystem(&s).unwrap();
        let xp = ergo::stationary_via_power(&s, 1e-13, 500_000).unwrap();
        let diff: f64 = xm.iter().zip(&xp).map(|(a, b)| (a - b).abs()).sum();
        prop_assert!(diff <= 1e-8);
        for v in &xm {
            prop_assert!(*v >= -1e-12);
        }
    }

    #[test]
    fn decomposition_reconstructs(seed in any::<u64>(), n in 2usize..7, alpha in 0.05f64..1.0) {
        let s = random_stochastic(&mut rng_from(seed), n, 0.2);
        let dec = ergo::decompose(&s, alpha, n - 1).unwrap();
        let mass: f64 = dec.ell.iter().sum();
        prop_assert!((mass - (1.0 - alpha)).abs() <= 1e-13);
        for i in 0..n {
            for j in 0..n {
                let back = alpha * dec.b_raw.re(i, j) + dec.ell[i];
                prop_assert!((back - s.entry(i, j)).abs() <= 1e-13);
            }
        }
        if alpha >= tau_n1(&s) {
            prop_assert!(dec.is_stochastic());
        }
    }
}

#[test]
fn stochastic_validation_rejects_bad_columns() {
    let m = Matrix::from_real_rows(&[&[0.5, 0.2], &[0.4, 0.8]]).unwrap();
    assert!(StochasticMatrix::new(m).is_err());
    let m = Matrix::from_real_rows(&[&[-0.1, 0.2], &[1.1, 0.8]]).unwrap();
    assert!(StochasticMatrix::new(m).is_err());
}
