//! Seeded random generation used by the fuzzer, the Monte Carlo coefficient
//! estimates, and the test suites. Everything is keyed by explicit u64 seeds
//! so runs are replayable.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::{Matrix, StochasticMatrix};

/// Derive a stream seed from a base seed and an index (splitmix64 step).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base
        .wrapping_add(0x9e3779b97f4a7c15u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal via Box-Muller; avoids a rand_distr dependency.
pub fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let u1: f64 = rng.gen::<f64>();
        if u1 > 0.0 {
            let u2: f64 = rng.gen::<f64>();
            return (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
        }
    }
}

pub fn complex_normal<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng))
}

/// Random column-stochastic matrix: i.i.d. exponential entries per column,
/// normalized. `sparsity` in [0,1) is the probability of forcing an entry to
/// zero, widening coverage toward the tau = 1 boundary; each column keeps at
/// least one nonzero.
pub fn random_stochastic<R: Rng>(rng: &mut R, n: usize, sparsity: f64) -> StochasticMatrix {
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        let mut col = vec![0.0f64; n];
        loop {
            let mut any = false;
            for v in col.iter_mut() {
                if sparsity > 0.0 && rng.gen::<f64>() < sparsity {
                    *v = 0.0;
                } else {
                    // Exponential(1).
                    *v = -(1.0 - rng.gen::<f64>()).ln();
                    any = true;
                }
            }
            if any {
                break;
            }
        }
        let sum: f64 = col.iter().sum();
        for (i, v) in col.iter().enumerate() {
            m.set(i, j, Complex64::new(v / sum, 0.0));
        }
    }
    StochasticMatrix::new(m).expect("normalized columns are stochastic")
}

/// Random stochastic matrix with a strictly positive row, so that
/// max_i min_j s_ij > 0 and the M-matrix system is nonsingular.
pub fn random_stochastic_positive_row<R: Rng>(rng: &mut R, n: usize) -> StochasticMatrix {
    loop {
        let s = random_stochastic(rng, n, 0.0);
        if s.max_row_min() > 0.0 {
            return s;
        }
    }
}
