//! Shared fixtures for tests and the conjecture fuzzer.

use crate::matrix::{Matrix, StochasticMatrix};

/// The 3x3 column-stochastic matrix whose spectrum (1, -0.334, 0.0641) sits
/// strictly inside the tau_1 bound 0.55 while the min-variant of tau_1
/// evaluates to 0.06 < 0.0641: the min-variant is not a spectral bound.
pub fn a3() -> StochasticMatrix {
    let m = Matrix::from_real_rows(&[
        &[0.0, 0.29, 0.55],
        &[0.63, 0.40, 0.12],
        &[0.37, 0.31, 0.33],
    ])
    .unwrap();
    StochasticMatrix::new(m).expect("fixture is column-stochastic")
}
