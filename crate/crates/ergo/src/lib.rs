//! Ergodicity coefficients for stochastic and nonnegative matrices:
//! norm-based coefficients over Jordan-selection kernels, subset-generalized
//! row-minima coefficients, spectral-gap bounds and their asymptotics, and
//! the M-matrix route to stationary vectors.

pub mod coefficients;
pub mod eig;
pub mod error;
pub mod graph;
pub mod limits;
pub mod lu;
pub mod matrix;
pub mod norms;
pub mod power;
pub mod qr;
pub mod sampling;
pub mod simplex;
pub mod stationary;
pub mod test_matrices;

pub use coefficients::{
    mu, phi, tau_haviv, tau_m, tau_m_min_variant, tau_n1, tau_vecnorm, CoefficientReport,
    JordanSelection, Method,
};
pub use error::{Error, Result};
pub use limits::{
    check_bound_lambda2, check_mu_phi_chain, default_ks, limit_study_phi, limit_study_tau_n1,
    BoundCheck, ChainReport, LimitStudy,
};
pub use stationary::{
    aplus_scaling, decompose, fuzz_conjecture, neumann_check, primitivity_corollary_check,
    stationary_via_msystem, stationary_via_power, AplusScaling, ConjectureFinding,
    DecompositionResult, NeumannReport, PrimitivityReport, Variant,
};
pub use matrix::{Matrix, StochasticMatrix};
pub use norms::{box_norm, vector_norm, InnerNorm, NormKind};

/// Worker-thread count for the sampling loops: the `ERGO_THREADS` variable
/// when set to a positive integer, otherwise the machine's parallelism.
/// Results never depend on this value, only wall time does.
pub fn worker_count() -> usize {
    if let Ok(v) = std::env::var("ERGO_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n > 0 {
                return n;
            }
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}
