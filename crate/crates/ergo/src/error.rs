use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix dimension {n} exceeds the desk-scale guard {max}")]
    SizeGuard { n: usize, max: usize },

    #[error("matrix has a negative entry {value} at ({row},{col})")]
    NegativeEntry { row: usize, col: usize, value: f64 },

    #[error("matrix is not real")]
    NotReal,

    #[error("column {col} sums to {sum}, not 1 within tolerance {tol}")]
    NotStochastic { col: usize, sum: f64, tol: f64 },

    #[error("QR iteration did not converge within {sweeps} sweeps")]
    NonConvergence { sweeps: usize },

    #[error("power iteration did not converge within {iters} iterations (residual {residual})")]
    PowerNonConvergence { iters: usize, residual: f64 },

    #[error("basis matrix is rank deficient: rank {rank} < {cols} columns")]
    RankDeficient { rank: usize, cols: usize },

    #[error("subset size m={m} out of range 1..={n}")]
    MOutOfRange { m: usize, n: usize },

    #[error("alpha must be nonzero")]
    AlphaZero,

    #[error("tau_{{n-1}} = 1: every row has a zero entry, the M-matrix system is singular; use power iteration instead")]
    TauIsOne,

    #[error("vector has a non-positive entry {value} at index {index}")]
    NonPositiveVector { index: usize, value: f64 },

    #[error("eigenvector residual {residual} exceeds gate {gate}")]
    ResidualGate { residual: f64, gate: f64 },

    #[error("matrix is outside the scaled-stochastic class: left dominant eigenvector is not strictly positive")]
    NotScaledStochastic,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
