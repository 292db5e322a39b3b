//! Structural predicates on nonnegative matrices: irreducibility via strong
//! connectivity of the positivity digraph, primitivity via boolean powers up
//! to the Wielandt bound.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Guard shared with the eigensolver: boolean powers are dense.
pub const MAX_GRAPH_DIM: usize = 64;

/// True iff the digraph with an edge i -> j whenever a_ij > 0 is strongly
/// connected.
pub fn is_irreducible(a: &Matrix) -> Result<bool> {
    let n = a.require_square()?;
    a.require_real_nonnegative()?;
    let adj = |i: usize, j: usize| a.re(i, j) > 0.0;
    Ok(reaches_all(n, |i, j| adj(i, j)) && reaches_all(n, |i, j| adj(j, i)))
}

fn reaches_all<F: Fn(usize, usize) -> bool>(n: usize, edge: F) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && edge(i, j) {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == n
}

/// True iff some boolean power A^k is all-positive, for k up to the Wielandt
/// bound n^2 - 2n + 2.
pub fn is_primitive(a: &Matrix) -> Result<bool> {
    let n = a.require_square()?;
    a.require_real_nonnegative()?;
    if n > MAX_GRAPH_DIM {
        return Err(Error::SizeGuard {
            n,
            max: MAX_GRAPH_DIM,
        });
    }
    let base: Vec<bool> = (0..n * n)
        .map(|idx| a.re(idx / n, idx % n) > 0.0)
        .collect();
    let wielandt = n * n - 2 * n + 2;
    let mut power = base.clone();
    for _ in 0..wielandt {
        if power.iter().all(|&b| b) {
            return Ok(true);
        }
        power = bool_mul(&power, &base, n);
    }
    Ok(power.iter().all(|&b| b))
}

fn bool_mul(x: &[bool], y: &[bool], n: usize) -> Vec<bool> {
    let mut out = vec![false; n * n];
    for i in 0..n {
        for k in 0..n {
            if x[i * n + k] {
                for j in 0..n {
                    if y[k * n + j] {
                        out[i * n + j] = true;
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_is_irreducible_not_primitive() {
        let a = Matrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert!(is_irreducible(&a).unwrap());
        assert!(!is_primitive(&a).unwrap());
    }

    #[test]
    fn triangular_is_reducible() {
        let a = Matrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!(!is_irreducible(&a).unwrap());
    }

    #[test]
    fn positive_matrix_is_primitive() {
        let a = Matrix::from_real(3, 3, &[1.0; 9]).unwrap();
        assert!(is_irreducible(&a).unwrap());
        assert!(is_primitive(&a).unwrap());
    }

    #[test]
    fn fibonacci_pattern_primitive_within_wielandt() {
        // [[0,1],[1,1]]: boolean square is already all-positive, inside the
        // Wielandt bound 2 for n = 2.
        let a = Matrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert!(is_primitive(&a).unwrap());
    }

    #[test]
    fn identity_is_reducible_for_n_gt_1() {
        assert!(!is_irreducible(&Matrix::identity(3)).unwrap());
    }
}
