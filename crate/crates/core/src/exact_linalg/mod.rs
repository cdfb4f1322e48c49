//! Exact integer linear algebra: Hermite and Smith normal forms, integer
//! system solving and homology of complexes of finitely presented abelian
//! groups.
//!
//! Everything runs over [`BigInt`]; no floating point and no fixed-width
//! arithmetic is involved.

mod group;
mod hnf;
mod matrix;
mod smith;
mod solve;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use group::{format_factors, homology, CyclicHomology, PresentedGroup};
pub use hnf::{hnf, is_row_hermite};
pub use matrix::IntMatrix;
pub use smith::{smith_factors, snf, SmithForm};
pub use solve::{kernel_basis, solve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{op}: dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("not a complex: the composite of the differentials is nonzero modulo relations")]
    NotAComplex,
    #[error("map does not send relations into relations")]
    NotWellDefined,
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                let t = m[(k, j)].clone();
                m[(k, j)] = m[(swap, j)].clone();
                m[(swap, j)] = t;
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = v;
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * &m[(n - 1, n - 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_determinant() {
        let a = IntMatrix::from_rows(&[vec![2, -3, 1], vec![2, 0, -1], vec![1, 4, 5]]);
        assert_eq!(determinant(&a), BigInt::from(49));
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(determinant(&b), BigInt::from(-1));
    }
}
