use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::smith::{eliminate, Track};
use super::{IntMatrix, LinalgError};

/// Finds an integer `x` with `A x = b`, or `None` when no integer solution
/// exists.
///
/// The solution is the one read off the Smith elimination with all free
/// coordinates set to zero, so it is a deterministic function of `A` and `b`.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch {
            op: "solve",
            expected: a.rows(),
            found: b.len(),
        });
    }
    let e = eliminate(
        a,
        Track {
            left: false,
            right: true,
            right_inverse: false,
        },
        Some(b),
    );
    let ub = e.transformed_rhs().expect("rhs tracked");
    let rank = e.rank();
    if ub[rank..].iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let mut x = vec![BigInt::zero(); a.cols()];
    for (k, d) in e.diag.iter().enumerate() {
        let (q, r) = ub[k].div_rem(d);
        if !r.is_zero() {
            return Ok(None);
        }
        if q.is_zero() {
            continue;
        }
        for (&row, v) in e.right_column(k).expect("right tracked") {
            x[row] += &q * v;
        }
    }
    debug_assert_eq!(a.mul_vec(&x), b);
    Ok(Some(x))
}

/// Basis of the integer kernel `{x : A x = 0}`, as the columns of the returned
/// matrix.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let e = eliminate(
        a,
        Track {
            left: false,
            right: true,
            right_inverse: false,
        },
        None,
    );
    let n = a.cols();
    let rank = e.rank();
    let mut k = IntMatrix::zeros(n, n - rank);
    for j in rank..n {
        for (&row, v) in e.right_column(j).expect("right tracked") {
            k[(row, j - rank)] = v.clone();
        }
    }
    k
}
