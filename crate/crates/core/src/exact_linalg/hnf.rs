use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U` unimodular and `U * A = H`. `H` is in row echelon
/// form, every pivot is positive and the entries above a pivot lie in
/// `[0, pivot)`. Zero rows are collected at the bottom.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivot_row = 0;

    for col in 0..n {
        if pivot_row == m {
            break;
        }
        loop {
            // smallest nonzero entry in this column at or below pivot_row
            let best = (pivot_row..m)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&i, &j| h[(i, col)].abs().cmp(&h[(j, col)].abs()).then(i.cmp(&j)));
            let Some(best) = best else { break };
            swap_rows(&mut h, pivot_row, best);
            swap_rows(&mut u, pivot_row, best);
            let p = h[(pivot_row, col)].clone();
            let mut done = true;
            for i in pivot_row + 1..m {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&p);
                add_row_multiple(&mut h, i, pivot_row, &-&q);
                add_row_multiple(&mut u, i, pivot_row, &-&q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            negate_row(&mut h, pivot_row);
            negate_row(&mut u, pivot_row);
        }
        let p = h[(pivot_row, col)].clone();
        for i in 0..pivot_row {
            let q = h[(i, col)].div_floor(&p);
            if !q.is_zero() {
                add_row_multiple(&mut h, i, pivot_row, &-&q);
                add_row_multiple(&mut u, i, pivot_row, &-&q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

fn swap_rows(m: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..m.cols() {
        let tmp = m[(i, c)].clone();
        m[(i, c)] = m[(j, c)].clone();
        m[(j, c)] = tmp;
    }
}

/// `row_target += factor * row_source`
fn add_row_multiple(m: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    for c in 0..m.cols() {
        if m[(source, c)].is_zero() {
            continue;
        }
        let delta = factor * &m[(source, c)];
        m[(target, c)] += delta;
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for c in 0..m.cols() {
        let v = -&m[(i, c)];
        m[(i, c)] = v;
    }
}

/// Checks the row-style Hermite conditions that [`hnf`] guarantees.
pub fn is_row_hermite(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..h.rows() {
        let lead = (0..h.cols()).find(|&j| !h[(i, j)].is_zero());
        match lead {
            None => seen_zero_row = true,
            Some(j) => {
                if seen_zero_row || last_pivot.is_some_and(|p| j <= p) {
                    return false;
                }
                let p = &h[(i, j)];
                if !p.is_positive() {
                    return false;
                }
                for r in 0..i {
                    let e = &h[(r, j)];
                    if e.is_negative() || e >= p {
                        return false;
                    }
                }
                last_pivot = Some(j);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::determinant;

    #[test]
    fn identity_is_fixed() {
        let id = IntMatrix::identity(2);
        let (h, u) = hnf(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
    }

    #[test]
    fn two_by_two_example() {
        // swap, then subtract twice the (new) first row
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![1, 1]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, IntMatrix::from_rows(&[vec![1, 1], vec![0, 2]]));
        assert_eq!(&u * &a, h);
        assert_eq!(determinant(&u).abs(), BigInt::from(1));
    }

    #[test]
    fn zero_matrix() {
        let z = IntMatrix::zeros(3, 3);
        let (h, u) = hnf(&z);
        assert_eq!(h, z);
        assert_eq!(u, IntMatrix::identity(3));
    }

    #[test]
    fn rectangular_reduces_above_pivots() {
        let a = IntMatrix::from_rows(&[vec![3, 5, 7], vec![6, 1, 2], vec![9, 4, 4]]);
        let (h, u) = hnf(&a);
        assert!(is_row_hermite(&h));
        assert_eq!(&u * &a, h);
    }
}
