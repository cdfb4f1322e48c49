//! Smith normal form by sparse elimination.
//!
//! The matrices met in practice (cochain differentials, membership systems)
//! have a handful of unit entries per row, so the eliminator stores rows as
//! sorted maps and keeps a column index. Pivots are chosen by smallest absolute
//! value, ties broken by the Markowitz product and then by position, which keeps
//! both fill-in and the output deterministic. The divisibility chain is fixed
//! at the end with 2x2 gcd/lcm transforms on the diagonal.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

type SparseVec = BTreeMap<usize, BigInt>;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal of `D`, length `min(rows, cols)`, with `d_i | d_(i+1)`.
    /// Trailing zeros mark the rank deficit.
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Which transforms the eliminator records alongside the diagonal.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub left: bool,
    pub right: bool,
    pub right_inverse: bool,
}

pub(crate) struct Elimination {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries in final order (positive, divisibility chain).
    pub diag: Vec<BigInt>,
    pub row_order: Vec<usize>,
    pub col_order: Vec<usize>,
    left: Option<Vec<SparseVec>>,
    rhs: Option<Vec<BigInt>>,
    /// Columns of `V`, indexed by original column.
    right: Option<Vec<SparseVec>>,
    /// Rows of `V^-1`, indexed by original column.
    right_inv: Option<Vec<SparseVec>>,
}

struct Eliminator {
    rows: Vec<SparseVec>,
    col_rows: Vec<BTreeSet<usize>>,
    row_active: Vec<bool>,
    left: Option<Vec<SparseVec>>,
    rhs: Option<Vec<BigInt>>,
    right: Option<Vec<SparseVec>>,
    right_inv: Option<Vec<SparseVec>>,
}

fn unit_vectors(n: usize) -> Vec<SparseVec> {
    (0..n)
        .map(|i| {
            let mut v = SparseVec::new();
            v.insert(i, BigInt::one());
            v
        })
        .collect()
}

/// `target -= q * source`
fn axpy(target: &mut SparseVec, source: &SparseVec, q: &BigInt) {
    for (&k, v) in source {
        let entry = target.entry(k).or_insert_with(BigInt::zero);
        *entry -= q * v;
        if entry.is_zero() {
            target.remove(&k);
        }
    }
}

impl Eliminator {
    fn new(a: &IntMatrix, track: Track, rhs: Option<&[BigInt]>) -> Self {
        let m = a.rows();
        let n = a.cols();
        let mut rows = vec![SparseVec::new(); m];
        let mut col_rows = vec![BTreeSet::new(); n];
        for (i, j, v) in a.nonzeros() {
            rows[i].insert(j, v.clone());
            col_rows[j].insert(i);
        }
        Eliminator {
            rows,
            col_rows,
            row_active: vec![true; m],
            left: track.left.then(|| unit_vectors(m)),
            rhs: rhs.map(<[BigInt]>::to_vec),
            right: track.right.then(|| unit_vectors(n)),
            right_inv: track.right_inverse.then(|| unit_vectors(n)),
        }
    }

    /// `row_t -= q * row_s`
    fn row_axpy(&mut self, t: usize, s: usize, q: &BigInt) {
        let source = self.rows[s].clone();
        for (&c, v) in &source {
            let entry = self.rows[t].entry(c).or_insert_with(BigInt::zero);
            let was_zero = entry.is_zero();
            *entry -= q * v;
            if entry.is_zero() {
                self.rows[t].remove(&c);
                self.col_rows[c].remove(&t);
            } else if was_zero {
                self.col_rows[c].insert(t);
            }
        }
        if let Some(left) = &mut self.left {
            let src = left[s].clone();
            axpy(&mut left[t], &src, q);
        }
        if let Some(rhs) = &mut self.rhs {
            let delta = q * &rhs[s];
            rhs[t] -= delta;
        }
    }

    /// `col_t -= q * col_s`
    fn col_axpy(&mut self, t: usize, s: usize, q: &BigInt) {
        let touched: Vec<usize> = self.col_rows[s].iter().copied().collect();
        for r in touched {
            let v = self.rows[r][&s].clone();
            let entry = self.rows[r].entry(t).or_insert_with(BigInt::zero);
            let was_zero = entry.is_zero();
            *entry -= q * v;
            if entry.is_zero() {
                self.rows[r].remove(&t);
                self.col_rows[t].remove(&r);
            } else if was_zero {
                self.col_rows[t].insert(r);
            }
        }
        if let Some(right) = &mut self.right {
            let src = right[s].clone();
            axpy(&mut right[t], &src, q);
        }
        if let Some(inv) = &mut self.right_inv {
            // V' = V E with E: col_t -= q col_s, so V'^-1 = E^-1 V^-1: row_s += q row_t
            let src = inv[t].clone();
            axpy(&mut inv[s], &src, &-q);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for v in self.rows[r].values_mut() {
            *v = -&*v;
        }
        if let Some(left) = &mut self.left {
            for v in left[r].values_mut() {
                *v = -&*v;
            }
        }
        if let Some(rhs) = &mut self.rhs {
            rhs[r] = -&rhs[r];
        }
    }

    fn choose_global_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize, usize)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            if !self.row_active[r] || row.is_empty() {
                continue;
            }
            for (&c, v) in row {
                let key_abs = v.abs();
                let cost = (row.len() - 1) * (self.col_rows[c].len() - 1);
                let better = match &best {
                    None => true,
                    Some((b_abs, b_cost, _, _)) => {
                        key_abs < *b_abs || (key_abs == *b_abs && cost < *b_cost)
                    }
                };
                if better {
                    best = Some((key_abs, cost, r, c));
                }
            }
            if let Some((b, 0, _, _)) = &best {
                if b.is_one() {
                    break;
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    /// Clears row and column of the pivot, shrinking the pivot when remainders
    /// appear. Returns the final pivot position.
    fn isolate(&mut self, mut r: usize, mut c: usize) -> (usize, usize) {
        loop {
            let p = self.rows[r][&c].clone();
            let others: Vec<usize> = self.col_rows[c].iter().copied().filter(|&x| x != r).collect();
            for r2 in others {
                let q = self.rows[r2][&c].div_floor(&p);
                if !q.is_zero() {
                    self.row_axpy(r2, r, &q);
                }
            }
            let others: Vec<usize> = self.rows[r].keys().copied().filter(|&x| x != c).collect();
            for c2 in others {
                let q = self.rows[r][&c2].div_floor(&p);
                if !q.is_zero() {
                    self.col_axpy(c2, c, &q);
                }
            }
            let col_clean = self.col_rows[c].len() == 1;
            let row_clean = self.rows[r].len() == 1;
            if col_clean && row_clean {
                return (r, c);
            }
            // a remainder smaller than |p| survived; move the pivot onto it
            let mut best: Option<(BigInt, usize, usize)> = None;
            for &r2 in &self.col_rows[c] {
                if r2 != r {
                    let a = self.rows[r2][&c].abs();
                    if best.as_ref().is_none_or(|b| a < b.0) {
                        best = Some((a, r2, c));
                    }
                }
            }
            for (&c2, v) in &self.rows[r] {
                if c2 != c {
                    let a = v.abs();
                    if best.as_ref().is_none_or(|b| a < b.0) {
                        best = Some((a, r, c2));
                    }
                }
            }
            let (_, nr, nc) = best.expect("unclean pivot has a remainder");
            r = nr;
            c = nc;
        }
    }

    fn run(mut self) -> Elimination {
        let m = self.rows.len();
        let n = self.col_rows.len();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        while let Some((r, c)) = self.choose_global_pivot() {
            let (r, c) = self.isolate(r, c);
            if self.rows[r][&c].is_negative() {
                self.negate_row(r);
            }
            self.row_active[r] = false;
            pivots.push((r, c));
        }
        let mut diag: Vec<BigInt> = pivots.iter().map(|&(r, c)| self.rows[r][&c].clone()).collect();

        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                if diag[j].is_multiple_of(&diag[i]) {
                    continue;
                }
                self.gcd_lcm(&mut diag, &pivots, i, j);
            }
        }

        let pivot_rows: BTreeSet<usize> = pivots.iter().map(|p| p.0).collect();
        let pivot_cols: BTreeSet<usize> = pivots.iter().map(|p| p.1).collect();
        let mut row_order: Vec<usize> = pivots.iter().map(|p| p.0).collect();
        row_order.extend((0..m).filter(|r| !pivot_rows.contains(r)));
        let mut col_order: Vec<usize> = pivots.iter().map(|p| p.1).collect();
        col_order.extend((0..n).filter(|c| !pivot_cols.contains(c)));

        Elimination {
            rows: m,
            cols: n,
            diag,
            row_order,
            col_order,
            left: self.left,
            rhs: self.rhs,
            right: self.right,
            right_inv: self.right_inv,
        }
    }

    /// Replaces `(d_i, d_j)` by `(gcd, lcm)` through
    /// `U2 = [[s, t], [-b/g, a/g]]` on rows and `V2 = [[1, -tb/g], [1, sa/g]]`
    /// on columns, where `sa + tb = g`.
    fn gcd_lcm(&mut self, diag: &mut [BigInt], pivots: &[(usize, usize)], i: usize, j: usize) {
        let a = diag[i].clone();
        let b = diag[j].clone();
        let eg = a.extended_gcd(&b);
        let (g, s, t) = (eg.gcd, eg.x, eg.y);
        let a_g = &a / &g;
        let b_g = &b / &g;
        let (ri, ci) = pivots[i];
        let (rj, cj) = pivots[j];

        if let Some(left) = &mut self.left {
            let row_i = left[ri].clone();
            let row_j = left[rj].clone();
            left[ri] = lin_comb(&row_i, &s, &row_j, &t);
            left[rj] = lin_comb(&row_i, &-&b_g, &row_j, &a_g);
        }
        if let Some(rhs) = &mut self.rhs {
            let (x, y) = (rhs[ri].clone(), rhs[rj].clone());
            rhs[ri] = &s * &x + &t * &y;
            rhs[rj] = -&b_g * &x + &a_g * &y;
        }
        if let Some(right) = &mut self.right {
            let col_i = right[ci].clone();
            let col_j = right[cj].clone();
            right[ci] = lin_comb(&col_i, &BigInt::one(), &col_j, &BigInt::one());
            right[cj] = lin_comb(&col_i, &-(&t * &b_g), &col_j, &(&s * &a_g));
        }
        if let Some(inv) = &mut self.right_inv {
            // V2^-1 = [[sa/g, tb/g], [-1, 1]]
            let row_i = inv[ci].clone();
            let row_j = inv[cj].clone();
            inv[ci] = lin_comb(&row_i, &(&s * &a_g), &row_j, &(&t * &b_g));
            inv[cj] = lin_comb(&row_i, &-BigInt::one(), &row_j, &BigInt::one());
        }
        diag[i] = g.clone();
        diag[j] = &a * &b_g;
    }
}

fn lin_comb(x: &SparseVec, a: &BigInt, y: &SparseVec, b: &BigInt) -> SparseVec {
    let mut out = SparseVec::new();
    for (&k, v) in x {
        out.insert(k, a * v);
    }
    for (&k, v) in y {
        let e = out.entry(k).or_insert_with(BigInt::zero);
        *e += b * v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub(crate) fn eliminate(a: &IntMatrix, track: Track, rhs: Option<&[BigInt]>) -> Elimination {
    Eliminator::new(a, track, rhs).run()
}

impl Elimination {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// `U` in final row order.
    pub fn left_matrix(&self) -> Option<IntMatrix> {
        let left = self.left.as_ref()?;
        let mut u = IntMatrix::zeros(self.rows, self.rows);
        for (new_r, &old_r) in self.row_order.iter().enumerate() {
            for (&c, v) in &left[old_r] {
                u[(new_r, c)] = v.clone();
            }
        }
        Some(u)
    }

    /// `V` in final column order.
    pub fn right_matrix(&self) -> Option<IntMatrix> {
        let right = self.right.as_ref()?;
        let mut v = IntMatrix::zeros(self.cols, self.cols);
        for (new_c, &old_c) in self.col_order.iter().enumerate() {
            for (&r, x) in &right[old_c] {
                v[(r, new_c)] = x.clone();
            }
        }
        Some(v)
    }

    /// Column `k` (final order) of `V`, as a sparse map.
    pub fn right_column(&self, k: usize) -> Option<&SparseVec> {
        Some(&self.right.as_ref()?[self.col_order[k]])
    }

    /// Row `k` (final order) of `V^-1`, as a sparse map.
    pub fn right_inverse_row(&self, k: usize) -> Option<&SparseVec> {
        Some(&self.right_inv.as_ref()?[self.col_order[k]])
    }

    /// `(U b)` in final row order.
    pub fn transformed_rhs(&self) -> Option<Vec<BigInt>> {
        let rhs = self.rhs.as_ref()?;
        Some(self.row_order.iter().map(|&r| rhs[r].clone()).collect())
    }

    pub fn factors(&self) -> Vec<BigInt> {
        let mut f = self.diag.clone();
        f.resize(self.rows.min(self.cols), BigInt::zero());
        f
    }
}

/// Smith normal form with both transforms.
pub fn snf(a: &IntMatrix) -> SmithForm {
    let e = eliminate(
        a,
        Track {
            left: true,
            right: true,
            right_inverse: false,
        },
        None,
    );
    let factors = e.factors();
    SmithForm {
        u: e.left_matrix().expect("left tracked"),
        d: IntMatrix::diagonal(a.rows(), a.cols(), &factors),
        v: e.right_matrix().expect("right tracked"),
        factors,
    }
}

/// Nonzero diagonal of the Smith form, without transforms.
pub fn smith_factors(a: &IntMatrix) -> Vec<BigInt> {
    eliminate(a, Track::default(), None).diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::determinant;

    fn check(a: &IntMatrix) -> SmithForm {
        let s = snf(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d, "U A V != D for {a:?}");
        assert_eq!(determinant(&s.u).abs(), BigInt::one());
        assert_eq!(determinant(&s.v).abs(), BigInt::one());
        for w in s.factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
        }
        s
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_factors() {
        assert_eq!(check(&IntMatrix::identity(3)).factors, ints(&[1, 1, 1]));
    }

    #[test]
    fn diag_two_three() {
        let a = IntMatrix::diagonal(2, 2, &[2, 3]);
        assert_eq!(check(&a).factors, ints(&[1, 6]));
    }

    #[test]
    fn diag_two_two() {
        let a = IntMatrix::diagonal(2, 2, &[2, 2]);
        assert_eq!(check(&a).factors, ints(&[2, 2]));
    }

    #[test]
    fn rank_deficient_and_rectangular() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = check(&a);
        assert_eq!(s.factors, ints(&[2, 6, 12]));
        let b = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4], vec![3, 6]]);
        assert_eq!(check(&b).factors, ints(&[1, 0]));
    }

    #[test]
    fn empty_matrices() {
        let s = check(&IntMatrix::zeros(0, 3));
        assert!(s.factors.is_empty());
        assert_eq!(s.v, IntMatrix::identity(3));
        let s = check(&IntMatrix::zeros(2, 0));
        assert_eq!(s.u, IntMatrix::identity(2));
    }

    #[test]
    fn tracks_inverse_of_v() {
        let a = IntMatrix::from_rows(&[vec![4, 6, 2], vec![6, 9, 3], vec![2, 5, 7]]);
        let e = eliminate(
            &a,
            Track {
                left: false,
                right: true,
                right_inverse: true,
            },
            None,
        );
        let v = e.right_matrix().unwrap();
        let mut vinv = IntMatrix::zeros(3, 3);
        for k in 0..3 {
            for (&c, x) in e.right_inverse_row(k).unwrap() {
                vinv[(k, c)] = x.clone();
            }
        }
        assert_eq!(&v * &vinv, IntMatrix::identity(3));
    }
}
