use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hnf::hnf;
use super::smith::{eliminate, smith_factors, Track};
use super::solve::{kernel_basis, solve};
use super::{IntMatrix, LinalgError};

/// Finitely presented abelian group `Z^generators / (column span of relations)`.
///
/// Equality compares invariant factors, never presentations.
pub struct PresentedGroup {
    generator_count: usize,
    relations: IntMatrix,
    factors: OnceLock<Vec<BigInt>>,
}

impl PresentedGroup {
    pub fn new(generator_count: usize, relations: IntMatrix) -> Self {
        assert_eq!(
            relations.rows(),
            generator_count,
            "relation columns must live on the generators"
        );
        PresentedGroup {
            generator_count,
            relations,
            factors: OnceLock::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::new(0, IntMatrix::zeros(0, 0))
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0))
    }

    /// `(Z/m)^n`; `m = 0` gives `Z^n`.
    pub fn uniform(n: usize, modulus: &BigInt) -> Self {
        if modulus.is_zero() {
            return Self::free(n);
        }
        let diag = vec![modulus.abs(); n];
        Self::new(n, IntMatrix::diagonal(n, n, &diag))
    }

    /// Direct sum of cyclic groups `Z/n_i` (`n_i = 0` is `Z`).
    pub fn from_cyclic_orders<T: Into<BigInt> + Clone>(orders: &[T]) -> Self {
        let orders: Vec<BigInt> = orders.iter().cloned().map(Into::into).collect();
        let n = orders.len();
        let mut rel = IntMatrix::zeros(n, n);
        for (i, o) in orders.iter().enumerate() {
            rel[(i, i)] = o.abs();
        }
        Self::new(n, rel)
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Nontrivial invariant factors: torsion `d_1 | d_2 | ...` first, then one
    /// `0` per free summand.
    pub fn invariant_factors(&self) -> &[BigInt] {
        self.factors.get_or_init(|| {
            let diag = smith_factors(&self.relations);
            let free_rank = self.generator_count - diag.len();
            let mut out: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_one()).collect();
            out.extend(std::iter::repeat_n(BigInt::zero(), free_rank));
            out
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors().is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.invariant_factors().iter().all(|d| !d.is_zero())
    }

    /// Order of the group, or `None` when it is infinite.
    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.invariant_factors().iter().product())
    }

    pub fn direct_sum(groups: &[PresentedGroup]) -> PresentedGroup {
        let mut orders: Vec<BigInt> = Vec::new();
        for g in groups {
            orders.extend(g.invariant_factors().iter().cloned());
        }
        PresentedGroup::from_cyclic_orders(&orders)
    }

    /// Uniform relation modulus if the presentation is `(Z/m)^n`.
    fn uniform_modulus(&self) -> Option<BigInt> {
        let n = self.generator_count;
        let rel = &self.relations;
        if rel.cols() == 0 {
            return Some(BigInt::zero());
        }
        if rel.cols() != n {
            return None;
        }
        let m = rel[(0, 0)].abs();
        for i in 0..n {
            for j in 0..n {
                let e = &rel[(i, j)];
                if (i == j && e.abs() != m) || (i != j && !e.is_zero()) {
                    return None;
                }
            }
        }
        Some(m)
    }
}

impl Clone for PresentedGroup {
    fn clone(&self) -> Self {
        let g = PresentedGroup::new(self.generator_count, self.relations.clone());
        if let Some(f) = self.factors.get() {
            let _ = g.factors.set(f.clone());
        }
        g
    }
}

impl PartialEq for PresentedGroup {
    fn eq(&self, other: &Self) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }
}

impl Eq for PresentedGroup {}

impl fmt::Debug for PresentedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PresentedGroup({self})")
    }
}

impl fmt::Display for PresentedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_factors(self.invariant_factors()))
    }
}

/// `[2, 4, 0]` renders as `Z/2 + Z/4 + Z`; the empty list as `0`.
pub fn format_factors(factors: &[BigInt]) -> String {
    if factors.is_empty() {
        return "0".to_string();
    }
    factors
        .iter()
        .map(|d| {
            if d.is_zero() {
                "Z".to_string()
            } else {
                format!("Z/{d}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn in_column_span(r: &IntMatrix, v: &[BigInt]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    matches!(solve(r, v), Ok(Some(_)))
}

fn check_dims(d_in: &IntMatrix, d_out: &IntMatrix, terms: [&PresentedGroup; 3]) -> Result<(), LinalgError> {
    let [src, mid, tgt] = terms;
    let mismatch = |expected, found| LinalgError::DimensionMismatch {
        op: "homology",
        expected,
        found,
    };
    if d_in.cols() != src.generator_count {
        return Err(mismatch(src.generator_count, d_in.cols()));
    }
    if d_in.rows() != mid.generator_count {
        return Err(mismatch(mid.generator_count, d_in.rows()));
    }
    if d_out.cols() != mid.generator_count {
        return Err(mismatch(mid.generator_count, d_out.cols()));
    }
    if d_out.rows() != tgt.generator_count {
        return Err(mismatch(tgt.generator_count, d_out.rows()));
    }
    Ok(())
}

/// Maps between presented groups must send relations to relations.
fn check_well_defined(map: &IntMatrix, from: &PresentedGroup, to: &PresentedGroup) -> Result<(), LinalgError> {
    if from.relations.cols() == 0 {
        return Ok(());
    }
    let image = map * &from.relations;
    if let Some(m) = to.uniform_modulus() {
        if m.is_zero() {
            return if image.is_zero() {
                Ok(())
            } else {
                Err(LinalgError::NotWellDefined)
            };
        }
        return if image.nonzeros().all(|(_, _, v)| v.is_multiple_of(&m)) {
            Ok(())
        } else {
            Err(LinalgError::NotWellDefined)
        };
    }
    for j in 0..image.cols() {
        if !in_column_span(&to.relations, &image.column(j)) {
            return Err(LinalgError::NotWellDefined);
        }
    }
    Ok(())
}

/// Homology `ker(d_out) / im(d_in)` at the middle of
/// `source --d_in--> middle --d_out--> target`.
///
/// Matrices act on column vectors of generator coordinates. Checks that both
/// maps respect relations and that the composite vanishes modulo the target
/// relations.
pub fn homology(
    d_in: &IntMatrix,
    d_out: &IntMatrix,
    terms: [&PresentedGroup; 3],
) -> Result<PresentedGroup, LinalgError> {
    check_dims(d_in, d_out, terms)?;
    let [src, mid, tgt] = terms;
    check_well_defined(d_in, src, mid)?;
    check_well_defined(d_out, mid, tgt)?;
    match (mid.uniform_modulus(), tgt.uniform_modulus()) {
        (Some(a), Some(b)) if a == b || tgt.generator_count == 0 => {
            CyclicHomology::new(d_in, d_out).with_modulus(&a)
        }
        _ => generic_homology(d_in, d_out, mid, tgt),
    }
}

fn generic_homology(
    d_in: &IntMatrix,
    d_out: &IntMatrix,
    mid: &PresentedGroup,
    tgt: &PresentedGroup,
) -> Result<PresentedGroup, LinalgError> {
    let k = mid.generator_count;
    // x is a cycle iff d_out x + R_t y = 0 for some y
    let block = d_out.hcat(&tgt.relations);
    let full = kernel_basis(&block);
    let rows: Vec<usize> = (0..k).collect();
    let cols: Vec<usize> = (0..full.cols()).collect();
    let cycles = full.select(&rows, &cols);
    let (h, _) = hnf(&cycles.transpose());
    let basis_rows: Vec<usize> = (0..h.rows())
        .filter(|&i| (0..h.cols()).any(|j| !h[(i, j)].is_zero()))
        .collect();
    let all_cols: Vec<usize> = (0..k).collect();
    let basis = h.select(&basis_rows, &all_cols).transpose();

    let boundaries = d_in.hcat(&mid.relations);
    let mut coeffs = IntMatrix::zeros(basis.cols(), boundaries.cols());
    for j in 0..boundaries.cols() {
        let w = boundaries.column(j);
        match solve(&basis, &w)? {
            Some(c) => {
                for (i, x) in c.into_iter().enumerate() {
                    coeffs[(i, j)] = x;
                }
            }
            None => return Err(LinalgError::NotAComplex),
        }
    }
    Ok(PresentedGroup::new(basis.cols(), coeffs))
}

/// Cohomology of `Z^a --d_in--> Z^k --d_out--> Z^l` with coefficients in
/// `Z/m`, for any number of moduli.
///
/// The Smith elimination of `d_out` does not depend on `m`, so it is computed
/// once and reused for every modulus.
pub struct CyclicHomology {
    middle: usize,
    diag: Vec<BigInt>,
    /// `V^-1 d_in` in the Smith coordinates of `d_out`, one column per source
    /// generator, stored sparsely.
    transformed_in: Vec<Vec<(usize, BigInt)>>,
}

impl CyclicHomology {
    pub fn new(d_in: &IntMatrix, d_out: &IntMatrix) -> Self {
        assert_eq!(d_in.rows(), d_out.cols(), "composable maps required");
        let k = d_out.cols();
        let e = eliminate(
            d_out,
            Track {
                left: false,
                right: false,
                right_inverse: true,
            },
            None,
        );
        let mut transformed_in = Vec::with_capacity(d_in.cols());
        for j in 0..d_in.cols() {
            let w = d_in.column(j);
            let mut col = Vec::new();
            for i in 0..k {
                let row = e.right_inverse_row(i).expect("inverse tracked");
                let mut acc = BigInt::zero();
                for (&c, v) in row {
                    if !w[c].is_zero() {
                        acc += v * &w[c];
                    }
                }
                if !acc.is_zero() {
                    col.push((i, acc));
                }
            }
            transformed_in.push(col);
        }
        CyclicHomology {
            middle: k,
            diag: e.diag,
            transformed_in,
        }
    }

    /// Homology with coefficients `Z/m` (`m = 0` for `Z`).
    pub fn with_modulus(&self, m: &BigInt) -> Result<PresentedGroup, LinalgError> {
        let m = m.abs();
        let r = self.diag.len();
        // cycles are {y : e_i y_i = 0 mod m}, i.e. y_i in scale_i * Z
        let scale: Vec<BigInt> = (0..self.middle)
            .map(|i| {
                if i < r {
                    &m / self.diag[i].gcd(&m)
                } else {
                    BigInt::one()
                }
            })
            .collect();
        let kept: Vec<usize> = (0..self.middle).filter(|&i| !scale[i].is_zero()).collect();
        let mut position = vec![usize::MAX; self.middle];
        for (p, &i) in kept.iter().enumerate() {
            position[i] = p;
        }
        let extra = if m.is_zero() { 0 } else { kept.len() };
        let mut coeffs = IntMatrix::zeros(kept.len(), self.transformed_in.len() + extra);
        for (j, col) in self.transformed_in.iter().enumerate() {
            for (i, y) in col {
                if scale[*i].is_zero() {
                    return Err(LinalgError::NotAComplex);
                }
                let (q, rem) = y.div_rem(&scale[*i]);
                if !rem.is_zero() {
                    return Err(LinalgError::NotAComplex);
                }
                coeffs[(position[*i], j)] = q;
            }
        }
        if !m.is_zero() {
            for (p, &i) in kept.iter().enumerate() {
                coeffs[(p, self.transformed_in.len() + p)] = &m / &scale[i];
            }
        }
        Ok(PresentedGroup::new(kept.len(), coeffs))
    }
}
