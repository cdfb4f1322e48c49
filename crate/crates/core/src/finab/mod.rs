//! Symmetric cohomology of finite abelian groups with trivial coefficients.
//!
//! Dualizing the initial Breen-Deligne segment of `G` against `A` gives the
//! complex
//!
//! ```text
//! C(G,A) -> C(G^2,A) -> C(G^3,A)+C(G^2,A) -> C(G^4,A)+C(G^3,A)+C(G^3,A)+C(G^2,A)+C(G,A)
//! ```
//!
//! in degrees 1 to 4, where `C(X, A)` is the group of all maps `X -> A`. Its
//! cohomology in degrees 2 and 3 is `H2s(G, A)` and `H3s(G, A)`. Over sets,
//! `H2s` is `Ext^1(G, A)` and `H3s` vanishes; [`verify_low_degree`] checks both.
//!
//! A coefficient group `A = Z/m_1 + ... + Z/m_r` splits every cochain group and
//! every differential into `r` blocks, so each cohomology group is the direct
//! sum of the cohomology with coefficients in the cyclic factors. The integer
//! matrices of the dual differentials are the matrices produced by
//! [`BdSegment::instantiate`], whose rows index source tuples and columns
//! target tuples; acting on column vectors of cochain values they are exactly
//! the coboundary maps.

mod bruteforce;
mod group;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::bd_formal::{encode_tuple, BdError, BdSegment};
use crate::exact_linalg::{homology, CyclicHomology, IntMatrix, LinalgError, PresentedGroup};

pub use bruteforce::{enumerate_symmetric_classes, SymmetricClassCensus};
pub use group::{FinGenAbGroup, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinabError {
    #[error("base group {0} must be finite")]
    InfiniteBase(String),
    #[error(transparent)]
    Formal(#[from] BdError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("brute-force enumeration of {0} is out of range")]
    EnumerationTooLarge(String),
}

fn require_finite(g: &FinGenAbGroup) -> Result<(), FinabError> {
    if g.is_finite() {
        Ok(())
    } else {
        Err(FinabError::InfiniteBase(g.to_string()))
    }
}

/// `Ext^1(G, A) = sum_(i,j) Z/gcd(n_i, m_j)` with `gcd(n, 0) = n`.
pub fn ext1(g: &FinGenAbGroup, a: &FinGenAbGroup) -> Result<PresentedGroup, FinabError> {
    require_finite(g)?;
    let mut orders = Vec::new();
    for &n in g.cyclic_orders() {
        for &m in a.cyclic_orders() {
            orders.push(BigInt::from(n.gcd(&m)));
        }
    }
    Ok(PresentedGroup::from_cyclic_orders(&orders))
}

/// Cochain group `C(G^n, A)` as a presented group: one generator per
/// (tuple, cyclic factor of `A`), relation `m_j` on the `j`-th factor.
#[derive(Clone, Debug)]
pub struct CochainTerm {
    pub tuples: usize,
    pub coefficients: FinGenAbGroup,
}

impl CochainTerm {
    pub fn new(g: &FinGenAbGroup, arities: &[usize], coefficients: &FinGenAbGroup) -> Self {
        let n = g.order_usize();
        CochainTerm {
            tuples: arities.iter().map(|&a| n.pow(a as u32)).sum(),
            coefficients: coefficients.clone(),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.tuples * self.coefficients.cyclic_orders().len()
    }

    pub fn presented(&self) -> PresentedGroup {
        let f = self.coefficients.cyclic_orders();
        let mut orders = Vec::with_capacity(self.generator_count());
        for _ in 0..self.tuples {
            orders.extend(f.iter().copied());
        }
        PresentedGroup::from_cyclic_orders(&orders)
    }
}

/// `delta (x) id_f`: generator `(tuple, j)` has index `tuple * f + j`.
fn tensor_with_factors(delta: &IntMatrix, f: usize) -> IntMatrix {
    IntMatrix::from_triplets(
        delta.rows() * f,
        delta.cols() * f,
        delta
            .nonzeros()
            .flat_map(|(i, j, v)| (0..f).map(move |k| (i * f + k, j * f + k, v.clone())))
            .collect::<Vec<_>>(),
    )
}

/// Integer coboundary matrices of the symmetric complex of a finite group, in
/// unnormalized or normalized form.
#[derive(Clone, Debug)]
pub struct SymComplex {
    pub group: FinGenAbGroup,
    /// `deltas[i]` maps degree `i + 1` cochains to degree `i + 2`.
    pub deltas: [IntMatrix; 3],
    pub normalized: bool,
}

impl SymComplex {
    pub fn new(g: &FinGenAbGroup) -> Result<Self, FinabError> {
        require_finite(g)?;
        let bd = BdSegment::standard();
        Ok(SymComplex {
            group: g.clone(),
            deltas: [bd.instantiate(g, 1)?, bd.instantiate(g, 2)?, bd.instantiate(g, 3)?],
            normalized: false,
        })
    }

    /// Subcomplex of cochains vanishing on every all-zero tuple.
    pub fn normalized(g: &FinGenAbGroup) -> Result<Self, FinabError> {
        let full = Self::new(g)?;
        let bd = BdSegment::standard();
        let n = g.order_usize();
        // basis indices of every term, with the all-zero tuple of each summand removed
        let keep = |degree: usize| -> Vec<usize> {
            let mut out = Vec::new();
            let mut offset = 0;
            for &arity in &bd.shapes[degree] {
                let size = n.pow(arity as u32);
                out.extend(offset + 1..offset + size);
                offset += size;
            }
            out
        };
        let [d1, d2, d3] = &full.deltas;
        Ok(SymComplex {
            group: g.clone(),
            deltas: [
                d1.select(&keep(1), &keep(0)),
                d2.select(&keep(2), &keep(1)),
                d3.select(&keep(3), &keep(2)),
            ],
            normalized: true,
        })
    }

    /// Number of basis tuples in cochain degree `degree` (1..=4).
    pub fn term_rank(&self, degree: usize) -> usize {
        match degree {
            1 => self.deltas[0].cols(),
            2..=4 => self.deltas[degree - 2].rows(),
            _ => 0,
        }
    }

    /// Checks that consecutive differentials compose to zero.
    pub fn is_complex(&self) -> bool {
        (&self.deltas[1] * &self.deltas[0]).is_zero() && (&self.deltas[2] * &self.deltas[1]).is_zero()
    }

    pub fn prepare(&self) -> PreparedSymComplex {
        PreparedSymComplex {
            degree2: CyclicHomology::new(&self.deltas[0], &self.deltas[1]),
            degree3: CyclicHomology::new(&self.deltas[1], &self.deltas[2]),
        }
    }

    /// Cohomology in degree 2 or 3 through the fully tensored presented
    /// complex and the general homology routine. Slower than
    /// [`PreparedSymComplex`] but exercises the presented-group path.
    pub fn cohomology_tensored(&self, a: &FinGenAbGroup, degree: usize) -> Result<PresentedGroup, FinabError> {
        assert!(degree == 2 || degree == 3, "symmetric cohomology lives in degrees 2 and 3");
        let f = a.cyclic_orders().len();
        let d_in = tensor_with_factors(&self.deltas[degree - 2], f);
        let d_out = tensor_with_factors(&self.deltas[degree - 1], f);
        let term = |rank: usize| CochainTerm {
            tuples: rank,
            coefficients: a.clone(),
        };
        let src = term(self.term_rank(degree - 1)).presented();
        let mid = term(self.term_rank(degree)).presented();
        let tgt = term(self.term_rank(degree + 1)).presented();
        Ok(homology(&d_in, &d_out, [&src, &mid, &tgt])?)
    }
}

/// Smith data of a [`SymComplex`], reusable across coefficient groups.
pub struct PreparedSymComplex {
    degree2: CyclicHomology,
    degree3: CyclicHomology,
}

impl PreparedSymComplex {
    fn sum_over_factors(h: &CyclicHomology, a: &FinGenAbGroup) -> Result<PresentedGroup, FinabError> {
        let parts = a
            .cyclic_orders()
            .iter()
            .map(|&m| h.with_modulus(&BigInt::from(m)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PresentedGroup::direct_sum(&parts))
    }

    pub fn h2(&self, a: &FinGenAbGroup) -> Result<PresentedGroup, FinabError> {
        Self::sum_over_factors(&self.degree2, a)
    }

    pub fn h3(&self, a: &FinGenAbGroup) -> Result<PresentedGroup, FinabError> {
        Self::sum_over_factors(&self.degree3, a)
    }
}

pub fn h2s(g: &FinGenAbGroup, a: &FinGenAbGroup) -> Result<PresentedGroup, FinabError> {
    let c = SymComplex::new(g)?;
    PreparedSymComplex::sum_over_factors(&CyclicHomology::new(&c.deltas[0], &c.deltas[1]), a)
}

pub fn h3s(g: &FinGenAbGroup, a: &FinGenAbGroup) -> Result<PresentedGroup, FinabError> {
    let c = SymComplex::new(g)?;
    PreparedSymComplex::sum_over_factors(&CyclicHomology::new(&c.deltas[1], &c.deltas[2]), a)
}

/// Normalized `(H2s, H3s)`.
pub fn h_normalized(g: &FinGenAbGroup, a: &FinGenAbGroup) -> Result<(PresentedGroup, PresentedGroup), FinabError> {
    let p = SymComplex::normalized(g)?.prepare();
    Ok((p.h2(a)?, p.h3(a)?))
}

/// Coboundaries of the bar complex `C(G) -> C(G^2) -> C(G^3)`, built directly
/// from `(df)(x,y) = f(x+y) - f(x) - f(y)` and
/// `(dc)(x,y,z) = c(y,z) - c(x+y,z) + c(x,y+z) - c(x,y)`.
pub fn bar_differentials(g: &FinGenAbGroup) -> Result<(IntMatrix, IntMatrix), FinabError> {
    require_finite(g)?;
    let n = g.order_usize();
    let els = g.elements();
    let sum = |i: usize, j: usize| g.index_of(&g.add(&els[i], &els[j]));
    let mut first = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let row = encode_tuple(&[x, y], n);
            first.push((row, sum(x, y), 1i64));
            first.push((row, x, -1));
            first.push((row, y, -1));
        }
    }
    let mut second = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let row = encode_tuple(&[x, y, z], n);
                second.push((row, encode_tuple(&[y, z], n), 1i64));
                second.push((row, encode_tuple(&[sum(x, y), z], n), -1));
                second.push((row, encode_tuple(&[x, sum(y, z)], n), 1));
                second.push((row, encode_tuple(&[x, y], n), -1));
            }
        }
    }
    Ok((
        IntMatrix::from_triplets(n * n, n, first),
        IntMatrix::from_triplets(n * n * n, n * n, second),
    ))
}

/// Second Hochschild cohomology `H2_0(G, A)` of the bar complex.
pub fn h2_hochschild(g: &FinGenAbGroup, a: &FinGenAbGroup) -> Result<PresentedGroup, FinabError> {
    let (d1, d2) = bar_differentials(g)?;
    let h = CyclicHomology::new(&d1, &d2);
    PreparedSymComplex::sum_over_factors(&h, a)
}

/// Outcome of [`verify_low_degree`].
#[derive(Clone, Debug)]
pub struct LowDegreeReport {
    pub group: FinGenAbGroup,
    pub coefficients: FinGenAbGroup,
    pub h2s: PresentedGroup,
    pub ext1: PresentedGroup,
    pub h3s: PresentedGroup,
    pub h2s_normalized: PresentedGroup,
    pub h3s_normalized: PresentedGroup,
}

impl LowDegreeReport {
    pub fn h2_matches_ext1(&self) -> bool {
        self.h2s == self.ext1
    }

    pub fn h3_vanishes(&self) -> bool {
        self.h3s.is_trivial()
    }

    pub fn normalized_agrees(&self) -> bool {
        self.h2s_normalized == self.h2s && self.h3s_normalized == self.h3s
    }

    pub fn passed(&self) -> bool {
        self.h2_matches_ext1() && self.h3_vanishes() && self.normalized_agrees()
    }
}

/// Checks `H2s = Ext^1` and `H3s = 0`, and that the normalized complex gives
/// the same groups.
pub fn verify_low_degree(g: &FinGenAbGroup, a: &FinGenAbGroup) -> Result<LowDegreeReport, FinabError> {
    let full = SymComplex::new(g)?.prepare();
    let normalized = SymComplex::normalized(g)?.prepare();
    low_degree_from_prepared(g, a, &full, &normalized)
}

/// [`verify_low_degree`] reusing Smith data across coefficient groups.
pub fn low_degree_from_prepared(
    g: &FinGenAbGroup,
    a: &FinGenAbGroup,
    full: &PreparedSymComplex,
    normalized: &PreparedSymComplex,
) -> Result<LowDegreeReport, FinabError> {
    Ok(LowDegreeReport {
        group: g.clone(),
        coefficients: a.clone(),
        h2s: full.h2(a)?,
        ext1: ext1(g, a)?,
        h3s: full.h3(a)?,
        h2s_normalized: normalized.h2(a)?,
        h3s_normalized: normalized.h3(a)?,
    })
}
