//! Symbolic initial segment of the Breen-Deligne resolution
//!
//! ```text
//! Z[G^4]+Z[G^3]+Z[G^3]+Z[G^2]+Z[G] --d3--> Z[G^3]+Z[G^2] --d2--> Z[G^2] --d1--> Z[G] --d0--> G
//! ```
//!
//! Chains are integer combinations of tuple symbols `[g1, ..., gk]` whose
//! components are elements of a free abelian group on the formal variables
//! `x, y, z, t`. The generator rules are stored as data ([`Rule`]) so the same
//! table drives symbolic application ([`BdSegment::apply_d`]) and concrete
//! instantiation over a finite group ([`BdSegment::instantiate`]).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_linalg::IntMatrix;
use crate::finab::FinGenAbGroup;

pub const VARIABLE_NAMES: [&str; 4] = ["x", "y", "z", "t"];
pub const VARIABLE_COUNT: usize = VARIABLE_NAMES.len();

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BdError {
    #[error("no differential d{0} in the initial segment")]
    NoSuchLevel(usize),
    #[error("symbol in degree {degree}, summand {summand} with arity {arity} is not in the source of d{level}")]
    ShapeMismatch {
        level: usize,
        degree: i32,
        summand: usize,
        arity: usize,
    },
    #[error("variable {0} has no assigned group element")]
    UnassignedVariable(usize),
    #[error("group {0} is infinite; tuples cannot be enumerated")]
    InfiniteGroup(String),
}

/// Element of the free abelian group on the formal variables, as a
/// coefficient vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalGroupElement(pub [i64; VARIABLE_COUNT]);

impl FormalGroupElement {
    pub fn zero() -> Self {
        FormalGroupElement([0; VARIABLE_COUNT])
    }

    pub fn var(i: usize) -> Self {
        let mut c = [0; VARIABLE_COUNT];
        c[i] = 1;
        FormalGroupElement(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(other.0) {
            *a += b;
        }
        FormalGroupElement(c)
    }

    pub fn scale(&self, k: i64) -> Self {
        FormalGroupElement(self.0.map(|c| c * k))
    }

    /// `sum_i weights[i] * components[i]`
    fn combine(weights: &[i64], components: &[FormalGroupElement]) -> Self {
        weights
            .iter()
            .zip(components)
            .fold(Self::zero(), |acc, (&w, g)| acc.add(&g.scale(w)))
    }
}

impl fmt::Display for FormalGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.0.iter().zip(VARIABLE_NAMES) {
            if *c == 0 {
                continue;
            }
            let sign = if *c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{mag}{name}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FormalGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Basis symbol `[g1, ..., gk]` of `Z[G^k]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TupleSymbol(pub Vec<FormalGroupElement>);

impl TupleSymbol {
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// `[x]`, `[x, y]`, ... on the first `k` variables.
    pub fn generic(k: usize) -> Self {
        TupleSymbol((0..k).map(FormalGroupElement::var).collect())
    }
}

impl fmt::Display for TupleSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")
    }
}

/// Location of a symbol: chain degree and summand within that degree's term.
/// Degree `-1` is the group itself (the target of `d0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub degree: i32,
    pub summand: usize,
}

/// Finite integer combination of located tuple symbols, kept canonical:
/// sorted, no zero coefficients. Degree `-1` chains hold at most one symbol
/// `[g]` with coefficient 1, the group element `g` itself.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FormalChain {
    terms: BTreeMap<(Slot, TupleSymbol), BigInt>,
}

impl FormalChain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn symbol(slot: Slot, symbol: TupleSymbol) -> Self {
        let mut c = Self::zero();
        c.add_term(slot, symbol, BigInt::one());
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Slot, &TupleSymbol, &BigInt)> {
        self.terms.iter().map(|((s, t), c)| (s, t, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, slot: Slot, symbol: TupleSymbol, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let key = (slot, symbol);
        let e = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&key);
        }
        if slot.degree < 0 {
            self.collapse_group_part();
        }
    }

    /// In degree -1 the symbols are group elements, so `n[g] + m[h]` is the
    /// single element `ng + mh`.
    fn collapse_group_part(&mut self) {
        let group_keys: Vec<(Slot, TupleSymbol)> =
            self.terms.keys().filter(|(s, _)| s.degree < 0).cloned().collect();
        if group_keys.is_empty() {
            return;
        }
        let mut total = FormalGroupElement::zero();
        let mut slot = group_keys[0].0;
        for key in group_keys {
            let coeff = self.terms.remove(&key).expect("present");
            let k = i64::try_from(&coeff).expect("group coefficient fits in i64");
            total = total.add(&key.1 .0[0].scale(k));
            slot = key.0;
        }
        if !total.is_zero() {
            self.terms.insert((slot, TupleSymbol(vec![total])), BigInt::one());
        }
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        for ((s, t), c) in &self.terms {
            out.add_term(*s, t.clone(), c * k);
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((s, t), c) in &other.terms {
            out.add_term(*s, t.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&BigInt::from(-1))
    }
}

impl fmt::Display for FormalChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((slot, sym), c)) in self.terms.iter().enumerate() {
            let neg = c.sign() == num_bigint::Sign::Minus;
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{sym}@d{}.{}", slot.degree, slot.summand)?;
        }
        Ok(())
    }
}

impl fmt::Debug for FormalChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// One output term of a generator rule: `coeff * [c_1, ..., c_j]` in the given
/// target summand, each component a fixed integer combination of the input
/// components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleTerm {
    pub target_summand: usize,
    pub coeff: i64,
    pub components: Vec<Vec<i64>>,
}

/// Image of the generic generator of one source summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub source_summand: usize,
    pub arity: usize,
    pub terms: Vec<RuleTerm>,
}

/// Term shapes (arity of each summand) and generator rules of degrees 0..3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BdSegment {
    /// `shapes[d]` lists the summand arities of the degree-`d` term.
    pub shapes: Vec<Vec<usize>>,
    /// `rules[l]` are the rules of `d_l`, one per source summand.
    pub rules: Vec<Vec<Rule>>,
}

fn term(target_summand: usize, coeff: i64, components: &[&[i64]]) -> RuleTerm {
    RuleTerm {
        target_summand,
        coeff,
        components: components.iter().map(|c| c.to_vec()).collect(),
    }
}

impl BdSegment {
    /// The standard initial segment.
    pub fn standard() -> Self {
        // component shorthands over input (x, y, z, t)
        const X: &[i64] = &[1, 0, 0, 0];
        const Y: &[i64] = &[0, 1, 0, 0];
        const Z: &[i64] = &[0, 0, 1, 0];
        const T: &[i64] = &[0, 0, 0, 1];
        const XY: &[i64] = &[1, 1, 0, 0];
        const YZ: &[i64] = &[0, 1, 1, 0];
        const ZT: &[i64] = &[0, 0, 1, 1];

        let d0 = vec![Rule {
            source_summand: 0,
            arity: 1,
            terms: vec![term(0, 1, &[X])],
        }];
        let d1 = vec![Rule {
            source_summand: 0,
            arity: 2,
            terms: vec![term(0, 1, &[XY]), term(0, -1, &[X]), term(0, -1, &[Y])],
        }];
        let d2 = vec![
            Rule {
                source_summand: 0,
                arity: 3,
                terms: vec![
                    term(0, 1, &[XY, Z]),
                    term(0, -1, &[X, YZ]),
                    term(0, 1, &[X, Y]),
                    term(0, -1, &[Y, Z]),
                ],
            },
            Rule {
                source_summand: 1,
                arity: 2,
                terms: vec![term(0, 1, &[X, Y]), term(0, -1, &[Y, X])],
            },
        ];
        let d3 = vec![
            Rule {
                source_summand: 0,
                arity: 4,
                terms: vec![
                    term(0, 1, &[XY, Z, T]),
                    term(0, -1, &[X, YZ, T]),
                    term(0, 1, &[X, Y, ZT]),
                    term(0, -1, &[X, Y, Z]),
                    term(0, -1, &[Y, Z, T]),
                ],
            },
            Rule {
                source_summand: 1,
                arity: 3,
                terms: vec![
                    term(0, -1, &[X, Y, Z]),
                    term(0, 1, &[X, Z, Y]),
                    term(0, -1, &[Z, X, Y]),
                    term(1, 1, &[XY, Z]),
                    term(1, -1, &[X, Z]),
                    term(1, -1, &[Y, Z]),
                ],
            },
            Rule {
                source_summand: 2,
                arity: 3,
                terms: vec![
                    term(0, 1, &[X, Y, Z]),
                    term(0, -1, &[Y, X, Z]),
                    term(0, 1, &[Y, Z, X]),
                    term(1, 1, &[X, YZ]),
                    term(1, -1, &[X, Y]),
                    term(1, -1, &[X, Z]),
                ],
            },
            Rule {
                source_summand: 3,
                arity: 2,
                terms: vec![term(1, 1, &[X, Y]), term(1, 1, &[Y, X])],
            },
            Rule {
                source_summand: 4,
                arity: 1,
                terms: vec![term(1, 1, &[X, X])],
            },
        ];
        BdSegment {
            shapes: vec![vec![1], vec![2], vec![3, 2], vec![4, 3, 3, 2, 1]],
            rules: vec![d0, d1, d2, d3],
        }
    }

    /// Copy with the sign of one rule term flipped; used to check that the
    /// verifier notices broken differentials.
    pub fn with_flipped_sign(&self, level: usize, rule: usize, term: usize) -> Self {
        let mut s = self.clone();
        s.rules[level][rule].terms[term].coeff *= -1;
        s
    }

    fn rule(&self, level: usize, summand: usize) -> Option<&Rule> {
        self.rules.get(level)?.iter().find(|r| r.source_summand == summand)
    }

    /// Target shape of `d_level`: arities per summand (`[1]` for the group).
    fn target_shape(&self, level: usize) -> Vec<usize> {
        if level == 0 {
            vec![1]
        } else {
            self.shapes[level - 1].clone()
        }
    }

    /// Applies `d_level` to a chain living in the degree-`level` term.
    pub fn apply_d(&self, level: usize, chain: &FormalChain) -> Result<FormalChain, BdError> {
        if level >= self.rules.len() {
            return Err(BdError::NoSuchLevel(level));
        }
        let mut out = FormalChain::zero();
        for (slot, sym, coeff) in chain.terms() {
            let rule = (slot.degree == level as i32)
                .then(|| self.rule(level, slot.summand))
                .flatten()
                .filter(|r| r.arity == sym.arity())
                .ok_or(BdError::ShapeMismatch {
                    level,
                    degree: slot.degree,
                    summand: slot.summand,
                    arity: sym.arity(),
                })?;
            for t in &rule.terms {
                let comps: Vec<FormalGroupElement> = t
                    .components
                    .iter()
                    .map(|w| FormalGroupElement::combine(&w[..sym.arity()], &sym.0))
                    .collect();
                let target = Slot {
                    degree: level as i32 - 1,
                    summand: t.target_summand,
                };
                out.add_term(target, TupleSymbol(comps), coeff * BigInt::from(t.coeff));
            }
        }
        Ok(out)
    }

    /// Generic generator of each source summand of `d_level`, on distinct
    /// variables.
    pub fn generators(&self, level: usize) -> Vec<FormalChain> {
        self.shapes[level]
            .iter()
            .enumerate()
            .map(|(summand, &arity)| {
                FormalChain::symbol(
                    Slot {
                        degree: level as i32,
                        summand,
                    },
                    TupleSymbol::generic(arity),
                )
            })
            .collect()
    }

    /// Evaluates `d_(level-1) . d_level` on every generator family.
    pub fn verify_d_squared(&self) -> DSquaredReport {
        let mut residues = Vec::new();
        for level in 1..self.rules.len() {
            for (summand, gen) in self.generators(level).into_iter().enumerate() {
                let image = self.apply_d(level, &gen).expect("generator in source");
                let residue = self.apply_d(level - 1, &image).expect("image in source");
                residues.push(Residue {
                    composite: format!("d{}d{}", level - 1, level),
                    generator: gen.terms().next().map(|(_, s, _)| s.to_string()).unwrap_or_default(),
                    summand,
                    residue,
                });
            }
        }
        DSquaredReport { residues }
    }

    /// Row/column indices of the tuples of a term, concatenated over summands.
    pub fn term_size(&self, degree: usize, order: usize) -> usize {
        self.shapes[degree].iter().map(|&a| order.pow(a as u32)).sum()
    }

    /// Matrix of `d_level` for a concrete finite group: one row per basis
    /// tuple of the source, one column per basis tuple of the target (for
    /// `d0`, one column per cyclic factor of `G`, holding the element's
    /// coordinates).
    ///
    /// Tuples are ordered summand by summand, and lexicographically within a
    /// summand (first component slowest) over the element order of
    /// [`FinGenAbGroup::elements`].
    pub fn instantiate(&self, g: &FinGenAbGroup, level: usize) -> Result<IntMatrix, BdError> {
        if level >= self.rules.len() {
            return Err(BdError::NoSuchLevel(level));
        }
        if !g.is_finite() {
            return Err(BdError::InfiniteGroup(g.to_string()));
        }
        let n = g.order_usize();
        let elements = g.elements();
        let src_shape = &self.shapes[level];
        let src_offsets = offsets(src_shape, n);
        let (tgt_offsets, cols) = if level == 0 {
            (vec![0], g.cyclic_orders().len())
        } else {
            let s = self.target_shape(level);
            let o = offsets(&s, n);
            let total = s.iter().map(|&a| n.pow(a as u32)).sum();
            (o, total)
        };
        let rows = src_offsets.last().copied().unwrap_or(0)
            + src_shape.last().map_or(0, |&a| n.pow(a as u32));
        let mut triplets: Vec<(usize, usize, i64)> = Vec::new();
        for rule in &self.rules[level] {
            let arity = rule.arity;
            let count = n.pow(arity as u32);
            let mut tuple = vec![0usize; arity];
            for idx in 0..count {
                decode_tuple(idx, n, &mut tuple);
                let row = src_offsets[rule.source_summand] + idx;
                for t in &rule.terms {
                    if level == 0 {
                        let e = &elements[tuple[0]];
                        for (c, coord) in e.iter().enumerate() {
                            triplets.push((row, c, t.coeff * coord));
                        }
                        continue;
                    }
                    let mut col = 0usize;
                    for w in &t.components {
                        let mut acc = g.zero_element();
                        for (i, &k) in w[..arity].iter().enumerate() {
                            if k != 0 {
                                acc = g.add(&acc, &g.scale(&elements[tuple[i]], k));
                            }
                        }
                        col = col * n + g.index_of(&acc);
                    }
                    triplets.push((row, tgt_offsets[t.target_summand] + col, t.coeff));
                }
            }
        }
        Ok(IntMatrix::from_triplets(rows, cols, triplets))
    }

    /// Substitutes group elements for the formal variables. Returns the
    /// coefficient of each concrete tuple, keyed by `(slot, element indices)`.
    pub fn evaluate_chain(
        chain: &FormalChain,
        g: &FinGenAbGroup,
        assignment: &[Option<Vec<i64>>],
    ) -> Result<BTreeMap<(Slot, Vec<usize>), BigInt>, BdError> {
        let mut out: BTreeMap<(Slot, Vec<usize>), BigInt> = BTreeMap::new();
        for (slot, sym, coeff) in chain.terms() {
            let mut idx = Vec::with_capacity(sym.arity());
            for comp in &sym.0 {
                let mut acc = g.zero_element();
                for (v, &k) in comp.0.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    let value = assignment
                        .get(v)
                        .and_then(Option::as_ref)
                        .ok_or(BdError::UnassignedVariable(v))?;
                    acc = g.add(&acc, &g.scale(&g.reduce(value), k));
                }
                idx.push(g.index_of(&acc));
            }
            let e = out.entry((*slot, idx)).or_insert_with(BigInt::zero);
            *e += coeff;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

fn offsets(shape: &[usize], n: usize) -> Vec<usize> {
    let mut acc = 0;
    shape
        .iter()
        .map(|&a| {
            let o = acc;
            acc += n.pow(a as u32);
            o
        })
        .collect()
}

/// Inverse of the lexicographic tuple index.
pub fn decode_tuple(mut idx: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
}

/// Lexicographic index of a tuple of element indices.
pub fn encode_tuple(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * n + i)
}

/// Residue of one composite on one generator family.
#[derive(Clone, Debug)]
pub struct Residue {
    pub composite: String,
    pub generator: String,
    pub summand: usize,
    pub residue: FormalChain,
}

#[derive(Clone, Debug)]
pub struct DSquaredReport {
    pub residues: Vec<Residue>,
}

impl DSquaredReport {
    pub fn all_zero(&self) -> bool {
        self.residues.iter().all(|r| r.residue.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slot(degree: i32, summand: usize) -> Slot {
        Slot { degree, summand }
    }

    fn sym(comps: &[&[i64]]) -> TupleSymbol {
        TupleSymbol(
            comps
                .iter()
                .map(|c| {
                    let mut a = [0; VARIABLE_COUNT];
                    a[..c.len()].copy_from_slice(c);
                    FormalGroupElement(a)
                })
                .collect(),
        )
    }

    #[test]
    fn d1_on_pair() {
        let bd = BdSegment::standard();
        let c = FormalChain::symbol(slot(1, 0), TupleSymbol::generic(2));
        let out = bd.apply_d(1, &c).unwrap();
        let mut expected = FormalChain::zero();
        expected.add_term(slot(0, 0), sym(&[&[1, 1]]), 1.into());
        expected.add_term(slot(0, 0), sym(&[&[1]]), (-1).into());
        expected.add_term(slot(0, 0), sym(&[&[0, 1]]), (-1).into());
        assert_eq!(out, expected);
    }

    #[test]
    fn d2_on_pair_summand() {
        let bd = BdSegment::standard();
        let c = FormalChain::symbol(slot(2, 1), TupleSymbol::generic(2));
        let out = bd.apply_d(2, &c).unwrap();
        let mut expected = FormalChain::zero();
        expected.add_term(slot(1, 0), sym(&[&[1], &[0, 1]]), 1.into());
        expected.add_term(slot(1, 0), sym(&[&[0, 1], &[1]]), (-1).into());
        assert_eq!(out, expected);
    }

    #[test]
    fn zero_chain_maps_to_zero() {
        let bd = BdSegment::standard();
        for level in 0..4 {
            assert!(bd.apply_d(level, &FormalChain::zero()).unwrap().is_zero());
        }
    }

    #[test]
    fn d0_collapses_to_group_element() {
        let bd = BdSegment::standard();
        // d0(d1[x,y]) = (x+y) - x - y = 0 as a group element
        let c = FormalChain::symbol(slot(1, 0), TupleSymbol::generic(2));
        let image = bd.apply_d(1, &c).unwrap();
        assert!(bd.apply_d(0, &image).unwrap().is_zero());
        // d0(2[x]) = 2x
        let two_x = FormalChain::symbol(slot(0, 0), TupleSymbol::generic(1)).scaled(&2.into());
        let out = bd.apply_d(0, &two_x).unwrap();
        assert_eq!(out.to_string(), "[2x]@d-1.0");
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let bd = BdSegment::standard();
        let c = FormalChain::symbol(slot(2, 0), TupleSymbol::generic(2));
        assert!(matches!(bd.apply_d(2, &c), Err(BdError::ShapeMismatch { .. })));
        assert!(matches!(bd.apply_d(1, &c), Err(BdError::ShapeMismatch { .. })));
        assert_eq!(bd.apply_d(4, &c).unwrap_err(), BdError::NoSuchLevel(4));
    }

    #[test]
    fn d_squared_vanishes() {
        let report = BdSegment::standard().verify_d_squared();
        assert_eq!(report.residues.len(), 1 + 2 + 5);
        for r in &report.residues {
            assert!(r.residue.is_zero(), "{} on {}: {}", r.composite, r.generator, r.residue);
        }
    }

    #[test]
    fn flipped_sign_is_detected() {
        let broken = BdSegment::standard().with_flipped_sign(2, 1, 1);
        let report = broken.verify_d_squared();
        assert!(!report.all_zero());
    }

    #[test]
    fn instantiate_trivial_group_level_one() {
        let bd = BdSegment::standard();
        let g = FinGenAbGroup::new(vec![]).unwrap();
        let m = bd.instantiate(&g, 1).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![-1]]));
    }

    #[test]
    fn instantiate_z2_level_one() {
        let bd = BdSegment::standard();
        let g = FinGenAbGroup::new(vec![2]).unwrap();
        let m = bd.instantiate(&g, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 2));
        // row (1,1): [0] - 2[1]
        assert_eq!(m.row(3), &[BigInt::from(1), BigInt::from(-2)]);
        // row (0,0): [0] - [0] - [0]
        assert_eq!(m.row(0), &[BigInt::from(-1), BigInt::from(0)]);
    }

    #[test]
    fn instantiate_z2_level_two_pair_summand() {
        let bd = BdSegment::standard();
        let g = FinGenAbGroup::new(vec![2]).unwrap();
        let m = bd.instantiate(&g, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (8 + 4, 4));
        // pair summand starts at row 8; tuple (1,0) has index 2
        let row = m.row(8 + 2);
        // [1,0] - [0,1]: columns 2 and 1
        assert_eq!(row, &[0.into(), BigInt::from(-1), BigInt::from(1), 0.into()]);
    }

    #[test]
    fn instantiate_rejects_infinite_group() {
        let bd = BdSegment::standard();
        let g = FinGenAbGroup::new(vec![0]).unwrap();
        assert!(matches!(bd.instantiate(&g, 1), Err(BdError::InfiniteGroup(_))));
    }

    #[test]
    fn evaluate_simple_chains() {
        let g = FinGenAbGroup::new(vec![2]).unwrap();
        let a = vec![Some(vec![1]), Some(vec![1]), None, None];
        assert!(BdSegment::evaluate_chain(&FormalChain::zero(), &g, &a).unwrap().is_empty());
        let c = FormalChain::symbol(slot(1, 0), TupleSymbol::generic(2));
        let e = BdSegment::evaluate_chain(&c, &g, &a).unwrap();
        assert_eq!(e.into_iter().collect::<Vec<_>>(), vec![((slot(1, 0), vec![1, 1]), BigInt::from(1))]);
        let d = BdSegment::standard().apply_d(1, &c).unwrap();
        let e = BdSegment::evaluate_chain(&d, &g, &a).unwrap();
        assert_eq!(
            e.into_iter().collect::<Vec<_>>(),
            vec![
                ((slot(0, 0), vec![0]), BigInt::from(1)),
                ((slot(0, 0), vec![1]), BigInt::from(-2))
            ]
        );
    }

    #[test]
    fn unassigned_variable() {
        let g = FinGenAbGroup::new(vec![2]).unwrap();
        let c = FormalChain::symbol(slot(1, 0), TupleSymbol::generic(2));
        let a = vec![Some(vec![1]), None];
        assert_eq!(
            BdSegment::evaluate_chain(&c, &g, &a).unwrap_err(),
            BdError::UnassignedVariable(1)
        );
    }
}
