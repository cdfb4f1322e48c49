//! Sparse multivariate (Laurent) polynomials over arbitrary-precision
//! integers, subring constraints given by numerical semigroups, and
//! degree-bounded module membership with re-verifiable certificates.
//!
//! Terms are kept in graded lexicographic order on the declared variable
//! order. Text output lists terms from the smallest monomial up, so `1 - s^2*t^2`
//! prints with its constant first.

mod membership;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use membership::{
    in_subring, membership, module_product, verify_certificate, CertificateJson, DegreeBound,
    MembershipCertificate, ModuleGens, SubringSpec,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("invalid variable name {0:?}; names are lowercase ascii letters")]
    InvalidVariableName(String),
    #[error("variable {0:?} declared twice")]
    DuplicateVariable(String),
    #[error("negative power of {0} is not allowed here")]
    LaurentViolation(String),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("degree cap for {0:?} is negative")]
    NegativeBound(String),
    #[error("{0}")]
    Invalid(String),
}

/// Ordered list of named variables; some may be Laurent (allow negative
/// exponents).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    laurent: Vec<bool>,
}

impl Ring {
    /// Polynomial ring over `Z` in the given variables.
    pub fn new(names: &[&str]) -> Result<Arc<Ring>, PolyError> {
        Self::with_laurent(&names.iter().map(|&n| (n, false)).collect::<Vec<_>>())
    }

    pub fn with_laurent(vars: &[(&str, bool)]) -> Result<Arc<Ring>, PolyError> {
        let mut names: Vec<String> = Vec::new();
        let mut laurent = Vec::new();
        for &(name, l) in vars {
            if name.is_empty() || !name.bytes().all(|b| b.is_ascii_lowercase()) {
                return Err(PolyError::InvalidVariableName(name.to_string()));
            }
            if names.iter().any(|n| n == name) {
                return Err(PolyError::DuplicateVariable(name.to_string()));
            }
            names.push(name.to_string());
            laurent.push(l);
        }
        Ok(Arc::new(Ring { names, laurent }))
    }

    pub fn var_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.laurent[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then the exponent of the first variable, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn from_exponents(exps: Vec<i32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn check(&self, ring: &Ring) -> Result<(), PolyError> {
        assert_eq!(self.0.len(), ring.var_count(), "monomial of the wrong length");
        for (i, &e) in self.0.iter().enumerate() {
            if e < 0 && !ring.is_laurent(i) {
                return Err(PolyError::LaurentViolation(ring.names[i].clone()));
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant<T: Into<BigInt>>(ring: &Arc<Ring>, c: T) -> Self {
        Self::term(ring, Monomial::one(ring.var_count()), c.into())
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Self, PolyError> {
        let i = ring.require(name)?;
        let mut e = vec![0; ring.var_count()];
        e[i] = 1;
        Ok(Self::term(ring, Monomial(e), BigInt::one()))
    }

    /// `coeff * m`. Panics if `m` has a negative exponent on a polynomial
    /// variable; use [`Poly::monomial`] for a checked version.
    pub fn term(ring: &Arc<Ring>, m: Monomial, coeff: BigInt) -> Self {
        m.check(ring).expect("monomial violates Laurent flags");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn monomial(ring: &Arc<Ring>, exps: Vec<i32>, coeff: BigInt) -> Result<Self, PolyError> {
        let m = Monomial(exps);
        m.check(ring)?;
        Ok(Self::term(ring, m, coeff))
    }

    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Self, PolyError> {
        parse::parse(ring, text)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Largest exponent of variable `i` (0 for the zero polynomial).
    pub fn max_exponent(&self, i: usize) -> i32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn min_exponent(&self, i: usize) -> i32 {
        self.terms.keys().map(|m| m.0[i]).min().unwrap_or(0)
    }

    pub fn mentions(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] != 0)
    }

    fn same_ring(&self, other: &Poly) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials live in different rings"
        );
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a unit monomial `±m`.
    fn unit_inverse(&self) -> Option<Poly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if !c.abs().is_one() {
            return None;
        }
        let inv = Monomial(m.0.iter().map(|e| -e).collect());
        inv.check(&self.ring).ok()?;
        Some(Poly::term(&self.ring, inv, c.clone()))
    }

    /// Ring homomorphism sending the `i`-th variable of this ring to
    /// `images[i]`, which all live in `target`. A negative power needs an
    /// image that is a unit monomial.
    pub fn map_ring(&self, target: &Arc<Ring>, images: &[Poly]) -> Result<Poly, PolyError> {
        assert_eq!(images.len(), self.ring.var_count(), "one image per variable");
        let mut inverses: Vec<Option<Poly>> = vec![None; images.len()];
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = if e > 0 {
                    &images[i]
                } else {
                    if inverses[i].is_none() {
                        inverses[i] = Some(
                            images[i]
                                .unit_inverse()
                                .ok_or_else(|| PolyError::LaurentViolation(self.ring.names[i].clone()))?,
                        );
                    }
                    inverses[i].as_ref().unwrap()
                };
                t = &t * &base.pow(e.unsigned_abs());
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Replaces one variable by a polynomial of the same ring.
    pub fn substitute(&self, var: &str, replacement: &Poly) -> Result<Poly, PolyError> {
        self.same_ring(replacement);
        let k = self.ring.require(var)?;
        let images: Vec<Poly> = (0..self.ring.var_count())
            .map(|i| {
                if i == k {
                    replacement.clone()
                } else {
                    let mut e = vec![0; self.ring.var_count()];
                    e[i] = 1;
                    Poly::term(&self.ring, Monomial(e), BigInt::one())
                }
            })
            .collect();
        self.map_ring(&self.ring.clone(), &images)
    }

    /// Moves the polynomial into a ring containing all its variables by name.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Poly, PolyError> {
        let images = self
            .ring
            .names
            .iter()
            .map(|n| Poly::var(target, n))
            .collect::<Result<Vec<_>, _>>()?;
        self.map_ring(target, &images)
    }

    /// Sign making the coefficient of the smallest monomial positive.
    pub fn sign_normalized(&self) -> Poly {
        match self.terms.values().next() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.same_ring(rhs);
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

pub(crate) fn format_monomial(ring: &Ring, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                ring.names[i].clone()
            } else {
                format!("{}^{}", ring.names[i], e)
            }
        })
        .collect();
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", format_monomial(&self.ring, m))?;
            } else {
                write!(f, "{a}*{}", format_monomial(&self.ring, m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
