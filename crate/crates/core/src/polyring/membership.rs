//! Subring constraints, finitely generated submodules and bounded membership.
//!
//! A membership query fixes a finite set of admissible multiplier monomials
//! (inside the degree caps and the coefficient subring), expands every
//! monomial-times-generator product, and asks for an integer combination equal
//! to the target. Failure means only that no certificate exists at that bound.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Monomial, Poly, PolyError, Ring};
use crate::exact_linalg::{solve, IntMatrix};
use crate::semigroup::NumericalSemigroup;

/// Monomials whose exponent in `variable` lies in `semigroup`; all other
/// variables are unrestricted. No variable means no constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubringSpec {
    variable: Option<String>,
    semigroup: NumericalSemigroup,
}

impl SubringSpec {
    pub fn identity() -> Self {
        SubringSpec { variable: None, semigroup: NumericalSemigroup::naturals() }
    }

    pub fn on(variable: &str, semigroup: NumericalSemigroup) -> Self {
        // closure under products is closure of the exponent set under sums
        let g = semigroup.generators();
        for &a in g {
            for &b in g {
                assert!(semigroup.contains(a + b), "semigroup not closed under addition");
            }
        }
        SubringSpec { variable: Some(variable.to_string()), semigroup }
    }

    pub fn variable(&self) -> Option<&str> {
        self.variable.as_deref()
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    fn index(&self, ring: &Ring) -> Result<Option<usize>, PolyError> {
        match &self.variable {
            None => Ok(None),
            Some(v) => ring.index(v).map(Some).ok_or_else(|| PolyError::UnknownVariable(v.clone())),
        }
    }

    pub fn admits(&self, ring: &Ring, m: &Monomial) -> bool {
        match self.index(ring) {
            Ok(Some(i)) => self.semigroup.contains_i64(m.exponents()[i] as i64),
            Ok(None) => true,
            Err(_) => m.exponents().iter().all(|&e| e >= 0),
        }
    }
}

impl fmt::Display for SubringSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.variable {
            None => write!(f, "unconstrained"),
            Some(v) => write!(f, "exponent of {v} in {}", self.semigroup),
        }
    }
}

pub fn in_subring(p: &Poly, s: &SubringSpec) -> bool {
    p.terms().all(|(m, _)| s.admits(p.ring(), m))
}

fn cmp_poly(a: &Poly, b: &Poly) -> Ordering {
    a.terms().rev().cmp(b.terms().rev())
}

/// Generators of a submodule over the coefficient subring. Generators are
/// sign-normalized, sorted and deduplicated; zero is dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleGens {
    ring: Arc<Ring>,
    gens: Vec<Poly>,
    subring: SubringSpec,
    module_vars: Vec<String>,
}

impl ModuleGens {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Poly>, subring: SubringSpec, module_vars: &[&str]) -> Result<Self, PolyError> {
        subring.index(ring)?;
        for v in module_vars {
            ring.require(v)?;
        }
        let mut gens: Vec<Poly> = gens
            .into_iter()
            .map(|g| {
                if g.ring() == ring {
                    Ok(g.sign_normalized())
                } else {
                    Err(PolyError::RingMismatch)
                }
            })
            .filter(|g| !matches!(g, Ok(p) if p.is_zero()))
            .collect::<Result<_, _>>()?;
        gens.sort_by(cmp_poly);
        gens.dedup();
        Ok(ModuleGens {
            ring: ring.clone(),
            gens,
            subring,
            module_vars: module_vars.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn subring(&self) -> &SubringSpec {
        &self.subring
    }

    pub fn module_vars(&self) -> &[String] {
        &self.module_vars
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Canonical text of every generator.
    pub fn strings(&self) -> Vec<String> {
        self.gens.iter().map(Poly::to_string).collect()
    }
}

/// All pairwise products of generators.
pub fn module_product(m: &ModuleGens, n: &ModuleGens) -> Result<ModuleGens, PolyError> {
    if m.ring != n.ring || m.subring != n.subring {
        return Err(PolyError::RingMismatch);
    }
    let mut products = Vec::with_capacity(m.len() * n.len());
    for a in &m.gens {
        for b in &n.gens {
            products.push(a * b);
        }
    }
    let vars: Vec<&str> = m.module_vars.iter().map(String::as_str).collect();
    ModuleGens::new(&m.ring, products, m.subring.clone(), &vars)
}

/// Caps on the total degree of groups of variables in multiplier monomials.
/// A group is written `x+y`; variables outside every group get exponent 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeBound(BTreeMap<String, i64>);

impl DegreeBound {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cap(mut self, vars: &[&str], cap: i64) -> Self {
        self.0.insert(vars.join("+"), cap);
        self
    }

    pub fn caps(&self) -> &BTreeMap<String, i64> {
        &self.0
    }

    /// Cap of the group containing `var`, if any.
    pub fn cap_of(&self, var: &str) -> Option<i64> {
        self.0.iter().find(|(k, _)| k.split('+').any(|v| v == var)).map(|(_, &c)| c)
    }

    /// Every cap raised by `extra`.
    pub fn raised(&self, extra: i64) -> Self {
        DegreeBound(self.0.iter().map(|(k, &c)| (k.clone(), c + extra)).collect())
    }

    /// Resolves groups to variable indices.
    fn groups(&self, ring: &Ring) -> Result<Vec<(Vec<usize>, u32)>, PolyError> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (key, &cap) in &self.0 {
            if cap < 0 {
                return Err(PolyError::NegativeBound(key.clone()));
            }
            let mut idx = Vec::new();
            for v in key.split('+') {
                let i = ring.require(v)?;
                if !seen.insert(i) {
                    return Err(PolyError::Invalid(format!("variable {v} capped twice")));
                }
                idx.push(i);
            }
            out.push((idx, cap as u32));
        }
        Ok(out)
    }

    /// Admissible multiplier monomials, in grlex order.
    pub fn multiplier_monomials(&self, ring: &Ring, subring: &SubringSpec) -> Result<Vec<Monomial>, PolyError> {
        let mut acc = vec![vec![0i32; ring.var_count()]];
        for (vars, cap) in self.groups(ring)? {
            let mut next = Vec::new();
            for base in &acc {
                let mut e = base.clone();
                fill(&vars, 0, cap, &mut e, &mut next);
            }
            acc = next;
        }
        let set: BTreeSet<Monomial> = acc
            .into_iter()
            .map(Monomial::from_exponents)
            .filter(|m| subring.admits(ring, m))
            .collect();
        Ok(set.into_iter().collect())
    }

    fn admits(&self, ring: &Ring, m: &Monomial) -> bool {
        let Ok(groups) = self.groups(ring) else {
            return false;
        };
        let e = m.exponents();
        let mut capped = vec![false; e.len()];
        for (vars, cap) in &groups {
            let mut total = 0i64;
            for &i in vars {
                capped[i] = true;
                if e[i] < 0 {
                    return false;
                }
                total += e[i] as i64;
            }
            if total > *cap as i64 {
                return false;
            }
        }
        e.iter().zip(&capped).all(|(&x, &c)| c || x == 0)
    }
}

fn fill(vars: &[usize], k: usize, left: u32, e: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
    if k == vars.len() {
        out.push(e.clone());
        return;
    }
    for d in 0..=left {
        e[vars[k]] = d as i32;
        fill(vars, k + 1, left - d, e, out);
    }
    e[vars[k]] = 0;
}

impl fmt::Display for DegreeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, c)| format!("deg({k}) <= {c}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// `target = sum multipliers[i] * generators[i]` with subring multipliers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub target: Poly,
    pub generators: Vec<Poly>,
    pub multipliers: Vec<Poly>,
    pub bound: DegreeBound,
    pub subring: SubringSpec,
}

/// Certificate JSON. `variables` names the ambient ring so a file can be
/// checked on its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub target: String,
    pub generators: Vec<String>,
    pub multipliers: Vec<String>,
    pub bound: DegreeBound,
    pub subring: SubringJson,
    pub variables: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubringJson {
    pub variable: Option<String>,
    pub semigroup: Vec<u64>,
}

impl MembershipCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            target: self.target.to_string(),
            generators: self.generators.iter().map(Poly::to_string).collect(),
            multipliers: self.multipliers.iter().map(Poly::to_string).collect(),
            bound: self.bound.clone(),
            subring: SubringJson {
                variable: self.subring.variable.clone(),
                semigroup: self.subring.semigroup.generators().to_vec(),
            },
            variables: self.target.ring().names().to_vec(),
        }
    }

    /// Generators with a nonzero multiplier.
    pub fn support(&self) -> usize {
        self.multipliers.iter().filter(|m| !m.is_zero()).count()
    }
}

impl CertificateJson {
    pub fn into_certificate(self) -> Result<MembershipCertificate, PolyError> {
        let names: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        let ring = Ring::new(&names)?;
        let parse_all = |v: &[String]| v.iter().map(|s| Poly::parse(&ring, s)).collect::<Result<Vec<_>, _>>();
        let semigroup = NumericalSemigroup::new(&self.subring.semigroup).map_err(|e| PolyError::Invalid(e.to_string()))?;
        let subring = match &self.subring.variable {
            Some(v) => SubringSpec::on(v, semigroup),
            None => SubringSpec::identity(),
        };
        Ok(MembershipCertificate {
            target: Poly::parse(&ring, &self.target)?,
            generators: parse_all(&self.generators)?,
            multipliers: parse_all(&self.multipliers)?,
            bound: self.bound,
            subring,
        })
    }
}

/// Searches for a certificate of `target` over `module` within `bound`.
pub fn membership(
    target: &Poly,
    module: &ModuleGens,
    bound: &DegreeBound,
) -> Result<Option<MembershipCertificate>, PolyError> {
    let ring = module.ring();
    if target.ring() != ring {
        return Err(PolyError::RingMismatch);
    }
    let monos = bound.multiplier_monomials(ring, &module.subring)?;
    let gens = module.gens();

    // column (g, m) holds the coefficients of m * gens[g]
    let mut columns = Vec::with_capacity(gens.len() * monos.len());
    for g in gens {
        for m in &monos {
            columns.push(g.mul_monomial(m));
        }
    }
    let mut row_of: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in &columns {
        for (m, _) in p.terms() {
            row_of.insert(m, 0);
        }
    }
    if target.terms().any(|(m, _)| !row_of.contains_key(m)) {
        return Ok(None);
    }
    for (i, v) in row_of.values_mut().enumerate() {
        *v = i;
    }
    let triplets: Vec<(usize, usize, BigInt)> = columns
        .iter()
        .enumerate()
        .flat_map(|(j, p)| p.terms().map(move |(m, c)| (m, j, c)))
        .map(|(m, j, c)| (row_of[m], j, c.clone()))
        .collect();
    let a = IntMatrix::from_triplets(row_of.len(), columns.len(), triplets);
    let mut b = vec![BigInt::zero(); row_of.len()];
    for (m, c) in target.terms() {
        b[row_of[m]] = c.clone();
    }
    let Some(x) = solve(&a, &b).expect("system dimensions agree") else {
        return Ok(None);
    };

    let mut multipliers = Vec::with_capacity(gens.len());
    for g in 0..gens.len() {
        let mut p = Poly::zero(ring);
        for (k, m) in monos.iter().enumerate() {
            let c = &x[g * monos.len() + k];
            if !c.is_zero() {
                p = &p + &Poly::term(ring, m.clone(), c.clone());
            }
        }
        multipliers.push(p);
    }
    let cert = MembershipCertificate {
        target: target.clone(),
        generators: gens.to_vec(),
        multipliers,
        bound: bound.clone(),
        subring: module.subring.clone(),
    };
    debug_assert!(verify_certificate(&cert));
    Ok(Some(cert))
}

/// Re-expands the certificate term by term and checks every multiplier
/// monomial against the subring and the declared bound.
pub fn verify_certificate(c: &MembershipCertificate) -> bool {
    if c.generators.len() != c.multipliers.len() {
        return false;
    }
    let ring = c.target.ring();
    let same_ring = c.generators.iter().chain(&c.multipliers).all(|p| p.ring() == ring);
    if !same_ring {
        return false;
    }
    let admissible = c
        .multipliers
        .iter()
        .flat_map(|p| p.terms())
        .all(|(m, _)| c.subring.admits(ring, m) && c.bound.admits(ring, m));
    if !admissible {
        return false;
    }

    let mut sum: HashMap<Vec<i32>, BigInt> = HashMap::new();
    for (g, f) in c.generators.iter().zip(&c.multipliers) {
        for (mf, cf) in f.terms() {
            for (mg, cg) in g.terms() {
                let e: Vec<i32> = mf.exponents().iter().zip(mg.exponents()).map(|(a, b)| a + b).collect();
                *sum.entry(e).or_default() += cf * cg;
            }
        }
    }
    sum.retain(|_, v| !v.is_zero());
    let target: HashMap<Vec<i32>, BigInt> = c.target.terms().map(|(m, v)| (m.exponents().to_vec(), v.clone())).collect();
    sum == target
}
