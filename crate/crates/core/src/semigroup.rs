//! Numerical semigroups: cofinite additive submonoids of the nonnegative
//! integers, given by generators with gcd 1.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("semigroup needs at least one generator")]
    Empty,
    #[error("semigroup generators must be positive")]
    ZeroGenerator,
    #[error("generators {0:?} have gcd {1}, not 1; the monoid is not cofinite")]
    NotCofinite(Vec<u64>, u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    /// `member[n]` for `n` up to the conductor (exclusive).
    member: Vec<bool>,
}

impl NumericalSemigroup {
    pub fn new(generators: &[u64]) -> Result<Self, SemigroupError> {
        if generators.is_empty() {
            return Err(SemigroupError::Empty);
        }
        if generators.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let g = generators.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(SemigroupError::NotCofinite(generators.to_vec(), g));
        }
        let mut gens = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();

        // sieve until min(gens) consecutive members appear; everything beyond
        // is then reachable by adding the smallest generator
        let m = gens[0] as usize;
        let mut member = vec![true];
        let mut run = 1usize;
        let mut n = 0usize;
        while run < m {
            n += 1;
            let hit = gens
                .iter()
                .any(|&g| (g as usize) <= n && member[n - g as usize]);
            member.push(hit);
            run = if hit { run + 1 } else { 0 };
        }
        // trim the trailing run so the table ends right after the last gap
        let conductor = member.iter().rposition(|&b| !b).map_or(0, |f| f + 1);
        member.truncate(conductor);
        Ok(NumericalSemigroup { generators: gens, member })
    }

    /// The full monoid of nonnegative integers.
    pub fn naturals() -> Self {
        Self::new(&[1]).unwrap()
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn contains(&self, n: u64) -> bool {
        match self.member.get(n as usize) {
            Some(&b) => b,
            None => true,
        }
    }

    /// Same as [`Self::contains`] for signed exponents; negatives are never members.
    pub fn contains_i64(&self, n: i64) -> bool {
        n >= 0 && self.contains(n as u64)
    }

    /// Largest gap, or `None` for the naturals.
    pub fn frobenius_number(&self) -> Option<u64> {
        self.conductor().checked_sub(1)
    }

    /// Smallest `c` with `c + N` inside the semigroup.
    pub fn conductor(&self) -> u64 {
        self.member.len() as u64
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor()).filter(|&n| !self.contains(n)).collect()
    }

    pub fn is_naturals(&self) -> bool {
        self.member.is_empty()
    }

    /// Members in `0..=bound`.
    pub fn members_up_to(&self, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&n| self.contains(n)).collect()
    }
}

impl TryFrom<Vec<u64>> for NumericalSemigroup {
    type Error = SemigroupError;

    fn try_from(gens: Vec<u64>) -> Result<Self, Self::Error> {
        Self::new(&gens)
    }
}

impl From<NumericalSemigroup> for Vec<u64> {
    fn from(s: NumericalSemigroup) -> Self {
        s.generators
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(u64::to_string).collect();
        write!(f, "<{}>", g.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_semigroup() {
        let s = NumericalSemigroup::new(&[2, 3]).unwrap();
        assert_eq!(s.gaps(), vec![1]);
        assert_eq!(s.frobenius_number(), Some(1));
        assert!(s.contains(0) && s.contains(2) && s.contains(1001));
    }

    #[test]
    fn frobenius_of_two_generators() {
        // a*b - a - b for coprime a, b
        for (a, b) in [(3u64, 5u64), (4, 7), (5, 9), (2, 11)] {
            let s = NumericalSemigroup::new(&[a, b]).unwrap();
            assert_eq!(s.frobenius_number(), Some(a * b - a - b));
            assert_eq!(s.gaps().len() as u64, (a - 1) * (b - 1) / 2);
        }
    }

    #[test]
    fn three_generators() {
        let s = NumericalSemigroup::new(&[3, 4, 5]).unwrap();
        assert_eq!(s.gaps(), vec![1, 2]);
        let s = NumericalSemigroup::new(&[6, 9, 20]).unwrap();
        assert_eq!(s.frobenius_number(), Some(43));
    }

    #[test]
    fn naturals_and_errors() {
        let n = NumericalSemigroup::naturals();
        assert!(n.is_naturals());
        assert_eq!(n.frobenius_number(), None);
        assert!(n.gaps().is_empty());
        assert!(matches!(NumericalSemigroup::new(&[2, 4]), Err(SemigroupError::NotCofinite(_, 2))));
        assert!(NumericalSemigroup::new(&[]).is_err());
        assert!(NumericalSemigroup::new(&[0, 1]).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let s = NumericalSemigroup::new(&[3, 2]).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, "[2,3]");
        let back: NumericalSemigroup = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<NumericalSemigroup>("[2,4]").is_err());
    }
}
