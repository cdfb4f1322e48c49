use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid cyclic order {0:?}; expected a nonnegative integer (0 = Z)")]
    BadOrder(String),
}

/// Finitely generated abelian group `Z/n_1 + ... + Z/n_k`, with `n_i = 0`
/// standing for `Z`.
///
/// Elements are integer tuples reduced modulo each finite `n_i`. Finite groups
/// enumerate their elements in mixed radix, first factor fastest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinGenAbGroup {
    cyclic_orders: Vec<u64>,
}

impl FinGenAbGroup {
    pub fn new(cyclic_orders: Vec<u64>) -> Result<Self, GroupError> {
        Ok(FinGenAbGroup { cyclic_orders })
    }

    pub fn trivial() -> Self {
        FinGenAbGroup { cyclic_orders: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        FinGenAbGroup { cyclic_orders: vec![n] }
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn is_finite(&self) -> bool {
        self.cyclic_orders.iter().all(|&n| n != 0)
    }

    /// Order of a finite group. Panics on an infinite group.
    pub fn order(&self) -> u64 {
        assert!(self.is_finite(), "order of an infinite group");
        self.cyclic_orders.iter().product()
    }

    pub fn order_usize(&self) -> usize {
        usize::try_from(self.order()).expect("group order fits in usize")
    }

    pub fn zero_element(&self) -> Vec<i64> {
        vec![0; self.cyclic_orders.len()]
    }

    pub fn reduce(&self, e: &[i64]) -> Vec<i64> {
        assert_eq!(e.len(), self.cyclic_orders.len(), "element of the wrong shape");
        e.iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &n)| if n == 0 { x } else { x.rem_euclid(n as i64) })
            .collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = a.iter().map(|x| -x).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, a: &[i64], k: i64) -> Vec<i64> {
        let s: Vec<i64> = a.iter().map(|x| x * k).collect();
        self.reduce(&s)
    }

    /// All elements of a finite group in enumeration order.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let n = self.order_usize();
        (0..n).map(|i| self.element_at(i)).collect()
    }

    pub fn element_at(&self, mut index: usize) -> Vec<i64> {
        self.cyclic_orders
            .iter()
            .map(|&n| {
                let n = n as usize;
                let c = index % n;
                index /= n;
                c as i64
            })
            .collect()
    }

    /// Position of a reduced element in [`Self::elements`].
    pub fn index_of(&self, e: &[i64]) -> usize {
        let mut idx = 0usize;
        let mut radix = 1usize;
        for (&c, &n) in e.iter().zip(&self.cyclic_orders) {
            idx += (c as usize) * radix;
            radix *= n as usize;
        }
        idx
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut o = self.cyclic_orders.clone();
        o.extend(&other.cyclic_orders);
        FinGenAbGroup { cyclic_orders: o }
    }

    /// Comma-separated descriptor, as accepted by [`FromStr`].
    pub fn descriptor(&self) -> String {
        self.cyclic_orders
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl FromStr for FinGenAbGroup {
    type Err = GroupError;

    /// Parses `"2,4"` as `Z/2 + Z/4`, `"0"` as `Z`. The orders `1` and the
    /// empty string give the trivial group.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::trivial());
        }
        let mut orders = Vec::new();
        for part in s.split(',') {
            let n: u64 = part
                .trim()
                .parse()
                .map_err(|_| GroupError::BadOrder(part.to_string()))?;
            if n != 1 {
                orders.push(n);
            }
        }
        Ok(FinGenAbGroup { cyclic_orders: orders })
    }
}

impl fmt::Display for FinGenAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .cyclic_orders
            .iter()
            .filter(|&&n| n != 1)
            .map(|&n| if n == 0 { "Z".to_string() } else { format!("Z/{n}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
