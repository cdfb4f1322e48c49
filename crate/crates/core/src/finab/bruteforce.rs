//! Direct enumeration of symmetric 2-cocycles of a small finite group.
//!
//! Shares nothing with the matrix pipeline: cocycle conditions, symmetry and
//! coboundaries are written out from the formulas and checked on concrete
//! group elements.

use std::collections::HashSet;

use super::{require_finite, FinGenAbGroup, FinabError};

/// Result of [`enumerate_symmetric_classes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricClassCensus {
    pub group: FinGenAbGroup,
    pub coefficients: FinGenAbGroup,
    /// Maps `c: G^2 -> A` killed by the degree-2 symmetric coboundary.
    pub cocycles: usize,
    /// Distinct maps `(x, y) -> f(x+y) - f(x) - f(y)`.
    pub coboundaries: usize,
    /// `cocycles / coboundaries`.
    pub classes: usize,
    /// `(k, #{classes c : k c = 0})` for `k = 1..=classes`.
    pub torsion_counts: Vec<(usize, usize)>,
    /// Every symmetric cocycle satisfies the bar cocycle condition.
    pub all_bar_cocycles: bool,
    /// Number of bar classes hit by symmetric cocycles.
    pub hochschild_image: usize,
}

const NODE_LIMIT: u64 = 200_000_000;

struct Tables {
    n: usize,
    add_g: Vec<usize>,
    add_a: Vec<usize>,
    neg_a: Vec<usize>,
    order_a: usize,
}

impl Tables {
    fn new(g: &FinGenAbGroup, a: &FinGenAbGroup) -> Self {
        let ge = g.elements();
        let ae = a.elements();
        let n = ge.len();
        let m = ae.len();
        let mut add_g = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                add_g[i * n + j] = g.index_of(&g.add(&ge[i], &ge[j]));
            }
        }
        let mut add_a = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                add_a[i * m + j] = a.index_of(&a.add(&ae[i], &ae[j]));
            }
        }
        let neg_a = ae.iter().map(|e| a.index_of(&a.neg(e))).collect();
        Tables { n, add_g, add_a, neg_a, order_a: m }
    }

    fn g(&self, x: usize, y: usize) -> usize {
        self.add_g[x * self.n + y]
    }

    fn a(&self, x: usize, y: usize) -> usize {
        self.add_a[x * self.order_a + y]
    }

    /// Signed sum of values, signs `+1` or `-1`.
    fn signed_sum(&self, terms: &[(i8, usize)]) -> usize {
        terms.iter().fold(0, |acc, &(s, v)| {
            let v = if s > 0 { v } else { self.neg_a[v] };
            self.a(acc, v)
        })
    }
}

/// A linear condition `sum sign * c[cell] = 0` on cocycle values.
type Condition = Vec<(i8, usize)>;

fn symmetric_conditions(t: &Tables) -> Vec<Condition> {
    let n = t.n;
    let cell = |x: usize, y: usize| x * n + y;
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // c evaluated on [x+y,z] - [x,y+z] + [x,y] - [y,z]
                out.push(vec![
                    (1, cell(t.g(x, y), z)),
                    (-1, cell(x, t.g(y, z))),
                    (1, cell(x, y)),
                    (-1, cell(y, z)),
                ]);
            }
            if x < y {
                out.push(vec![(1, cell(x, y)), (-1, cell(y, x))]);
            }
        }
    }
    out
}

fn satisfies_bar(t: &Tables, c: &[usize]) -> bool {
    let n = t.n;
    let cell = |x: usize, y: usize| x * n + y;
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                let terms = [
                    (1, c[cell(y, z)]),
                    (-1, c[cell(t.g(x, y), z)]),
                    (1, c[cell(x, t.g(y, z))]),
                    (-1, c[cell(x, y)]),
                ];
                t.signed_sum(&terms) == 0
            })
        })
    })
}

fn coboundaries(t: &Tables) -> HashSet<Vec<usize>> {
    let (n, m) = (t.n, t.order_a);
    let mut set = HashSet::new();
    let mut f = vec![0usize; n];
    loop {
        let mut c = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                c[x * n + y] = t.signed_sum(&[(1, f[t.g(x, y)]), (-1, f[x]), (-1, f[y])]);
            }
        }
        set.insert(c);
        // odometer over all maps G -> A
        let mut i = 0;
        loop {
            if i == n {
                return set;
            }
            f[i] += 1;
            if f[i] < m {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

fn enumerate_cocycles(t: &Tables) -> Result<Vec<Vec<usize>>, ()> {
    let cells = t.n * t.n;
    let mut closing: Vec<Vec<Condition>> = vec![Vec::new(); cells];
    for cond in symmetric_conditions(t) {
        let last = cond.iter().map(|&(_, i)| i).max().unwrap();
        closing[last].push(cond);
    }
    let mut out = Vec::new();
    let mut c = vec![0usize; cells];
    let mut nodes = 0u64;

    fn go(
        t: &Tables,
        closing: &[Vec<Condition>],
        c: &mut Vec<usize>,
        k: usize,
        nodes: &mut u64,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), ()> {
        if k == c.len() {
            out.push(c.clone());
            return Ok(());
        }
        for v in 0..t.order_a {
            *nodes += 1;
            if *nodes > NODE_LIMIT {
                return Err(());
            }
            c[k] = v;
            let ok = closing[k].iter().all(|cond| {
                let terms: Vec<(i8, usize)> = cond.iter().map(|&(s, i)| (s, c[i])).collect();
                t.signed_sum(&terms) == 0
            });
            if ok {
                go(t, closing, c, k + 1, nodes, out)?;
            }
        }
        Ok(())
    }

    go(t, &closing, &mut c, 0, &mut nodes, &mut out)?;
    Ok(out)
}

/// Enumerates symmetric 2-cocycles `G^2 -> A` for finite `G` and `A` and
/// counts their classes modulo coboundaries.
pub fn enumerate_symmetric_classes(
    g: &FinGenAbGroup,
    a: &FinGenAbGroup,
) -> Result<SymmetricClassCensus, FinabError> {
    require_finite(g)?;
    let too_large = || FinabError::EnumerationTooLarge(format!("({g}, {a})"));
    if !a.is_finite() || g.order() > 6 || a.order() > 16 {
        return Err(too_large());
    }
    let t = Tables::new(g, a);
    let cocycles = enumerate_cocycles(&t).map_err(|_| too_large())?;
    let bounds = coboundaries(&t);

    let scaled = |c: &[usize], k: usize| -> Vec<usize> {
        c.iter()
            .map(|&v| (0..k).fold(0, |acc, _| t.a(acc, v)))
            .collect()
    };
    let classes = cocycles.len() / bounds.len();
    let torsion_counts = (1..=classes)
        .map(|k| {
            let killed = cocycles.iter().filter(|c| bounds.contains(&scaled(c, k))).count();
            (k, killed / bounds.len())
        })
        .collect();

    // symmetric cocycles that are bar coboundaries; the bar coboundary of f
    // is the same map (x,y) -> f(x+y) - f(x) - f(y)
    let in_bar_image = cocycles.iter().filter(|c| bounds.contains(*c)).count();
    Ok(SymmetricClassCensus {
        group: g.clone(),
        coefficients: a.clone(),
        cocycles: cocycles.len(),
        coboundaries: bounds.len(),
        classes,
        torsion_counts,
        all_bar_cocycles: cocycles.iter().all(|c| satisfies_bar(&t, c)),
        hochschild_image: cocycles.len() / in_bar_image.max(1),
    })
}
