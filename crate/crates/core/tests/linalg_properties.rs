// Exact linear algebra against brute-force oracles on small inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use homcert::exact_linalg::{determinant, homology, kernel_basis, smith_factors, snf, solve, IntMatrix, PresentedGroup};

fn matrix(max_dim: usize, entry: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-entry..=entry, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
            IntMatrix::from_rows(&rows)
        })
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for last in (k - 1)..n {
        for mut s in subsets(last, k - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out
}

/// d_1 ... d_k = gcd of the k x k minors.
fn determinantal_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let r = a.rows().min(a.cols());
    (1..=r)
        .map(|k| {
            let mut g = BigInt::zero();
            for rows in subsets(a.rows(), k) {
                for cols in subsets(a.cols(), k) {
                    g = g.gcd(&determinant(&a.select(&rows, &cols)));
                }
            }
            g
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_reconstructs(a in matrix(5, 9)) {
        let s = snf(&a);
        prop_assert_eq!(&(&(&s.u * &a) * &s.v), &s.d);
        prop_assert!(determinant(&s.u).abs().is_one());
        prop_assert!(determinant(&s.v).abs().is_one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        for w in s.factors.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
        prop_assert_eq!(snf(&a), s.clone());
        prop_assert_eq!(smith_factors(&a), s.factors);
    }

    #[test]
    fn smith_matches_minors(a in matrix(3, 6)) {
        let dets = determinantal_divisors(&a);
        let mut prod = BigInt::one();
        for (k, d) in smith_factors(&a).iter().enumerate() {
            prod *= d;
            prop_assert_eq!(&prod, &dets[k]);
        }
    }

    #[test]
    fn solve_agrees_with_search(a in matrix(3, 3), b in prop::collection::vec(-4i64..=4, 3)) {
        let b: Vec<BigInt> = b[..a.rows()].iter().map(|&x| x.into()).collect();
        match solve(&a, &b).unwrap() {
            Some(x) => prop_assert_eq!(a.mul_vec(&x), b),
            None => {
                // no solution in a box around zero either
                let n = a.cols();
                let range: Vec<i64> = (-6..=6).collect();
                let mut idx = vec![0usize; n];
                loop {
                    let x: Vec<BigInt> = idx.iter().map(|&i| range[i].into()).collect();
                    prop_assert_ne!(a.mul_vec(&x), b.clone());
                    let mut k = 0;
                    while k < n && idx[k] + 1 == range.len() {
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == n {
                        break;
                    }
                    idx[k] += 1;
                }
            }
        }
    }

    #[test]
    fn solve_finds_planted(a in matrix(4, 5), x in prop::collection::vec(-5i64..=5, 4)) {
        let x: Vec<BigInt> = x[..a.cols()].iter().map(|&v| v.into()).collect();
        let b = a.mul_vec(&x);
        let found = solve(&a, &b).unwrap().expect("planted solution");
        prop_assert_eq!(a.mul_vec(&found), b);
    }

    #[test]
    fn kernel_is_annihilated(a in matrix(4, 4)) {
        let k = kernel_basis(&a);
        prop_assert!((&a * &k).is_zero());
        let rank = smith_factors(&a).iter().filter(|d| !d.is_zero()).count();
        prop_assert_eq!(k.cols(), a.cols() - rank);
    }
}

fn vectors(m: i64, n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (0..m).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn apply_mod(a: &[Vec<i64>], x: &[i64], m: i64) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum::<i64>().rem_euclid(m)).collect()
}

fn to_matrix(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    if rows.is_empty() {
        return IntMatrix::zeros(0, cols);
    }
    IntMatrix::from_rows(rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    // H = ker(d_out) / im(d_in) over Z/m, middle term of order at most 64:
    // compare the number of k-torsion elements for every k.
    #[test]
    fn homology_matches_enumeration(
        (m, k) in prop_oneof![(2i64..=8, Just(2usize)), (2i64..=4, Just(3usize)), Just((2i64, 6usize)), Just((4i64, 3usize))],
        l in 1usize..=3,
        a in 1usize..=3,
        seed in prop::collection::vec(-5i64..=5, 64),
    ) {
        let mut it = seed.iter().cycle().copied();
        let d_out: Vec<Vec<i64>> = (0..l).map(|_| (0..k).map(|_| it.next().unwrap()).collect()).collect();
        let mid = vectors(m, k);
        let cycles: Vec<&Vec<i64>> = mid.iter().filter(|x| apply_mod(&d_out, x, m).iter().all(|&v| v == 0)).collect();
        // d_in columns: random cycles, so the composite vanishes mod m
        let cols: Vec<Vec<i64>> = (0..a).map(|_| cycles[it.next().unwrap().rem_euclid(cycles.len() as i64) as usize].clone()).collect();
        let d_in: Vec<Vec<i64>> = (0..k).map(|i| cols.iter().map(|c| c[i]).collect()).collect();

        let image: std::collections::BTreeSet<Vec<i64>> =
            vectors(m, a).iter().map(|x| apply_mod(&d_in, x, m)).collect();
        let modulus = BigInt::from(m);
        let h = homology(
            &to_matrix(&d_in, a),
            &to_matrix(&d_out, k),
            [&PresentedGroup::uniform(a, &modulus), &PresentedGroup::uniform(k, &modulus), &PresentedGroup::uniform(l, &modulus)],
        ).unwrap();
        prop_assert_eq!(h.order().unwrap(), BigInt::from(cycles.len() / image.len()));
        for t in 1..=m {
            let killed = cycles.iter().filter(|x| {
                let tx: Vec<i64> = x.iter().map(|v| (v * t).rem_euclid(m)).collect();
                image.contains(&tx)
            }).count() / image.len();
            let expected: BigInt = h.invariant_factors().iter().map(|d| d.gcd(&BigInt::from(t))).product();
            prop_assert_eq!(BigInt::from(killed), expected, "t = {}", t);
        }
    }
}
