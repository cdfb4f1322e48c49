// The BD segment instantiated on concrete groups, and the symmetric complex.

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use homcert::bd_formal::{BdSegment, FormalChain};
use homcert::cli::checks::bd_random_evaluation;
use homcert::exact_linalg::PresentedGroup;
use homcert::finab::{ext1, h2_hochschild, h2s, h_normalized, FinGenAbGroup, SymComplex};
use homcert::report::Status;

const SMALL: [&str; 10] = ["1", "2", "3", "4", "2,2", "5", "6", "7", "8", "2,4"];

fn group(s: &str) -> FinGenAbGroup {
    s.parse().unwrap()
}

#[test]
fn instantiated_composites_vanish() {
    let bd = BdSegment::standard();
    for g in SMALL.iter().map(|s| group(s)).chain([group("2,2,2")]) {
        // rows are source tuples, so the composite d_(l-1) d_l is M_l * M_(l-1)
        for level in 2..=3 {
            let p = &bd.instantiate(&g, level).unwrap() * &bd.instantiate(&g, level - 1).unwrap();
            assert!(p.is_zero(), "{g}, level {level}");
        }
        let p = &bd.instantiate(&g, 1).unwrap() * &bd.instantiate(&g, 0).unwrap();
        for (_, c, v) in p.nonzeros() {
            assert!((v % BigInt::from(g.cyclic_orders()[c])).is_zero(), "{g}, level 1");
        }
    }
}

#[test]
fn symmetric_complexes_are_complexes() {
    for g in SMALL.iter().take(7).map(|s| group(s)) {
        assert!(SymComplex::new(&g).unwrap().is_complex(), "{g}");
        assert!(SymComplex::normalized(&g).unwrap().is_complex(), "{g}");
    }
}

fn combo(bd: &BdSegment, level: usize, ks: &[i64]) -> FormalChain {
    bd.generators(level)
        .iter()
        .zip(ks.iter().cycle())
        .fold(FormalChain::zero(), |acc, (g, &k)| acc.plus(&g.scaled(&BigInt::from(k))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn differential_is_linear(level in 1usize..=3, xs in prop::collection::vec(-4i64..=4, 6), ys in prop::collection::vec(-4i64..=4, 6), a in -3i64..=3, b in -3i64..=3) {
        let bd = BdSegment::standard();
        let x = combo(&bd, level, &xs);
        let y = combo(&bd, level, &ys);
        let lhs = bd.apply_d(level, &x.scaled(&a.into()).plus(&y.scaled(&b.into()))).unwrap();
        let rhs = bd.apply_d(level, &x).unwrap().scaled(&a.into()).plus(&bd.apply_d(level, &y).unwrap().scaled(&b.into()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_commutes_with_d(seed in any::<u64>()) {
        let r = bd_random_evaluation(seed, 8, 8);
        prop_assert_eq!(r.status, Status::Pass, "{}", r.details);
    }

    #[test]
    fn ext1_is_additive(g1 in 0usize..6, g2 in 0usize..6, a in 0usize..8) {
        let coeffs = ["0", "2", "3", "4", "6", "2,4", "9", "2,2,3"];
        let (g1, g2, a) = (group(SMALL[g1]), group(SMALL[g2]), group(coeffs[a]));
        let sum = ext1(&g1.direct_sum(&g2), &a).unwrap();
        prop_assert_eq!(&sum, &PresentedGroup::direct_sum(&[ext1(&g1, &a).unwrap(), ext1(&g2, &a).unwrap()]));
        let mut swapped: Vec<u64> = g1.direct_sum(&g2).cyclic_orders().to_vec();
        swapped.reverse();
        prop_assert_eq!(ext1(&FinGenAbGroup::new(swapped).unwrap(), &a).unwrap(), sum);
    }

    #[test]
    fn h2s_fits_in_hochschild(g in 0usize..5, a in 0usize..6) {
        let coeffs = ["2", "3", "4", "5", "8", "3,3"];
        let (g, a) = (group(SMALL[g]), group(coeffs[a]));
        let s = h2s(&g, &a).unwrap();
        prop_assert_eq!(&s, &ext1(&g, &a).unwrap());
        let (n2, _) = h_normalized(&g, &a).unwrap();
        prop_assert_eq!(&n2, &s);
        let h = h2_hochschild(&g, &a).unwrap().order().unwrap();
        prop_assert!((h % s.order().unwrap()).is_zero());
    }
}
