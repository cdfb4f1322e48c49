//! The checks run by `verify-all`, each producing one [`Report`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bd_formal::{encode_tuple, BdSegment, FormalChain, Slot};
use crate::cusp_pic::{
    multiplicative_triple, pic_group_law, pic_separation, pic_unit_check, schanuel_check, seminormal_census,
    swan_witness, weibel_equalizer, NumericalSemigroup, PicSetting, TripleSource,
};
use crate::exact_linalg::PresentedGroup;
use crate::finab::{
    enumerate_symmetric_classes, h2_hochschild, low_degree_from_prepared, FinGenAbGroup, SymComplex,
};
use crate::polyring::{Poly, Ring};
use crate::report::{Report, Status};

pub const BASE_GROUPS: [&str; 6] = ["2", "3", "4", "5", "6", "2,2"];
pub const COEFFICIENT_GROUPS: [&str; 6] = ["0", "2", "3", "4", "6", "2,4"];

fn group(s: &str) -> FinGenAbGroup {
    s.parse().expect("grid descriptor")
}

pub fn bd_report(segment: &BdSegment) -> Report {
    let r = segment.verify_d_squared();
    let residues: Vec<Value> = r
        .residues
        .iter()
        .map(|x| {
            json!({
                "composite": x.composite,
                "generator": x.generator,
                "summand": x.summand,
                "residue": x.residue.to_string(),
            })
        })
        .collect();
    Report::pass_if("bd-d2", r.all_zero(), json!({ "residues": residues }))
}

/// Criteria on the `(G, A)` grid: `H2s = Ext^1`, `H3s = 0`, and agreement of
/// the normalized complex.
pub fn cohomology_grid(max_order: u64) -> [Report; 3] {
    let gs: Vec<FinGenAbGroup> = BASE_GROUPS.iter().map(|s| group(s)).filter(|g| g.order() <= max_order).collect();
    let rows: Vec<Vec<Value>> = gs
        .par_iter()
        .map(|g| {
            let full = SymComplex::new(g).expect("finite").prepare();
            let norm = SymComplex::normalized(g).expect("finite").prepare();
            COEFFICIENT_GROUPS
                .iter()
                .map(|a| {
                    let a = group(a);
                    let r = low_degree_from_prepared(g, &a, &full, &norm).expect("finite base");
                    json!({
                        "group": g.to_string(),
                        "coeff": a.to_string(),
                        "h2s": r.h2s.to_string(),
                        "ext1": r.ext1.to_string(),
                        "h3s": r.h3s.to_string(),
                        "h2s_normalized": r.h2s_normalized.to_string(),
                        "h3s_normalized": r.h3s_normalized.to_string(),
                        "h2_ok": r.h2_matches_ext1(),
                        "h3_ok": r.h3_vanishes(),
                        "normalized_ok": r.normalized_agrees(),
                    })
                })
                .collect()
        })
        .collect();
    let cells: Vec<Value> = rows.into_iter().flatten().collect();
    let pick = |keys: &[&str], flag: &str| -> (bool, Vec<Value>) {
        let ok = cells.iter().all(|c| c[flag] == true);
        let view = cells
            .iter()
            .map(|c| {
                let mut o = serde_json::Map::new();
                for k in ["group", "coeff"].iter().chain(keys) {
                    o.insert(k.to_string(), c[*k].clone());
                }
                o.insert("ok".into(), c[flag].clone());
                Value::Object(o)
            })
            .collect();
        (ok, view)
    };
    let (h2, h2_cells) = pick(&["h2s", "ext1"], "h2_ok");
    let (h3, h3_cells) = pick(&["h3s"], "h3_ok");
    let (nm, nm_cells) = pick(&["h2s_normalized", "h3s_normalized"], "normalized_ok");
    [
        Report::pass_if("h2s-ext1", h2, json!({ "cells": h2_cells })),
        Report::pass_if("h3s-vanishing", h3, json!({ "cells": h3_cells })),
        Report::pass_if("normalized-invariance", nm, json!({ "cells": nm_cells })),
    ]
}

fn factors_u64(p: &PresentedGroup) -> Vec<u64> {
    p.invariant_factors().iter().map(|d| d.to_u64().expect("small factor")).collect()
}

/// Brute-force symmetric classes against `H2s` and the Hochschild group.
pub fn hochschild_embedding(max_order: u64) -> Report {
    let max = max_order.min(4);
    let mut cells = Vec::new();
    let mut ok = true;
    for g in BASE_GROUPS.iter().map(|s| group(s)).filter(|g| g.order() <= max) {
        let prepared = SymComplex::new(&g).expect("finite").prepare();
        for a in COEFFICIENT_GROUPS.iter().map(|s| group(s)).filter(FinGenAbGroup::is_finite) {
            let census = enumerate_symmetric_classes(&g, &a).expect("small enumeration");
            let h2s = factors_u64(&prepared.h2(&a).expect("finite"));
            let h0 = factors_u64(&h2_hochschild(&g, &a).expect("finite"));
            let h2s_order: u64 = h2s.iter().product();
            let h0_order: u64 = h0.iter().product();
            let torsion_ok = census.torsion_counts.iter().all(|&(k, count)| {
                h2s.iter().map(|&d| (k as u64).gcd(&d)).product::<u64>() == count as u64
            });
            let injects = census.all_bar_cocycles
                && census.hochschild_image == census.classes
                && h0_order.is_multiple_of(census.classes as u64);
            let bijects = census.classes as u64 == h2s_order && torsion_ok;
            ok &= injects && bijects;
            cells.push(json!({
                "group": g.to_string(),
                "coeff": a.to_string(),
                "cocycles": census.cocycles,
                "coboundaries": census.coboundaries,
                "classes": census.classes,
                "h2s": h2s,
                "h2_hochschild": h0,
                "injects": injects,
                "bijects_onto_h2s": bijects,
            }));
        }
    }
    Report::pass_if("hochschild-embedding", ok, json!({ "max_group_order": max, "cells": cells }))
}

fn dense(map: &std::collections::BTreeMap<(Slot, Vec<usize>), BigInt>, shape: &[usize], n: usize) -> Vec<BigInt> {
    let mut offsets = Vec::with_capacity(shape.len());
    let mut total = 0;
    for &a in shape {
        offsets.push(total);
        total += n.pow(a as u32);
    }
    let mut v = vec![BigInt::zero(); total];
    for ((slot, idx), c) in map {
        v[offsets[slot.summand] + encode_tuple(idx, n)] += c;
    }
    v
}

/// Random substitutions: evaluating `d(c)` equals the instantiated matrix
/// applied to the evaluation of `c`.
pub fn bd_random_evaluation(seed: u64, trials: usize, max_order: u64) -> Report {
    let bd = BdSegment::standard();
    let pool: Vec<FinGenAbGroup> = ["1", "2", "3", "4", "2,2", "5", "6", "7", "8", "2,4", "2,2,2"]
        .iter()
        .map(|s| group(s))
        .filter(|g| g.order() <= max_order)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cache: std::collections::HashMap<(usize, usize), crate::exact_linalg::IntMatrix> = Default::default();
    let mut failures = Vec::new();
    for trial in 0..trials {
        let gi = rng.gen_range(0..pool.len());
        let g = &pool[gi];
        let level = rng.gen_range(1..=3usize);
        let gens = bd.generators(level);
        // random integer combination of the generator families
        let mut chain = FormalChain::zero();
        for gen in &gens {
            let k: i64 = rng.gen_range(-3..=3);
            chain = chain.plus(&gen.scaled(&BigInt::from(k)));
        }
        let assignment: Vec<Option<Vec<i64>>> = (0..4)
            .map(|_| Some(g.element_at(rng.gen_range(0..g.order_usize()))))
            .collect();
        let m = cache.entry((gi, level)).or_insert_with(|| bd.instantiate(g, level).expect("finite"));
        let n = g.order_usize();
        let src = dense(&BdSegment::evaluate_chain(&chain, g, &assignment).expect("assigned"), &bd.shapes[level], n);
        let image = bd.apply_d(level, &chain).expect("in source");
        let lhs = dense(&BdSegment::evaluate_chain(&image, g, &assignment).expect("assigned"), &bd.shapes[level - 1], n);
        let rhs = m.transpose().mul_vec(&src);
        if lhs != rhs {
            failures.push(json!({ "trial": trial, "group": g.to_string(), "level": level }));
        }
    }
    Report::pass_if(
        "bd-random-evaluation",
        failures.is_empty(),
        json!({ "seed": seed, "trials": trials, "failures": failures }),
    )
}

pub fn cusp_reports() -> Vec<Report> {
    let cusp = NumericalSemigroup::new(&[2, 3]).unwrap();
    let mut out = Vec::new();
    let mut first = schanuel_check(&cusp, 1).expect("witness");
    first.check = "schanuel-cusp".into();
    let mut second = schanuel_check(&NumericalSemigroup::new(&[3, 4, 5]).unwrap(), 2).expect("witness");
    second.check = "schanuel-3-4-5".into();
    out.extend([first, second]);

    let listed = multiplicative_triple(&cusp, 1, TripleSource::Listed, None).expect("witness");
    let mut listed_cert = listed.certificate;
    listed_cert.check = "triple-listed".into();
    out.push(listed_cert);
    let ours = multiplicative_triple(&cusp, 1, TripleSource::Recomputed, None).expect("witness");
    let mut ours_cert = ours.certificate;
    ours_cert.check = "triple-recomputed".into();
    out.push(ours_cert);
    out.push(ours.diff);
    out
}

pub fn pic_reports(t_bound: i64, aux_bound: i64) -> Vec<Report> {
    let aux = Ring::new(&["a", "b"]).unwrap();
    let setting = PicSetting::new(&aux, t_bound, aux_bound).expect("ring");
    let a = Poly::var(&aux, "a").unwrap();
    let b = Poly::var(&aux, "b").unwrap();
    let zero = Poly::zero(&aux);
    let rename = |mut r: Report, name: &str| {
        r.check = name.to_string();
        r
    };
    let mut out = vec![
        rename(pic_group_law(&setting, &a, &b).expect("bound"), "pic-law"),
        rename(pic_group_law(&setting, &a, &zero).expect("bound"), "pic-identity"),
        rename(pic_unit_check(&setting, &a, &-&a).expect("bound"), "pic-inverse"),
    ];
    let constants = Ring::new(&[]).unwrap();
    let sep = PicSetting::new(&constants, 8.max(t_bound), aux_bound).expect("ring");
    out.push(pic_separation(&sep, &Poly::constant(&constants, 1), &Poly::constant(&constants, 2)).expect("bound"));
    out
}

pub fn seminormal_reports() -> Vec<Report> {
    let cases: [(&[u64], Option<u64>); 4] = [(&[2, 3], Some(1)), (&[3, 4, 5], Some(2)), (&[2, 5], Some(3)), (&[1], None)];
    let mut cells = Vec::new();
    let mut ok = true;
    for (gens, expected) in cases {
        let w = swan_witness(&NumericalSemigroup::new(gens).unwrap());
        ok &= w == expected;
        cells.push(json!({ "semigroup": gens, "witness": w, "expected": expected }));
    }
    vec![Report::pass_if("swan-witness", ok, json!({ "cases": cells })), seminormal_census(12)]
}

pub fn weibel_report(max_t: u32, max_z: u32) -> Report {
    let mut worst = Vec::new();
    for t in 0..=max_t {
        for z in 0..=max_z {
            let r = weibel_equalizer(t, z);
            if r.status != Status::Pass {
                worst.push(r.details);
            }
        }
    }
    Report::pass_if(
        "weibel-equalizer",
        worst.is_empty(),
        json!({ "max_deg_t": max_t, "max_deg_z": max_z, "nontrivial": worst }),
    )
}

/// Every `verify-all` check in a fixed order.
pub fn all_checks(seed: u64, max_group_order: u64, t_bound: i64, aux_bound: i64) -> Vec<Report> {
    let mut out = vec![bd_report(&BdSegment::standard())];
    out.extend(cohomology_grid(max_group_order));
    out.push(hochschild_embedding(max_group_order));
    out.push(bd_random_evaluation(seed, 100, max_group_order.min(8)));
    out.extend(cusp_reports());
    out.extend(pic_reports(t_bound, aux_bound));
    out.extend(seminormal_reports());
    out.push(weibel_report(8, 8));
    out
}
