// One line per acceptance criterion, PASS or FAIL, then a single assertion.
// Exact checks only; the budgets are wall-clock limits on this build profile.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::ToPrimitive;

use homcert::cusp_pic::{
    multiplicative_triple, pic_group_law, pic_separation, pic_unit_check, recomputed_triple_generators, swan_witness,
    weibel_equalizer, default_triple_bound, is_seminormal, pic_class_module, NumericalSemigroup, PicSetting, SchanuelPair,
    Status, TripleSource,
};
use homcert::finab::{enumerate_symmetric_classes, FinGenAbGroup, SymComplex};
use homcert::polyring::{module_product, verify_certificate, MembershipCertificate, ModuleGens, Poly, Ring};

const GROUPS: [&[u64]; 6] = [&[2], &[3], &[4], &[5], &[6], &[2, 2]];
const COEFFS: [&[u64]; 6] = [&[0], &[2], &[3], &[4], &[6], &[2, 4]];

/// Group, coefficients, the three verdicts, and a description.
type Cell = (Vec<u64>, Vec<u64>, [bool; 3], String);

struct Ledger {
    lines: Vec<(bool, String)>,
}

impl Ledger {
    fn record(&mut self, id: usize, name: &str, budget: Duration, f: impl FnOnce() -> Result<(), String>) {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let (ok, note) = match result {
            Ok(()) if took <= budget => (true, String::new()),
            Ok(()) => (false, format!(" over budget of {budget:?}")),
            Err(e) => (false, format!(" {e}")),
        };
        let line = format!("{} {:>2} {name} [{:.2?}]{note}", if ok { "PASS" } else { "FAIL" }, id, took);
        println!("{line}");
        self.lines.push((ok, line));
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Invariant factors of a direct sum of cyclic groups, through prime powers.
/// `0` stands for Z; order-1 summands disappear.
fn canonical(orders: &[u64]) -> Vec<u64> {
    let mut free = 0;
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &n in orders {
        if n == 0 {
            free += 1;
            continue;
        }
        let mut n = n;
        let mut p = 2;
        while n > 1 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            if q > 1 {
                by_prime.entry(p).or_default().push(q);
            }
            p += 1;
        }
    }
    let depth = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; depth];
    for powers in by_prime.values_mut() {
        powers.sort_unstable();
        for (i, q) in powers.iter().rev().enumerate() {
            out[depth - 1 - i] *= q;
        }
    }
    out.extend(std::iter::repeat_n(0, free));
    out
}

/// `Ext^1(G, A)` as the sum of `Z/gcd(n, m)`, with `Ext^1(Z/n, Z) = Z/n`.
fn ext1_oracle(g: &[u64], a: &[u64]) -> Vec<u64> {
    let mut parts = Vec::new();
    for &n in g {
        for &m in a {
            parts.push(if m == 0 { n } else { n.gcd(&m) });
        }
    }
    canonical(&parts)
}

fn factors(p: &homcert::exact_linalg::PresentedGroup) -> Vec<u64> {
    p.invariant_factors().iter().map(|d| d.to_u64().unwrap()).filter(|&d| d != 1).collect()
}

fn criterion_1() -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_homcert")).args(["bd", "check-d2"]).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.code() == Some(0) && text == "d0∘d1 = d1∘d2 = d2∘d3 = 0\n", || format!("got {text:?}"))?;
    let report = homcert::bd_formal::BdSegment::standard().verify_d_squared();
    let composites: std::collections::BTreeSet<&str> = report.residues.iter().map(|r| r.composite.as_str()).collect();
    ensure(report.all_zero() && composites.len() == 3, || format!("composites {composites:?}"))
}

/// Criteria 2 to 4 share the Smith data of each base group.
fn grid() -> Vec<Cell> {
    let mut cells = Vec::new();
    for g in GROUPS {
        let group = FinGenAbGroup::new(g.to_vec()).unwrap();
        let full = SymComplex::new(&group).unwrap().prepare();
        let norm = SymComplex::normalized(&group).unwrap().prepare();
        for a in COEFFS {
            let coeff = FinGenAbGroup::new(a.to_vec()).unwrap();
            let h2 = factors(&full.h2(&coeff).unwrap());
            let h3 = factors(&full.h3(&coeff).unwrap());
            let n2 = factors(&norm.h2(&coeff).unwrap());
            let n3 = factors(&norm.h3(&coeff).unwrap());
            let expected = ext1_oracle(g, a);
            let note = format!("G={g:?} A={a:?}: H2s {h2:?} vs {expected:?}, H3s {h3:?}, normalized {n2:?}/{n3:?}");
            cells.push((g.to_vec(), a.to_vec(), [h2 == expected, h3.is_empty(), n2 == h2 && n3 == h3], note));
        }
    }
    cells
}

fn grid_criterion(cells: &[Cell], k: usize) -> Result<(), String> {
    let bad: Vec<&str> = cells.iter().filter(|c| !c.2[k]).map(|c| c.3.as_str()).collect();
    ensure(cells.len() == 36 && bad.is_empty(), || bad.join("; "))
}

fn criterion_5() -> Result<(), String> {
    for g in GROUPS.iter().filter(|g| g.iter().product::<u64>() <= 4) {
        let group = FinGenAbGroup::new(g.to_vec()).unwrap();
        for a in COEFFS.iter().filter(|a| !a.contains(&0)) {
            let coeff = FinGenAbGroup::new(a.to_vec()).unwrap();
            let c = enumerate_symmetric_classes(&group, &coeff).map_err(|e| e.to_string())?;
            let h2s = ext1_oracle(g, a);
            let order: u64 = h2s.iter().product();
            ensure(c.all_bar_cocycles, || format!("{g:?},{a:?}: a symmetric cocycle fails the bar condition"))?;
            ensure(c.hochschild_image == c.classes, || format!("{g:?},{a:?}: classes collapse in H2_0"))?;
            ensure(c.classes as u64 == order, || format!("{g:?},{a:?}: {} classes, |H2s| = {order}", c.classes))?;
            for &(k, count) in &c.torsion_counts {
                let expected: u64 = h2s.iter().map(|d| d.gcd(&(k as u64))).product();
                ensure(count as u64 == expected, || format!("{g:?},{a:?}: {count} classes killed by {k}, expected {expected}"))?;
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Result<(), String> {
    let s = NumericalSemigroup::new(&[2, 3]).unwrap();
    let pair = SchanuelPair::new(&s, 1).map_err(|e| e.to_string())?;
    let r = &pair.ring;
    let product = module_product(&pair.m, &pair.n_module).map_err(|e| e.to_string())?;
    let listed: Vec<Poly> = ["w^4*t^4", "w^2*t^2 + w^3*t^3", "w^2*t^2 - w^3*t^3", "1 - w^2*t^2"]
        .iter()
        .map(|p| Poly::parse(r, p).unwrap())
        .collect();
    let expected = ModuleGens::new(r, listed, product.subring().clone(), &["t"]).unwrap();
    ensure(product.strings() == expected.strings(), || format!("{:?} vs {:?}", product.strings(), expected.strings()))?;
    let p = |t: &str| Poly::parse(r, t).unwrap();
    let multipliers = product
        .gens()
        .iter()
        .map(|g| match g.to_string().as_str() {
            "w^4*t^4" => p("1"),
            "1 - w^2*t^2" => p("1 + w^2*t^2"),
            _ => Poly::zero(r),
        })
        .collect();
    let cert = MembershipCertificate {
        target: Poly::one(r),
        generators: product.gens().to_vec(),
        multipliers,
        bound: pair.default_bound(),
        subring: product.subring().clone(),
    };
    ensure(verify_certificate(&cert), || "the unit identity does not verify".into())
}

fn expand(cert: &MembershipCertificate) -> Poly {
    let zero = Poly::zero(cert.target.ring());
    cert.generators.iter().zip(&cert.multipliers).fold(zero, |acc, (g, m)| &acc + &(g * m))
}

fn triple(source: TripleSource) -> Result<homcert::cusp_pic::TripleOutcome, String> {
    let s = NumericalSemigroup::new(&[2, 3]).unwrap();
    multiplicative_triple(&s, 1, source, Some(default_triple_bound(1))).map_err(|e| e.to_string())
}

fn criterion_7() -> Result<(), String> {
    let out = triple(TripleSource::Listed)?;
    let cert = out.found.ok_or("no certificate within x+y <= 4, w <= 8")?;
    ensure(cert.generators.len() == 8 && out.certificate.status == Status::Pass, || format!("{}", out.certificate.details))?;
    ensure(verify_certificate(&cert) && expand(&cert) == Poly::one(cert.target.ring()), || "certificate does not expand to 1".into())
}

/// `(1 + s(x+y) | s^2(x+y)^2) (1 - s x | s^2 x^2) (1 - s y | s^2 y^2)` with
/// `s = w`, written out by hand.
fn triple_products() -> Vec<Poly> {
    let r = Ring::new(&["x", "y", "w"]).unwrap();
    let p = |t: &str| Poly::parse(&r, t).unwrap();
    let m = [p("w^2*x^2 + 2*w^2*x*y + w^2*y^2"), p("1 + w*x + w*y")];
    let nx = [p("w^2*x^2"), p("1 - w*x")];
    let ny = [p("w^2*y^2"), p("1 - w*y")];
    let mut out = Vec::new();
    for a in &m {
        for b in &nx {
            for c in &ny {
                out.push(&(a * b) * c);
            }
        }
    }
    out
}

fn criterion_8() -> Result<(), String> {
    let ours = recomputed_triple_generators(1).map_err(|e| e.to_string())?;
    ensure(ours == triple_products(), || "recomputed products differ from the hand expansion".into())?;
    let out = triple(TripleSource::Recomputed)?;
    let cert = out.found.ok_or("no certificate for the recomputed products")?;
    ensure(verify_certificate(&cert) && expand(&cert) == Poly::one(cert.target.ring()), || "certificate does not expand to 1".into())?;
    let differing = out.diff.details["differing"].as_array().map_or(0, Vec::len);
    ensure(out.diff.status == Status::Finding && differing > 0, || format!("diff: {}", out.diff.details))
}

fn criterion_9() -> Result<(), String> {
    let aux = Ring::new(&["a", "b"]).unwrap();
    let setting = PicSetting::new(&aux, 6, 4).map_err(|e| e.to_string())?;
    let (a, b) = (Poly::var(&aux, "a").unwrap(), Poly::var(&aux, "b").unwrap());
    let check_certs = |rep: &homcert::cusp_pic::Report| {
        rep.certificates.iter().all(|c| verify_certificate(&c.clone().into_certificate().unwrap()))
    };
    let law = pic_group_law(&setting, &a, &b).map_err(|e| e.to_string())?;
    ensure(law.status == Status::Pass && check_certs(&law), || format!("M(a)M(b) vs M(a+b): {}", law.details))?;
    // M(a)M(b) has 9 product generators, M(a+b) has 3: every one is certified
    ensure(law.certificates.len() >= 3 + 3, || format!("{} certificates", law.certificates.len()))?;

    let zero = Poly::zero(&aux);
    let id = pic_class_module(&setting, &zero, false).map_err(|e| e.to_string())?;
    ensure(id.module.strings() == ["1", "t^2", "t^3"], || format!("M(0) = {:?}", id.module.strings()))?;
    let ident = pic_group_law(&setting, &a, &zero).map_err(|e| e.to_string())?;
    ensure(ident.status == Status::Pass, || format!("M(a)M(0): {}", ident.details))?;

    let unit = pic_unit_check(&setting, &a, &-&a).map_err(|e| e.to_string())?;
    ensure(unit.status == Status::Pass && check_certs(&unit), || format!("M(a)M(-a): {}", unit.details))?;

    let z = Ring::new(&[]).unwrap();
    let sep_setting = PicSetting::new(&z, 8, 0).map_err(|e| e.to_string())?;
    let sep = pic_separation(&sep_setting, &Poly::constant(&z, 1), &Poly::constant(&z, 2)).map_err(|e| e.to_string())?;
    ensure(sep.status == Status::Pass && sep.details["target"] == "1 + 2*t", || format!("separation: {}", sep.details))
}

/// Members of `<gens>` up to `limit`, by dynamic programming.
fn members(gens: &[u64], limit: usize) -> Vec<bool> {
    let mut m = vec![false; limit + 1];
    m[0] = true;
    for k in 1..=limit {
        m[k] = gens.iter().any(|&g| g as usize <= k && m[k - g as usize]);
    }
    m
}

fn oracle_witness(gens: &[u64]) -> Option<u64> {
    let limit = 3 * 12 * 12;
    let m = members(gens, limit);
    (1..=limit / 3).find(|&n| !m[n] && m[2 * n] && m[3 * n]).map(|n| n as u64)
}

fn criterion_10() -> Result<(), String> {
    for (gens, w) in [(&[2u64, 3][..], 1), (&[3, 4, 5], 2), (&[2, 5], 3)] {
        let got = swan_witness(&NumericalSemigroup::new(gens).unwrap());
        ensure(got == Some(w), || format!("witness of {gens:?}: {got:?}"))?;
    }
    ensure(is_seminormal(&NumericalSemigroup::naturals()), || "N not seminormal".into())?;
    let mut count = 0;
    for mask in 1u32..(1 << 11) {
        let gens: Vec<u64> = (0..11).filter(|i| mask >> i & 1 == 1).map(|i| i + 2).collect();
        if gens.iter().fold(0, |g, &x| g.gcd(&x)) != 1 {
            continue;
        }
        count += 1;
        let s = NumericalSemigroup::new(&gens).unwrap();
        let w = swan_witness(&s);
        ensure(w.is_some() && !is_seminormal(&s), || format!("{gens:?} reported seminormal"))?;
        ensure(w == oracle_witness(&gens), || format!("{gens:?}: {w:?} vs {:?}", oracle_witness(&gens)))?;
    }
    ensure(count > 1000, || format!("only {count} semigroups"))
}

fn criterion_11() -> Result<(), String> {
    for t in 0..=8 {
        for z in 0..=8 {
            let r = weibel_equalizer(t, z);
            // t p has t-exponents >= 1, q has t-exponents <= 0: the supports
            // are disjoint, so the system has full column rank
            let unknowns = 2 * (t as u64 + 1) * (z as u64 + 1);
            ensure(r.status == Status::Pass && r.details["rank"] == unknowns, || format!("({t},{z}): {}", r.details))?;
        }
    }
    Ok(())
}

fn criterion_12() -> Result<(), String> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_homcert"))
            .args(["verify-all", "--format", "json", "--seed", "7"])
            .output()
            .unwrap()
    };
    let (first, second) = (run(), run());
    ensure(first.status.code() == Some(0), || String::from_utf8_lossy(&first.stderr).into_owned())?;
    ensure(first.stdout == second.stdout, || "outputs differ".into())?;
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).map_err(|e| e.to_string())?;
    ensure(v["status"] == "pass", || "verify-all did not pass".into())
}

fn main() {
    let mut ledger = Ledger { lines: Vec::new() };
    let secs = Duration::from_secs;
    ledger.record(1, "differential identities", secs(1), criterion_1);
    let mut cells = Vec::new();
    ledger.record(2, "H2s equals Ext1 on the grid", secs(300), || {
        cells = grid();
        grid_criterion(&cells, 0)
    });
    ledger.record(3, "H3s vanishes on the grid", secs(300), || grid_criterion(&cells, 1));
    ledger.record(4, "normalized complex agrees", secs(300), || grid_criterion(&cells, 2));
    ledger.record(5, "symmetric classes inject into H2_0 and biject onto H2s", secs(300), criterion_5);
    ledger.record(6, "Schanuel product and unit identity", secs(1), criterion_6);
    ledger.record(7, "listed triple ideal contains 1", secs(60), criterion_7);
    ledger.record(8, "recomputed triple products contain 1, diff is a finding", secs(60), criterion_8);
    ledger.record(9, "Pic group law, identity, inverse, separation", secs(30), criterion_9);
    ledger.record(10, "seminormality witnesses and census", secs(10), criterion_10);
    ledger.record(11, "Weibel equalizer trivial up to (8,8)", secs(5), criterion_11);
    ledger.record(12, "verify-all output is deterministic", secs(600), criterion_12);
    let failed = ledger.lines.iter().filter(|(ok, _)| !ok).count();
    println!("{} of {} criteria pass", ledger.lines.len() - failed, ledger.lines.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
