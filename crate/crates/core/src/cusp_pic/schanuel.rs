//! Schanuel's pair `M = (s^2 t^2, 1 + s t)`, `N = (s^2 t^2, 1 - s t)` over
//! `R[t]` with `R = Z[S]` and `s = w^n` for a witness `n`, and the triple
//! product `m*M . pr1*N . pr2*N` in `R[x, y]`.

use std::sync::Arc;

use serde_json::json;

use super::{certificate_report, require_witness, CuspError, Report, Status};
use crate::polyring::{
    in_subring, membership, module_product, DegreeBound, MembershipCertificate, ModuleGens, Poly, Ring,
    SubringSpec,
};
use crate::semigroup::NumericalSemigroup;

/// The ideal as listed for Macaulay2, in `u = s^2`, `v = s^3`.
pub const TRIPLE_LISTING: &str = include_str!("triple.m2");

const PRODUCT_LIST: [&str; 4] = ["s^4*t^4", "s^2*t^2 + s^3*t^3", "s^2*t^2 - s^3*t^3", "1 - s^2*t^2"];

/// Rewrites a polynomial in `from` (which contains `s`) into `to`, sending
/// `s` to `w^n` and every other variable to its namesake.
fn with_s(from: &Arc<Ring>, to: &Arc<Ring>, text: &str, n: u64) -> Result<Poly, CuspError> {
    let p = Poly::parse(from, text)?;
    let images = from
        .names()
        .iter()
        .map(|v| if v == "s" { Ok(Poly::var(to, "w")?.pow(n as u32)) } else { Poly::var(to, v) })
        .collect::<Result<Vec<_>, crate::polyring::PolyError>>()?;
    Ok(p.map_ring(to, &images)?)
}

pub struct SchanuelPair {
    pub semigroup: NumericalSemigroup,
    pub n: u64,
    /// Variables `w, t`.
    pub ring: Arc<Ring>,
    pub m: ModuleGens,
    pub n_module: ModuleGens,
}

impl SchanuelPair {
    pub fn new(s: &NumericalSemigroup, n: u64) -> Result<Self, CuspError> {
        require_witness(s, n)?;
        let ring = Ring::new(&["w", "t"])?;
        let st = Ring::new(&["s", "t"])?;
        let sub = SubringSpec::on("w", s.clone());
        let gens = |a: &str, b: &str| -> Result<ModuleGens, CuspError> {
            let g = vec![with_s(&st, &ring, a, n)?, with_s(&st, &ring, b, n)?];
            Ok(ModuleGens::new(&ring, g, sub.clone(), &["t"])?)
        };
        Ok(SchanuelPair {
            semigroup: s.clone(),
            n,
            m: gens("s^2*t^2", "1 + s*t")?,
            n_module: gens("s^2*t^2", "1 - s*t")?,
            ring,
        })
    }

    /// The four listed product generators with `s = w^n`, canonicalized.
    pub fn expected_product(&self) -> Result<ModuleGens, CuspError> {
        let st = Ring::new(&["s", "t"])?;
        let g = PRODUCT_LIST
            .iter()
            .map(|p| with_s(&st, &self.ring, p, self.n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ModuleGens::new(&self.ring, g, self.m.subring().clone(), &["t"])?)
    }

    /// `1 = s^4 t^4 + (1 - s^2 t^2)(1 + s^2 t^2)` as a certificate over the
    /// product generators.
    pub fn unit_identity(&self, product: &ModuleGens) -> Result<MembershipCertificate, CuspError> {
        let st = Ring::new(&["s", "t"])?;
        let a = with_s(&st, &self.ring, "s^4*t^4", self.n)?;
        let b = with_s(&st, &self.ring, "1 - s^2*t^2", self.n)?;
        let mult_b = with_s(&st, &self.ring, "1 + s^2*t^2", self.n)?;
        let multipliers = product
            .gens()
            .iter()
            .map(|g| {
                if *g == a {
                    Poly::one(&self.ring)
                } else if *g == b {
                    mult_b.clone()
                } else {
                    Poly::zero(&self.ring)
                }
            })
            .collect();
        Ok(MembershipCertificate {
            target: Poly::one(&self.ring),
            generators: product.gens().to_vec(),
            multipliers,
            bound: self.default_bound(),
            subring: product.subring().clone(),
        })
    }

    /// `t <= 4`, `s <= 4`.
    pub fn default_bound(&self) -> DegreeBound {
        DegreeBound::new().cap(&["t"], 4).cap(&["w"], 4 * self.n as i64)
    }
}

pub fn schanuel_check(s: &NumericalSemigroup, n: u64) -> Result<Report, CuspError> {
    let pair = SchanuelPair::new(s, n)?;
    let product = module_product(&pair.m, &pair.n_module)?;
    let expected = pair.expected_product()?;
    let matches = product.strings() == expected.strings();
    let in_sub = product.gens().iter().all(|g| in_subring(g, product.subring()));

    let identity = pair.unit_identity(&product)?;
    let identity_report = certificate_report("unit-identity", &identity, json!({}));
    let found = membership(&Poly::one(&pair.ring), &product, &pair.default_bound())?;
    let found_report = found.as_ref().map(|c| certificate_report("unit-search", c, json!({})));

    let ok = matches
        && in_sub
        && identity_report.status == Status::Pass
        && found_report.as_ref().is_some_and(|r| r.status == Status::Pass);
    let mut report = Report::pass_if(
        "schanuel",
        ok,
        json!({
            "semigroup": s.generators(),
            "n": n,
            "m": pair.m.strings(),
            "n_module": pair.n_module.strings(),
            "product": product.strings(),
            "expected_product": expected.strings(),
            "product_matches": matches,
            "product_in_subring": in_sub,
            "unit_identity_verified": identity_report.status == Status::Pass,
            "unit_search": match &found_report {
                Some(r) => json!(r.status.as_str()),
                None => json!(format!("no certificate within {}", pair.default_bound())),
            },
        }),
    )
    .with_certificate(&identity);
    if let Some(c) = &found {
        report = report.with_certificate(c);
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleSource {
    Listed,
    Recomputed,
}

impl TripleSource {
    pub fn as_str(self) -> &'static str {
        match self {
            TripleSource::Listed => "listed",
            TripleSource::Recomputed => "recomputed",
        }
    }
}

/// Ambient ring `Z[x, y, w]` of the triple product.
fn triple_ring() -> Arc<Ring> {
    Ring::new(&["x", "y", "w"]).unwrap()
}

/// The listed generators with `u = w^(2n)`, `v = w^(3n)`, in listing order.
pub fn listed_triple_generators(n: u64) -> Result<Vec<Poly>, CuspError> {
    let uv = Ring::new(&["x", "y", "u", "v"])?;
    let ring = triple_ring();
    let w = Poly::var(&ring, "w")?;
    let images = [
        Poly::var(&ring, "x")?,
        Poly::var(&ring, "y")?,
        w.pow(2 * n as u32),
        w.pow(3 * n as u32),
    ];
    let mut lines = TRIPLE_LISTING.lines().skip_while(|l| !l.contains("ideal("));
    lines.next();
    lines
        .take_while(|l| l.trim() != ")")
        .map(|l| {
            let text = l.trim().trim_end_matches(',');
            Ok(Poly::parse(&uv, text)?.map_ring(&ring, &images)?)
        })
        .collect()
}

/// Products `a * b * c` over `a` in `M(x+y)`, `b` in `N(x)`, `c` in `N(y)`,
/// with the last factor varying fastest.
pub fn recomputed_triple_generators(n: u64) -> Result<Vec<Poly>, CuspError> {
    let big = Ring::new(&["x", "y", "w", "t"])?;
    let wt = Ring::new(&["w", "t"])?;
    let st = Ring::new(&["s", "t"])?;
    let lift = |text: &str| -> Result<Poly, CuspError> { Ok(with_s(&st, &wt, text, n)?.embed(&big)?) };
    let m = [lift("s^2*t^2")?, lift("1 + s*t")?];
    let nn = [lift("s^2*t^2")?, lift("1 - s*t")?];
    let pull = |p: &Poly, v: &str| -> Result<Poly, CuspError> { Ok(p.substitute("t", &Poly::parse(&big, v)?)?) };

    let ring = triple_ring();
    let drop_t = [
        Poly::var(&ring, "x")?,
        Poly::var(&ring, "y")?,
        Poly::var(&ring, "w")?,
        Poly::zero(&ring),
    ];
    let mut out = Vec::new();
    for a in &m {
        for b in &nn {
            for c in &nn {
                let p = &(&pull(a, "x + y")? * &pull(b, "x")?) * &pull(c, "y")?;
                out.push(p.map_ring(&ring, &drop_t)?);
            }
        }
    }
    Ok(out)
}

/// Positional comparison of the listed and recomputed generators.
pub fn triple_diff(n: u64) -> Result<Report, CuspError> {
    let listed = listed_triple_generators(n)?;
    let ours = recomputed_triple_generators(n)?;
    let mut pairs = Vec::new();
    let mut differing = Vec::new();
    for (i, (p, q)) in listed.iter().zip(&ours).enumerate() {
        let same = p == q;
        if !same {
            differing.push(i + 1);
        }
        pairs.push(json!({
            "index": i + 1,
            "listed": p.to_string(),
            "recomputed": q.to_string(),
            "equal": same,
            "equal_up_to_sign": same || *p == -q,
            "difference": (p - q).to_string(),
        }));
    }
    let status = if differing.is_empty() && listed.len() == ours.len() {
        Status::Pass
    } else {
        Status::Finding
    };
    Ok(Report::new(
        "triple-diff",
        status,
        json!({
            "n": n,
            "listed_count": listed.len(),
            "recomputed_count": ours.len(),
            "differing": differing,
            "pairs": pairs,
        }),
    ))
}

pub struct TripleOutcome {
    pub certificate: Report,
    pub diff: Report,
    pub found: Option<MembershipCertificate>,
}

/// `x, y` of total degree at most 4 and `w` at most `8n`.
pub fn default_triple_bound(n: u64) -> DegreeBound {
    DegreeBound::new().cap(&["x", "y"], 4).cap(&["w"], 8 * n as i64)
}

/// Looks for `1` in the triple-product ideal built from `source`. When the
/// default bound fails (and no bound was given), the search is repeated once
/// with `x, y <= 6`, `w <= 12n`.
pub fn multiplicative_triple(
    s: &NumericalSemigroup,
    n: u64,
    source: TripleSource,
    bound: Option<DegreeBound>,
) -> Result<TripleOutcome, CuspError> {
    require_witness(s, n)?;
    let raw = match source {
        TripleSource::Listed => listed_triple_generators(n)?,
        TripleSource::Recomputed => recomputed_triple_generators(n)?,
    };
    let ring = triple_ring();
    let sub = SubringSpec::on("w", s.clone());
    let in_sub = raw.iter().all(|g| in_subring(g, &sub));
    let ideal = ModuleGens::new(&ring, raw, sub, &["x", "y"])?;

    let mut tried = Vec::new();
    let explicit = bound.is_some();
    let first = bound.unwrap_or_else(|| default_triple_bound(n));
    let mut found = membership(&Poly::one(&ring), &ideal, &first)?;
    tried.push(first.clone());
    if found.is_none() && !explicit {
        let wider = DegreeBound::new().cap(&["x", "y"], 6).cap(&["w"], 12 * n as i64);
        found = membership(&Poly::one(&ring), &ideal, &wider)?;
        tried.push(wider);
    }
    let bounds: Vec<_> = tried.iter().map(|b| b.caps().clone()).collect();
    let extra = json!({
        "source": source.as_str(),
        "semigroup": s.generators(),
        "n": n,
        "generators": ideal.strings(),
        "generators_in_subring": in_sub,
        "bounds_tried": bounds,
    });
    let certificate = match &found {
        Some(c) => {
            let mut r = certificate_report("triple", c, extra);
            if !in_sub {
                r.status = Status::Fail;
            }
            r
        }
        None => {
            let mut d = extra;
            d["target"] = json!("1");
            d["verified"] = json!(false);
            Report::new("triple", Status::Fail, d)
        }
    };
    Ok(TripleOutcome { certificate, diff: triple_diff(n)?, found })
}
