//! The modules `M(a) = R(1 + a t) + t^2 R[t]` over `R[t^2, t^3]`, with `R`
//! a polynomial ring in auxiliary variables. Their products realize the
//! isomorphism of `Pic(R[t^2, t^3])` with the additive group of `R`; the
//! checks below verify this by certified double inclusion up to a degree
//! bound.

use std::sync::Arc;

use serde_json::json;

use super::{certificate_report, CuspError, Report, Status};
use crate::polyring::{membership, module_product, DegreeBound, MembershipCertificate, ModuleGens, Poly, Ring, SubringSpec};
use crate::semigroup::NumericalSemigroup;

/// Ambient ring `Z[aux][t]` and bounds for membership searches.
#[derive(Clone, Debug)]
pub struct PicSetting {
    pub ring: Arc<Ring>,
    pub t_bound: i64,
    pub aux_bound: i64,
}

impl PicSetting {
    /// `aux` is the ring of the coefficients; `t` is added in front unless
    /// already present.
    pub fn new(aux: &Arc<Ring>, t_bound: i64, aux_bound: i64) -> Result<Self, CuspError> {
        let ring = if aux.index("t").is_some() {
            aux.clone()
        } else {
            let mut names = vec!["t"];
            names.extend(aux.names().iter().map(String::as_str));
            Ring::new(&names)?
        };
        Ok(PicSetting { ring, t_bound, aux_bound })
    }

    pub fn subring(&self) -> SubringSpec {
        SubringSpec::on("t", NumericalSemigroup::new(&[2, 3]).unwrap())
    }

    pub fn bound(&self) -> DegreeBound {
        let aux: Vec<&str> = self.ring.names().iter().map(String::as_str).filter(|&v| v != "t").collect();
        let b = DegreeBound::new().cap(&["t"], self.t_bound);
        if aux.is_empty() {
            b
        } else {
            b.cap(&aux, self.aux_bound)
        }
    }

    fn lift(&self, a: &Poly) -> Result<Poly, CuspError> {
        let p = a.embed(&self.ring)?;
        if p.mentions(self.ring.index("t").unwrap()) {
            return Err(CuspError::InvolvesT(a.to_string()));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug)]
pub struct PicClass {
    pub a: Poly,
    pub npic: bool,
    /// `[1 + a t, t^2, t^3]` in this order.
    pub template: Vec<Poly>,
    pub module: ModuleGens,
}

pub fn pic_class_module(setting: &PicSetting, a: &Poly, npic: bool) -> Result<PicClass, CuspError> {
    let ring = &setting.ring;
    let a = setting.lift(a)?;
    if npic {
        let at_zero = match ring.index("z") {
            Some(_) => a.substitute("z", &Poly::zero(ring))?,
            None => a.clone(),
        };
        if !at_zero.is_zero() {
            return Err(CuspError::NotNpic(a.to_string()));
        }
    }
    let t = Poly::var(ring, "t")?;
    let template = vec![&Poly::one(ring) + &(&a * &t), t.pow(2), t.pow(3)];
    let module = ModuleGens::new(ring, template.clone(), setting.subring(), &["t"])?;
    Ok(PicClass { a, npic, template, module })
}

fn certify_all(
    check: &str,
    targets: &[Poly],
    over: &ModuleGens,
    bound: &DegreeBound,
) -> Result<(Vec<MembershipCertificate>, Vec<String>), CuspError> {
    let mut certs = Vec::new();
    let mut missing = Vec::new();
    for g in targets {
        match membership(g, over, bound)? {
            Some(c) if certificate_report(check, &c, json!({})).status == Status::Pass => certs.push(c),
            _ => missing.push(g.to_string()),
        }
    }
    Ok((certs, missing))
}

/// `M(a) M(b)` and `M(a + b)` contain each other's generators within the bound.
pub fn pic_group_law(setting: &PicSetting, a: &Poly, b: &Poly) -> Result<Report, CuspError> {
    if setting.t_bound < 4 {
        return Err(CuspError::BoundTooSmall(setting.t_bound));
    }
    let ma = pic_class_module(setting, a, false)?;
    let mb = pic_class_module(setting, b, false)?;
    let sum = &ma.a + &mb.a;
    let mab = pic_class_module(setting, &sum, false)?;
    let product = module_product(&ma.module, &mb.module)?;
    let bound = setting.bound();

    let (forward, forward_missing) = certify_all("pic-law", mab.module.gens(), &product, &bound)?;
    let (backward, backward_missing) = certify_all("pic-law", product.gens(), &mab.module, &bound)?;
    let ok = forward_missing.is_empty() && backward_missing.is_empty();
    let not_certified = [forward_missing.clone(), backward_missing.clone()].concat();
    let mut report = Report::pass_if(
        "pic-law",
        ok,
        json!({
            "a": ma.a.to_string(),
            "b": mb.a.to_string(),
            "m_a": ma.module.strings(),
            "m_b": mb.module.strings(),
            "product": product.strings(),
            "m_sum": mab.module.strings(),
            "bound": bound.caps(),
            "sum_in_product": forward_missing.is_empty(),
            "product_in_sum": backward_missing.is_empty(),
            "not_certified": not_certified,
        }),
    );
    for c in forward.iter().chain(&backward) {
        report = report.with_certificate(c);
    }
    Ok(report)
}

/// Certificate for `target` over `M(a)`, searched within the setting's bound.
pub fn pic_membership(setting: &PicSetting, target: &Poly, class: &PicClass) -> Result<Option<MembershipCertificate>, CuspError> {
    let target = target.embed(&setting.ring)?;
    Ok(membership(&target, &class.module, &setting.bound())?)
}

/// `1` lies in `M(a) M(b)`.
pub fn pic_unit_check(setting: &PicSetting, a: &Poly, b: &Poly) -> Result<Report, CuspError> {
    let ma = pic_class_module(setting, a, false)?;
    let mb = pic_class_module(setting, b, false)?;
    let product = module_product(&ma.module, &mb.module)?;
    let one = Poly::one(&setting.ring);
    let extra = json!({ "a": ma.a.to_string(), "b": mb.a.to_string(), "product": product.strings() });
    Ok(match membership(&one, &product, &setting.bound())? {
        Some(c) => certificate_report("pic-unit", &c, extra),
        None => {
            let mut d = extra;
            d["bound"] = json!(setting.bound().caps());
            d["verified"] = json!(false);
            Report::new("pic-unit", Status::Fail, d)
        }
    })
}

/// `1 + c t` has no certificate over `M(a)`; passes when the search fails.
pub fn pic_separation(setting: &PicSetting, a: &Poly, c: &Poly) -> Result<Report, CuspError> {
    let class = pic_class_module(setting, a, false)?;
    let c = setting.lift(c)?;
    let t = Poly::var(&setting.ring, "t")?;
    let target = &Poly::one(&setting.ring) + &(&c * &t);
    let found = pic_membership(setting, &target, &class)?;
    let report = Report::pass_if(
        "pic-separation",
        found.is_none(),
        json!({
            "module": class.module.strings(),
            "target": target.to_string(),
            "bound": setting.bound().caps(),
            "certificate_found": found.is_some(),
        }),
    );
    Ok(match &found {
        Some(cert) => report.with_certificate(cert),
        None => report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setting(aux: &[&str], t: i64) -> (Arc<Ring>, PicSetting) {
        let r = Ring::new(aux).unwrap();
        let s = PicSetting::new(&r, t, 4).unwrap();
        (r, s)
    }

    #[test]
    fn templates() {
        let (r, s) = setting(&["a", "z"], 6);
        let zero = pic_class_module(&s, &Poly::zero(&r), false).unwrap();
        assert_eq!(zero.module.strings(), ["1", "t^2", "t^3"]);
        let a = pic_class_module(&s, &Poly::parse(&r, "a").unwrap(), false).unwrap();
        let shown: Vec<String> = a.template.iter().map(Poly::to_string).collect();
        assert_eq!(shown, ["1 + t*a", "t^2", "t^3"]);
        assert!(pic_class_module(&s, &Poly::parse(&r, "z").unwrap(), true).is_ok());
        assert!(matches!(
            pic_class_module(&s, &Poly::parse(&r, "1 + z").unwrap(), true),
            Err(CuspError::NotNpic(_))
        ));
    }

    #[test]
    fn coefficient_must_avoid_t() {
        let r = Ring::new(&["t", "a"]).unwrap();
        let s = PicSetting::new(&r, 6, 4).unwrap();
        assert!(matches!(
            pic_class_module(&s, &Poly::parse(&r, "a*t").unwrap(), false),
            Err(CuspError::InvolvesT(_))
        ));
    }

    #[test]
    fn trivial_law_and_small_bound() {
        let (r, s) = setting(&[], 6);
        let z = Poly::zero(&r);
        assert_eq!(pic_group_law(&s, &z, &z).unwrap().status, Status::Pass);
        let (_, small) = setting(&[], 3);
        assert!(matches!(pic_group_law(&small, &z, &z), Err(CuspError::BoundTooSmall(3))));
    }

    #[test]
    fn one_plus_two_t_not_in_m_one() {
        let (r, s) = setting(&[], 8);
        let rep = pic_separation(&s, &Poly::one(&r), &Poly::constant(&r, 2)).unwrap();
        assert_eq!(rep.status, Status::Pass, "{}", rep.details);
    }
}
