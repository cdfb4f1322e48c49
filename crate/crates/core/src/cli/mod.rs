//! Command-line front end. [`run`] parses arguments and returns the exit
//! code with the text that goes to stdout and stderr, so it can be driven
//! from tests without spawning a process.
//!
//! Exit codes: 0 pass (findings included), 1 mathematical failure, 2 usage
//! error.

pub mod checks;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bd_formal::BdSegment;
use crate::cusp_pic::{
    multiplicative_triple, pic_group_law, pic_separation, pic_unit_check, schanuel_check, seminormal_report,
    swan_witness, weibel_equalizer, NumericalSemigroup, PicSetting, TripleSource,
};
use crate::exact_linalg::PresentedGroup;
use crate::finab::{ext1, h2_hochschild, h2s, h3s, verify_low_degree, FinGenAbGroup};
use crate::polyring::{DegreeBound, Poly, Ring};
use crate::report::{Report, Status};

#[derive(Parser, Debug)]
#[command(name = "homcert", version, about = "Exact verification of low-degree symmetric cohomology and cusp Picard computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Breen-Deligne segment checks
    Bd {
        #[command(subcommand)]
        action: BdAction,
    },
    /// Invariant factors of H2s, H3s, the Hochschild group or Ext^1
    Cohomology(CohomologyArgs),
    /// Schanuel modules, triple products, Pic of cusp rings
    Cusp {
        #[command(subcommand)]
        action: CuspAction,
    },
    /// Every acceptance check, in a fixed order
    VerifyAll(VerifyAllArgs),
}

#[derive(Subcommand, Debug)]
enum BdAction {
    /// d0d1 = d1d2 = d2d3 = 0 on the generator families
    CheckD2 {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Flip one sign of d2 (mutation testing)
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Which {
    H2s,
    H3s,
    Hochschild,
    Ext1,
    All,
}

#[derive(Args, Debug)]
struct CohomologyArgs {
    /// Base group as cyclic orders, e.g. `2,2`; `0` is Z
    #[arg(long, value_parser = parse_group)]
    group: FinGenAbGroup,
    /// Coefficient group, same syntax
    #[arg(long, value_parser = parse_group)]
    coeff: FinGenAbGroup,
    #[arg(value_enum)]
    which: Which,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug, Clone)]
struct CuspCommon {
    /// Semigroup generators, e.g. `2,3`
    #[arg(long, value_parser = parse_semigroup, default_value = "2,3")]
    semigroup: NumericalSemigroup,
    /// Witness; defaults to the smallest one
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Source {
    /// The Macaulay2 listing as printed
    #[value(alias = "paper")]
    Listed,
    Recomputed,
}

#[derive(Subcommand, Debug)]
enum CuspAction {
    /// M N = Z[S]-module generated by the expected list, and 1 in M N
    Schanuel(CuspCommon),
    /// 1 in the ideal of the eight triple products
    Triple {
        #[command(flatten)]
        common: CuspCommon,
        #[arg(long, value_enum, default_value_t = Source::Listed)]
        source: Source,
        /// Write the certificate JSON here
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
        /// Total degree cap on x, y
        #[arg(long)]
        bound_aux: Option<i64>,
        /// Degree cap on w
        #[arg(long)]
        bound_t: Option<i64>,
    },
    /// M(a) M(b) = M(a + b) over R[t^2, t^3]
    PicLaw {
        /// Coefficients in the auxiliary variables, e.g. `a` or `a*b + 2`
        #[arg(long, default_value = "a")]
        a: String,
        #[arg(long, default_value = "b")]
        b: String,
        #[arg(long, default_value_t = 6)]
        bound_t: i64,
        #[arg(long, default_value_t = 4)]
        bound_aux: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Seminormality of Z[S] with a witness if it fails
    Seminormal {
        #[arg(long, value_parser = parse_semigroup_any)]
        semigroup: NumericalSemigroup,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Only the zero pair solves t p(t, z) = q(1/t, z)
    Weibel {
        #[arg(long, default_value_t = 8)]
        deg_t: u32,
        #[arg(long, default_value_t = 8)]
        deg_z: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct VerifyAllArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    max_group_order: u64,
    #[arg(long, default_value_t = 6)]
    bound_t: i64,
    #[arg(long, default_value_t = 4)]
    bound_aux: i64,
}

fn parse_group(s: &str) -> Result<FinGenAbGroup, String> {
    s.parse::<FinGenAbGroup>().map_err(|e| e.to_string())
}

fn parse_orders(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| format!("bad generator `{p}`")))
        .collect()
}

fn parse_semigroup(s: &str) -> Result<NumericalSemigroup, String> {
    let gens = parse_orders(s)?;
    let sg = NumericalSemigroup::new(&gens).map_err(|e| e.to_string())?;
    if swan_witness(&sg).is_none() {
        return Err(format!("{sg} has no seminormality witness"));
    }
    Ok(sg)
}

fn parse_semigroup_any(s: &str) -> Result<NumericalSemigroup, String> {
    NumericalSemigroup::new(&parse_orders(s)?).map_err(|e| e.to_string())
}

/// What a command produced.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }

    fn text(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }
}

fn code_of(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::text(0, rendered)
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: rendered },
            };
        }
    };
    match cli.command {
        Command::Bd { action: BdAction::CheckD2 { format, inject_fault } } => bd_check(format, inject_fault),
        Command::Cohomology(args) => cohomology(args),
        Command::Cusp { action } => cusp(action),
        Command::VerifyAll(args) => verify_all(args),
    }
}

fn json_line(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn bd_check(format: Format, inject_fault: bool) -> Outcome {
    let mut seg = BdSegment::standard();
    if inject_fault {
        seg = seg.with_flipped_sign(2, 0, 0);
    }
    let report = checks::bd_report(&seg);
    let ok = report.status == Status::Pass;
    let out = match format {
        Format::Json => json_line(&report),
        Format::Text if ok => "d0∘d1 = d1∘d2 = d2∘d3 = 0\n".to_string(),
        Format::Text => {
            let mut s = String::new();
            for r in report.details["residues"].as_array().into_iter().flatten() {
                if r["residue"] != "0" {
                    s += &format!(
                        "{} on {} (summand {}): {}\n",
                        r["composite"].as_str().unwrap_or(""),
                        r["generator"].as_str().unwrap_or(""),
                        r["summand"],
                        r["residue"].as_str().unwrap_or("")
                    );
                }
            }
            s
        }
    };
    Outcome::text(code_of(ok), out)
}

fn cohomology(args: CohomologyArgs) -> Outcome {
    let CohomologyArgs { group: g, coeff: a, which, format } = args;
    if !g.is_finite() {
        return Outcome::usage(format!("base group {g} must be finite"));
    }
    let single = |name: &str, r: Result<PresentedGroup, crate::finab::FinabError>| match r {
        Ok(p) => {
            let body = match format {
                Format::Text => format!("{p}\n"),
                Format::Json => json_line(&json!({ "group": g.to_string(), "coeff": a.to_string(), name: p.to_string() })),
            };
            Outcome::text(0, body)
        }
        Err(e) => Outcome::usage(e),
    };
    match which {
        Which::H2s => single("h2s", h2s(&g, &a)),
        Which::H3s => single("h3s", h3s(&g, &a)),
        Which::Hochschild => single("h2_hochschild", h2_hochschild(&g, &a)),
        Which::Ext1 => single("ext1", ext1(&g, &a)),
        Which::All => match verify_low_degree(&g, &a) {
            Err(e) => Outcome::usage(e),
            Ok(r) => {
                let ok = r.passed();
                let body = match format {
                    Format::Json => json_line(&json!({
                        "group": g.to_string(),
                        "coeff": a.to_string(),
                        "h2s": r.h2s.to_string(),
                        "ext1": r.ext1.to_string(),
                        "h3s": r.h3s.to_string(),
                        "h2s_normalized": r.h2s_normalized.to_string(),
                        "h3s_normalized": r.h3s_normalized.to_string(),
                        "status": if ok { "pass" } else { "fail" },
                    })),
                    Format::Text => {
                        let eq = if r.h2_matches_ext1() { "=" } else { "!=" };
                        let mut s = format!("H2s = {} {eq} Ext1; H3s = {}", r.h2s, r.h3s);
                        if !r.h2_matches_ext1() {
                            s += &format!(" (Ext1 = {})", r.ext1);
                        }
                        if !r.normalized_agrees() {
                            s += &format!("; normalized H2s = {}, H3s = {}", r.h2s_normalized, r.h3s_normalized);
                        }
                        s + "\n"
                    }
                };
                Outcome::text(code_of(ok), body)
            }
        },
    }
}

fn summarize(report: &Report) -> String {
    let d = &report.details;
    let line = match report.check.as_str() {
        "seminormal" => match d["witness"].as_u64() {
            Some(n) => format!("NOT seminormal; witness n={n}"),
            None => "seminormal".to_string(),
        },
        "weibel-equalizer" if report.status == Status::Pass => "equalizer trivial".to_string(),
        "weibel-equalizer" => format!("equalizer has kernel of dimension {}", d["kernel_dimension"]),
        _ => format!("{}: {}", report.check, report.status.as_str()),
    };
    line + "\n"
}

fn emit(reports: &[Report], format: Format, extra_text: &str) -> Outcome {
    let ok = reports.iter().all(|r| r.status.is_ok());
    let body = match format {
        Format::Json if reports.len() == 1 => json_line(&reports[0]),
        Format::Json => json_line(&reports),
        Format::Text => reports.iter().map(summarize).collect::<String>() + extra_text,
    };
    Outcome::text(code_of(ok), body)
}

fn witness_for(common: &CuspCommon) -> u64 {
    common.n.or_else(|| swan_witness(&common.semigroup)).expect("validated by the parser")
}

fn cusp(action: CuspAction) -> Outcome {
    match action {
        CuspAction::Schanuel(common) => match schanuel_check(&common.semigroup, witness_for(&common)) {
            Ok(r) => {
                let text = if r.status == Status::Pass {
                    format!("M N = ({})\n", r.details["product"].as_array().map_or(String::new(), |gs| join(gs)))
                } else {
                    String::new()
                };
                emit(&[r], common.format, &text)
            }
            Err(e) => Outcome::usage(e),
        },
        CuspAction::Triple { common, source, emit_certificate, bound_aux, bound_t } => {
            let n = witness_for(&common);
            let bound = match (bound_aux, bound_t) {
                (None, None) => None,
                (xy, w) => Some(DegreeBound::new().cap(&["x", "y"], xy.unwrap_or(4)).cap(&["w"], w.unwrap_or(8 * n as i64))),
            };
            let src = match source {
                Source::Listed => TripleSource::Listed,
                Source::Recomputed => TripleSource::Recomputed,
            };
            let outcome = match multiplicative_triple(&common.semigroup, n, src, bound) {
                Ok(o) => o,
                Err(e) => return Outcome::usage(e),
            };
            if let (Some(path), Some(cert)) = (&emit_certificate, &outcome.found) {
                if let Err(e) = std::fs::write(path, json_line(&cert.to_json())) {
                    return Outcome::usage(format!("cannot write {}: {e}", path.display()));
                }
            }
            let mut text = String::new();
            if outcome.found.is_none() {
                text += &format!("no certificate within bounds {}\n", outcome.certificate.details["bounds_tried"]);
            }
            if let Some(entries) = outcome.diff.details["pairs"].as_array() {
                for e in entries.iter().filter(|e| e["equal"] == false) {
                    text += &format!(
                        "finding: generator {} listed {} recomputed {}\n",
                        e["index"],
                        e["listed"].as_str().unwrap_or(""),
                        e["recomputed"].as_str().unwrap_or("")
                    );
                }
            }
            emit(&[outcome.certificate, outcome.diff], common.format, &text)
        }
        CuspAction::PicLaw { a, b, bound_t, bound_aux, format } => pic_law(&a, &b, bound_t, bound_aux, format),
        CuspAction::Seminormal { semigroup, format } => emit(&[seminormal_report(&semigroup)], format, ""),
        CuspAction::Weibel { deg_t, deg_z, format } => emit(&[weibel_equalizer(deg_t, deg_z)], format, ""),
    }
}

fn join(values: &[serde_json::Value]) -> String {
    values.iter().filter_map(|v| v.as_str()).collect::<Vec<_>>().join(", ")
}

/// Auxiliary variables are the distinct lowercase names in `a` and `b`.
fn aux_ring(texts: &[&str]) -> Result<std::sync::Arc<Ring>, String> {
    let mut names: Vec<String> = Vec::new();
    for t in texts {
        for word in t.split(|c: char| !c.is_ascii_lowercase()).filter(|w| !w.is_empty()) {
            if !names.iter().any(|n| n == word) {
                names.push(word.to_string());
            }
        }
    }
    names.sort();
    if names.iter().any(|n| n == "t") {
        return Err("coefficients may not involve t".into());
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Ring::new(&refs).map_err(|e| e.to_string())
}

fn pic_law(a: &str, b: &str, bound_t: i64, bound_aux: i64, format: Format) -> Outcome {
    let ring = match aux_ring(&[a, b]) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let (pa, pb) = match (Poly::parse(&ring, a), Poly::parse(&ring, b)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(e), _) | (_, Err(e)) => return Outcome::usage(e),
    };
    let setting = match PicSetting::new(&ring, bound_t, bound_aux) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(e),
    };
    let law = match pic_group_law(&setting, &pa, &pb) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let unit = match pic_unit_check(&setting, &pa, &-&pa) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let mut reports = vec![law, unit];
    // with a constant coefficient, also check that 1 + 2a t is separated from M(a)
    if ring.var_count() == 0 {
        let two = &pa + &pa;
        if !two.is_zero() {
            match pic_separation(&setting, &pa, &two) {
                Ok(r) => reports.push(r),
                Err(e) => return Outcome::usage(e),
            }
        }
    }
    emit(&reports, format, "")
}

fn verify_all(args: VerifyAllArgs) -> Outcome {
    if args.bound_t < 4 {
        return Outcome::usage(format!("--bound-t {} is too small; at least 4 is needed", args.bound_t));
    }
    let reports = checks::all_checks(args.seed, args.max_group_order, args.bound_t, args.bound_aux);
    let ok = reports.iter().all(|r| r.status.is_ok());
    let body = match args.format {
        Format::Json => json_line(&json!({
            "seed": args.seed,
            "max_group_order": args.max_group_order,
            "status": if ok { "pass" } else { "fail" },
            "checks": reports,
        })),
        Format::Text => {
            let width = reports.iter().map(|r| r.check.len()).max().unwrap_or(0);
            let mut s = String::new();
            for r in &reports {
                s += &format!("{:<width$}  {}\n", r.check, r.status.as_str());
            }
            let failed = reports.iter().filter(|r| !r.status.is_ok()).count();
            s += &format!("{} checks, {} failed\n", reports.len(), failed);
            s
        }
    };
    Outcome::text(code_of(ok), body)
}
