use std::fmt::Write as _;

use kummono::dedekind::{dedekind_index_q, relative_monogenic, SplittingShape};
use kummono::monogenic::{
    cyclo_residue_degree, kummer_edd_over_q, kummer_prime_monogenic, kummer_residue_degree, radical_monogenic,
    radical_splitting, relative_cyclotomic_monogenic,
};
use kummono::numfield::{cyclotomic_field, is_irreducible_radical, nf_make, rel_discriminant, split_prime, FieldKind};
use kummono::zxpoly::{discriminant, is_irreducible_q};
use kummono::{EddReport, Error, FieldElem, NumberField, Verdict, Witness};
use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};

use crate::expr::{parse_element, parse_int_poly, parse_rel_poly};
use crate::report::{Failure, Outcome};
use crate::{Command, FieldSpec, GlobalOpts, OptFieldSpec};

pub type CmdResult = Result<Outcome, Failure>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload serializes")
}

pub fn build_field(spec: &FieldSpec, g: &GlobalOpts) -> Result<NumberField, Failure> {
    build_opt_field(&OptFieldSpec { cyclotomic: spec.cyclotomic, field: spec.field.clone() }, g)?
        .ok_or_else(|| Failure::Usage("one of --cyclotomic or --field is required".into()))
}

fn build_opt_field(spec: &OptFieldSpec, g: &GlobalOpts) -> Result<Option<NumberField>, Failure> {
    let opts = g.field_options();
    match (&spec.cyclotomic, &spec.field) {
        (Some(n), None) => Ok(Some(cyclotomic_field(*n, &opts)?)),
        (None, Some(s)) => {
            let poly = parse_int_poly(s).map_err(|e| Failure::Usage(format!("--field: {e}")))?;
            Ok(Some(nf_make(&poly, &opts)?))
        }
        (None, None) => Ok(None),
        (Some(_), Some(_)) => Err(Failure::Usage("--cyclotomic and --field are mutually exclusive".into())),
    }
}

fn element(field: &NumberField, s: &str) -> Result<FieldElem, Failure> {
    parse_element(field, s).map_err(|e| Failure::Usage(format!("--alpha: {e}")))
}

pub fn run(cmd: &Command, g: &GlobalOpts) -> CmdResult {
    match cmd {
        Command::CheckRadical { field, n, alpha } => {
            let field = build_field(field, g)?;
            let alpha = element(&field, alpha)?;
            let v = radical_monogenic(&field, *n, &alpha, g.assume_irreducible)?;
            Ok(verdict_outcome(&v))
        }
        Command::CheckKummerPrime { p, alpha } => {
            let field = cyclotomic_field(*p, &g.field_options())?;
            let alpha = element(&field, alpha)?;
            let v = if g.assume_irreducible {
                radical_monogenic(&field, *p, &alpha, true)?
            } else {
                kummer_prime_monogenic(*p, &alpha)?
            };
            Ok(verdict_outcome(&v))
        }
        Command::Edd { n, alpha, l } => {
            let field = cyclotomic_field(*n, &g.field_options())?;
            let alpha = element(&field, alpha)?;
            let r = kummer_edd_over_q(*n, &alpha, *l, g.assume_irreducible)?;
            Ok(Outcome::new(to_value(&r), render_edd(&r)))
        }
        Command::Split { field, p, n, alpha } => {
            let field = build_field(field, g)?;
            cmd_split(&field, *p, n.zip(alpha.as_deref()), g.assume_irreducible)
        }
        Command::CycloRelative { field, n } => {
            let field = build_field(field, g)?;
            let v = relative_cyclotomic_monogenic(&field, *n)?;
            Ok(verdict_outcome(&v))
        }
        Command::Disc { field, poly, monogenic } => {
            let field = build_opt_field(field, g)?;
            cmd_disc(field.as_ref(), poly.as_deref(), *monogenic, g)
        }
        Command::Search(args) => crate::search::run(args, g),
    }
}

pub fn witness_line(w: &Witness) -> String {
    match w {
        Witness::SquareFullAt { prime, valuation } => format!("SquareFullAt {}: valuation {valuation}", prime.display),
        Witness::WieferichHoldsAt(r) | Witness::WieferichFailsAt(r) => format!(
            "{} {}: e={} m={} epsilon={} exponent={} beta={} holds={}",
            w.kind(),
            r.prime.display,
            r.e,
            r.m,
            r.epsilon,
            r.exponent_total,
            r.beta,
            r.holds
        ),
        Witness::LocalFailure { prime, offender } => {
            format!("LocalFailure {}: repeated factor {offender}", prime.display)
        }
        Witness::EddAt { l } => format!("EddAt {l}"),
        Witness::RamifiedAt { prime } => format!("RamifiedAt {} (e={})", prime.display, prime.e),
        Witness::InertWitness { prime } => format!("InertWitness {} (norm {})", prime.display, prime.norm()),
    }
}

fn verdict_outcome(v: &Verdict) -> Outcome {
    let mut h = String::new();
    writeln!(h, "field: {}", v.field).unwrap();
    writeln!(h, "n: {}", v.n).unwrap();
    if let Some(a) = &v.alpha {
        writeln!(h, "alpha: {a}").unwrap();
    }
    writeln!(h, "verdict: {}", v.status.as_str()).unwrap();
    if v.irreducibility_assumed {
        writeln!(h, "criterion (if irreducible): {}", if v.monogenic_if_hypotheses_hold { "yes" } else { "no" })
            .unwrap();
    }
    if !v.witnesses.is_empty() {
        writeln!(h, "witnesses:").unwrap();
        for w in &v.witnesses {
            writeln!(h, "  {}", witness_line(w)).unwrap();
        }
    }
    Outcome::new(to_value(v), h)
}

fn render_edd(r: &EddReport) -> String {
    let mut h = String::new();
    writeln!(h, "n: {}  alpha: {}  l: {}", r.n, r.alpha, r.l).unwrap();
    writeln!(h, "order of l mod n (k): {}", r.k).unwrap();
    writeln!(
        h,
        "irreducibles of degree k over F_l: {}  vs  n*phi(n)/k = {}  ({})",
        r.irreducible_count,
        r.degree_budget,
        if r.counting_holds { "fewer" } else { "not fewer" }
    )
    .unwrap();
    for res in &r.residues {
        writeln!(h, "  {}: n-th power residue: {}", res.prime.display, if res.nth_power { "yes" } else { "no" })
            .unwrap();
    }
    match &r.power_residue_witness {
        Some(p) => writeln!(h, "power residue witness: {}", p.display).unwrap(),
        None => writeln!(h, "power residue witness: none (hypotheses unmet)").unwrap(),
    }
    writeln!(h, "is_edd: {}", r.is_edd).unwrap();
    writeln!(h, "hensel count on splitting shape: {}", r.hensel_confirms).unwrap();
    h
}

fn shape_text(s: &SplittingShape) -> String {
    s.parts.iter().map(|(e, f)| format!("({e},{f})")).collect::<Vec<_>>().join(" ")
}

fn cmd_split(field: &NumberField, p: u64, radical: Option<(u64, &str)>, assume_irreducible: bool) -> CmdResult {
    let primes = split_prime(field, p)?;
    let mut h = String::new();
    writeln!(h, "field: {}", field.describe()).unwrap();
    writeln!(h, "p: {p}").unwrap();
    writeln!(h, "primes above p: {}", primes.len()).unwrap();
    for q in &primes {
        writeln!(h, "  {}  e={} f={}", q.display(), q.e(), q.f()).unwrap();
    }
    let labels: Vec<_> = primes.iter().map(|q| q.label()).collect();
    let mut payload = json!({ "field": field.describe(), "p": p, "primes": to_value(&labels) });
    if let FieldKind::Cyclotomic(m) = field.kind() {
        if m % p != 0 {
            let f = cyclo_residue_degree(p, m)?;
            writeln!(h, "residue degree predicted by the order of p mod {m}: {f}").unwrap();
            payload["predicted_residue_degree"] = json!(f);
        }
    }
    if let Some((n, alpha_src)) = radical {
        let alpha = element(field, alpha_src)?;
        if !assume_irreducible && !is_irreducible_radical(&alpha, n)? {
            return Err(Error::ReducibleRadical { n }.into());
        }
        writeln!(h, "splitting in L(alpha^(1/{n})), alpha = {}:", alpha.display()).unwrap();
        let mut shapes = Vec::new();
        let mut complete = true;
        for q in &primes {
            let s = radical_splitting(field, n, &alpha, q)?;
            complete &= q.e() == 1 && q.f() == 1 && s.parts.len() as u64 == n && s.parts.iter().all(|&pf| pf == (1, 1));
            let kdeg = match (field.kind(), n % p == 0 || q.valuation(&alpha)? > 0) {
                (FieldKind::Cyclotomic(m), false) if m == n => Some(kummer_residue_degree(q, &alpha, n)?),
                _ => None,
            };
            write!(h, "  over {}: {}", q.display(), shape_text(&s)).unwrap();
            if let Some(k) = kdeg {
                write!(h, "  (residue degree {k})").unwrap();
            }
            writeln!(h).unwrap();
            shapes.push(json!({ "shape": to_value(&s), "kummer_residue_degree": kdeg }));
        }
        writeln!(h, "p splits completely: {}", if complete { "yes" } else { "no" }).unwrap();
        payload["n"] = json!(n);
        payload["alpha"] = json!(alpha.display());
        payload["radical"] = Value::Array(shapes);
        payload["splits_completely"] = json!(complete);
    }
    Ok(Outcome::new(payload, h))
}

fn cmd_disc(field: Option<&NumberField>, poly: Option<&str>, monogenic: bool, g: &GlobalOpts) -> CmdResult {
    let mut h = String::new();
    match (field, poly) {
        (None, None) => Err(Failure::Usage("give --poly, a base field, or both".into())),
        (Some(field), None) => {
            writeln!(h, "field: {}", field.describe()).unwrap();
            writeln!(h, "defining polynomial discriminant: {}", field.poly_disc()).unwrap();
            writeln!(h, "field discriminant: {}", field.disc()).unwrap();
            let payload = json!({
                "field": field.describe(),
                "poly_disc": field.poly_disc().to_string(),
                "field_disc": field.disc().to_string(),
            });
            Ok(Outcome::new(payload, h))
        }
        (None, Some(src)) => {
            let f = parse_int_poly(src).map_err(|e| Failure::Usage(format!("--poly: {e}")))?;
            let d = discriminant(&f)?;
            writeln!(h, "poly: {f}").unwrap();
            writeln!(h, "discriminant: {d}").unwrap();
            let mut payload = json!({ "poly": f.to_string(), "discriminant": d.to_string() });
            if monogenic {
                if !g.assume_irreducible && !is_irreducible_q(&f)? {
                    return Err(Error::NotIrreducible.into());
                }
                let fac = kummono::intkit::factor_int(&d.abs(), &g.field_options().factor_budget)?;
                let mut locals = Vec::new();
                for (p, e) in fac.primes_u64()? {
                    if e >= 2 {
                        let v = dedekind_index_q(&f, p)?;
                        writeln!(h, "  index criterion at {p}: {}", if v.maximal_here { "pass" } else { "fail" })
                            .unwrap();
                        locals.push(json!({ "p": p, "maximal_here": v.maximal_here }));
                    }
                }
                let mono = locals.iter().all(|v| v["maximal_here"] == json!(true));
                writeln!(h, "Z[x]/(f) is the maximal order: {}", if mono { "yes" } else { "no" }).unwrap();
                payload["locals"] = Value::Array(locals);
                payload["maximal"] = json!(mono);
            }
            Ok(Outcome::new(payload, h))
        }
        (Some(field), Some(src)) => {
            let f = parse_rel_poly(field, src).map_err(|e| Failure::Usage(format!("--poly: {e}")))?;
            let d = rel_discriminant(&f)?;
            writeln!(h, "field: {}", field.describe()).unwrap();
            writeln!(h, "poly: {}", f.display()).unwrap();
            writeln!(h, "discriminant: {}", d.display()).unwrap();
            writeln!(h, "norm of discriminant: {}", d.norm()).unwrap();
            let mut payload = json!({
                "field": field.describe(),
                "poly": f.display(),
                "discriminant": d.display(),
                "discriminant_norm": d.norm().to_string(),
            });
            if monogenic {
                check_rel_irreducible(&f, g)?;
                let v = relative_monogenic(field, &f)?;
                let mut locals = Vec::new();
                for l in &v.locals {
                    let label = l.prime.label();
                    writeln!(
                        h,
                        "  index criterion at {}: {}",
                        label.display,
                        if l.maximal_here { "pass" } else { "fail" }
                    )
                    .unwrap();
                    let offender = l.offender.map(|i| l.factors[i].0.display());
                    locals.push(
                        json!({ "prime": to_value(&label), "maximal_here": l.maximal_here, "offender": offender }),
                    );
                }
                let status = match (v.monogenic, g.assume_irreducible) {
                    (_, true) => "conditional",
                    (true, false) => "yes",
                    (false, false) => "no",
                };
                writeln!(h, "monogenic over the base: {status}").unwrap();
                payload["locals"] = Value::Array(locals);
                payload["monogenic"] = json!(v.monogenic);
                payload["status"] = json!(status);
            }
            Ok(Outcome::new(payload, h))
        }
    }
}

/// Irreducibility over the base is only decided for binomials; anything else needs `--assume-irreducible`.
fn check_rel_irreducible(f: &kummono::RelPoly, g: &GlobalOpts) -> Result<(), Failure> {
    if g.assume_irreducible {
        return Ok(());
    }
    let n = f.degree().unwrap_or(0);
    let binomial = f.is_monic() && n >= 2 && (1..n).all(|i| f.coeff(i).is_zero());
    if binomial && !f.coeff(0).is_zero() {
        let alpha = -f.coeff(0);
        if !is_irreducible_radical(&alpha, n as u64)? {
            return Err(Error::ReducibleRadical { n: n as u64 }.into());
        }
        return Ok(());
    }
    if n == 1 {
        return Ok(());
    }
    Err(Error::HypothesisFails(
        "irreducibility over the base is only checked for x^n - alpha; pass --assume-irreducible".into(),
    )
    .into())
}
