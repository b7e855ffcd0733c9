use serde_json::{json, Value};
use tricat_core::butterflies::{
    build_roof_complex, butterfly_from_chain_map, compose_butterflies, is_flippable, make_butterfly,
    roof_setup_from_chain_map, RoofComplex,
};
use tricat_core::coherence::{
    lambda_path, lambda_tilde, phi_cell, phi_tilde, psi_cell, psi_tilde, Alphabet, PhiCell, Word,
};
use tricat_core::complexes::{
    cohomology, derived_hom, is_quasi_isomorphism, ses_to_les, ChainMap, ChainMap2, Complex2,
};
use tricat_core::doc::Document;
use tricat_core::fractions::{compose_fractions, fraction_class_in, fraction_hom, fractions_equivalent};
use tricat_core::group::{cokernel, kernel};
use tricat_core::smith_normal_form;

use crate::io::*;
use crate::{ButterflyCmd, CohCmd, Command, ComplexCmd, FracCmd, GroupCmd, SelftestCmd, Words};

/// A document and the exit code to report with it.
pub struct Output {
    pub doc: Document,
    pub code: u8,
}

impl From<Document> for Output {
    fn from(doc: Document) -> Self {
        Output { doc, code: 0 }
    }
}

fn verdict(command: &str, result: bool) -> Output {
    report(command, json!({ "result": result })).into()
}

pub fn run(cmd: Command) -> Outcome<Output> {
    match cmd {
        Command::Group(c) => group(c),
        Command::Complex(c) => complex(c),
        Command::Dhom { a, b } => {
            let (a, b) = (read_complex3(&a)?, read_complex3(&b)?);
            let dh = derived_hom(&a, &b)?;
            Ok(report("dhom", group_summary(dh.group())).into())
        }
        Command::Frac(c) => frac(c),
        Command::Butterfly(c) => butterfly(c),
        Command::Coh(c) => coh(c),
        Command::Selftest(SelftestCmd::Acceptance) => Ok(acceptance()),
    }
}

fn group(cmd: GroupCmd) -> Outcome<Output> {
    Ok(match cmd {
        GroupCmd::Snf(i) => {
            let g = read_group(&i.input)?;
            let s = smith_normal_form(g.relations());
            report(
                "group snf",
                json!({
                    "invariant_factors": s.invariant_factors().iter().map(number).collect::<Vec<_>>(),
                    "rank": s.rank,
                    "u": matrix(&s.u),
                    "d": matrix(&s.d),
                    "v": matrix(&s.v),
                    "invariants": invariants(&g.invariants()),
                }),
            )
            .into()
        }
        GroupCmd::Kernel(i) => Document::Hom(kernel(&read_hom(&i.input)?).1).into(),
        GroupCmd::Cokernel(i) => Document::Hom(cokernel(&read_hom(&i.input)?).1).into(),
    })
}

fn complex(cmd: ComplexCmd) -> Outcome<Output> {
    Ok(match cmd {
        ComplexCmd::Cohomology { input, degree } => {
            let c = read_complex3(&input.input)?;
            let h = cohomology(&c, degree)?;
            let mut body = group_summary(&h.group);
            body["degree"] = json!(degree);
            body["representatives"] = matrix(h.representatives());
            report("complex cohomology", body).into()
        }
        ComplexCmd::QuasiIso(i) => verdict("complex quasi-iso", is_quasi_isomorphism(&read_chain_map(&i.input)?)?),
        ComplexCmd::Les { incl, proj } => {
            let les = ses_to_les(&read_chain_map(&incl)?, &read_chain_map(&proj)?)?;
            let nodes: Vec<Value> = les
                .nodes
                .iter()
                .map(|n| json!({"label": n.label, "invariants": invariants(&n.group.invariants()), "exact": n.exact}))
                .collect();
            let maps: Vec<Value> = les.maps.iter().map(|m| matrix(m.matrix())).collect();
            report("complex les", json!({"exact": les.is_exact(), "nodes": nodes, "maps": maps})).into()
        }
    })
}

fn frac(cmd: FracCmd) -> Outcome<Output> {
    Ok(match cmd {
        FracCmd::Compose(p) => {
            Document::Fraction(compose_fractions(&read_fraction(&p.second)?, &read_fraction(&p.first)?)?).into()
        }
        FracCmd::Class(i) => {
            let f = read_fraction(&i.input)?;
            let dh = fraction_hom(&f)?;
            let c = fraction_class_in(&dh, &f)?;
            let mut body = group_summary(dh.group());
            body["coordinates"] = Value::Array(c.coordinates.coords().iter().map(number).collect());
            body["zero"] = json!(c == dh.zero_class());
            report("frac class", body).into()
        }
        FracCmd::Equiv(p) => {
            verdict("frac equiv", fractions_equivalent(&read_fraction(&p.first)?, &read_fraction(&p.second)?)?)
        }
        FracCmd::RoofCheck(i) => {
            let r = read_roof(&i.input)?;
            let same = fractions_equivalent(r.from_fraction(), r.to_fraction())?;
            report("frac roof-check", json!({"result": true, "classes_equal": same})).into()
        }
        FracCmd::DiamondCheck(i) => {
            let d = read_diamond(&i.input)?;
            let same = fractions_equivalent(d.from_roof().from_fraction(), d.to_roof().to_fraction())?;
            report("frac diamond-check", json!({"result": true, "classes_equal": same})).into()
        }
    })
}

/// A chain map between complexes with zero top terms, as a map of
/// length-2 complexes.
fn as_map2(f: &ChainMap) -> Outcome<ChainMap2> {
    let short = |c: &tricat_core::complexes::Complex3| -> Outcome<Complex2> {
        if !c.g2().is_trivial() || c.g2().ambient_rank() != 0 {
            return Err(Failure::Input("strictification needs complexes with zero degree -2 term".into()));
        }
        Ok(Complex2::new(c.d1().clone()))
    };
    let (a, b) = (short(f.source())?, short(f.target())?);
    Ok(ChainMap2::new(&a, &b, f.f1().clone(), f.f0().clone())?)
}

fn need<'a>(x: &'a Option<std::path::PathBuf>, flag: &str) -> Outcome<&'a std::path::PathBuf> {
    x.as_ref().ok_or_else(|| Failure::Input(format!("missing --{flag}")))
}

fn roof_report(rc: &RoofComplex) -> Outcome<Output> {
    let exact = rc.exact_sequence()?.is_exact();
    Ok(report(
        "butterfly roof-complex",
        json!({
            "q_is_quasi_iso": rc.q_is_quasi_iso,
            "sequence_exact": exact,
            "m": payload(Document::Complex3(rc.m.clone())),
            "q": payload(Document::ChainMap(rc.q.clone())),
            "p": payload(Document::ChainMap(rc.p.clone())),
        }),
    )
    .into())
}

fn butterfly(cmd: ButterflyCmd) -> Outcome<Output> {
    match cmd {
        ButterflyCmd::Make(m) => {
            let b = if let Some(path) = &m.strict {
                butterfly_from_chain_map(&as_map2(&read_chain_map(path)?)?)?
            } else {
                let (a, b) = (read_complex2(need(&m.source, "source")?)?, read_complex2(need(&m.target, "target")?)?);
                make_butterfly(
                    &a,
                    &b,
                    read_hom(need(&m.kappa, "kappa")?)?,
                    read_hom(need(&m.iota, "iota")?)?,
                    read_hom(need(&m.rho, "rho")?)?,
                    read_hom(need(&m.jmath, "jmath")?)?,
                )?
            };
            Ok(Document::Butterfly(b).into())
        }
        ButterflyCmd::Compose(p) => {
            let b = compose_butterflies(&read_butterfly(&p.second)?, &read_butterfly(&p.first)?)?;
            Ok(Document::Butterfly(b).into())
        }
        ButterflyCmd::Flippable(i) => Ok(verdict("butterfly flippable", is_flippable(&read_butterfly(&i.input)?)?)),
        ButterflyCmd::RoofComplex(r) => {
            let rc = if let Some(path) = &r.from_map {
                let f = read_chain_map(path)?;
                let (bf, ea, eb) = roof_setup_from_chain_map(&f)?;
                build_roof_complex(f.source(), f.target(), &bf, &ea, &eb)?
            } else {
                build_roof_complex(
                    &read_complex3(need(&r.a, "a")?)?,
                    &read_complex3(need(&r.b, "b")?)?,
                    &read_butterfly(need(&r.butterfly, "butterfly")?)?,
                    &read_hom(need(&r.to_a, "to-a")?)?,
                    &read_hom(need(&r.to_b, "to-b")?)?,
                )?
            };
            roof_report(&rc)
        }
    }
}

/// Letter names in order of first appearance.
fn letter_names(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in text.chars().chain(std::iter::once(' ')) {
        if c.is_alphanumeric() || c == '_' {
            if !(cur.is_empty() && c.is_ascii_digit()) {
                cur.push(c);
            }
        } else if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    out
}

fn words(w: &Words) -> Outcome<(Alphabet, Word, Word, Option<Word>)> {
    let al = match &w.alphabet {
        Some(list) => Alphabet::parse(list)?,
        None => {
            let mut names: Vec<String> = [Some(&w.w1), Some(&w.w2), w.w3.as_ref()]
                .into_iter()
                .flatten()
                .flat_map(|s| letter_names(s))
                .collect();
            names.sort();
            names.dedup();
            Alphabet::lexicographic(names)?
        }
    };
    let w3 = w.w3.as_deref().map(|s| al.parse_word(s)).transpose()?;
    Ok((al.clone(), al.parse_word(&w.w1)?, al.parse_word(&w.w2)?, w3))
}

fn third(w3: Option<Word>) -> Outcome<Word> {
    w3.ok_or_else(|| Failure::Input("this command needs --w3".into()))
}

fn phi_report(command: &str, al: Alphabet, c: PhiCell) -> Output {
    let residual: Vec<String> = c.residual.iter().map(|r| r.render(&al)).collect();
    let log: Vec<Value> = c
        .log
        .iter()
        .map(|s| {
            json!({
                "depth": s.depth,
                "position": s.position.to_string(),
                "sizes": [s.sizes.0, s.sizes.1],
                "replaced_by": [[s.replaced_by[0].0, s.replaced_by[0].1], [s.replaced_by[1].0, s.replaced_by[1].1]],
            })
        })
        .collect();
    let substituted = payload(Document::Path(al.clone(), c.substituted));
    report(
        command,
        json!({
            "residual": residual,
            "substitutions": log,
            "substituted": substituted,
            "witness": payload(Document::Witness(al, c.witness)),
        }),
    )
    .into()
}

fn coh(cmd: CohCmd) -> Outcome<Output> {
    Ok(match cmd {
        CohCmd::Lambda(w) => {
            let (al, a, b, _) = words(&w)?;
            Document::Path(al, lambda_path(&a, &b)?).into()
        }
        CohCmd::LambdaTilde(w) => {
            let (al, a, b, _) = words(&w)?;
            Document::Path(al, lambda_tilde(&a, &b)?).into()
        }
        CohCmd::Psi(w) => {
            let (al, a, b, c) = words(&w)?;
            Document::Witness(al, psi_cell(&a, &b, &third(c)?)?).into()
        }
        CohCmd::PsiTilde(w) => {
            let (al, a, b, c) = words(&w)?;
            Document::Witness(al, psi_tilde(&a, &b, &third(c)?)?).into()
        }
        CohCmd::Phi(w) => {
            let (al, a, b, _) = words(&w)?;
            phi_report("coh phi", al, phi_cell(&a, &b)?)
        }
        CohCmd::PhiTilde(w) => {
            let (al, a, b, _) = words(&w)?;
            phi_report("coh phi-tilde", al, phi_tilde(&a, &b)?)
        }
    })
}

fn acceptance() -> Output {
    let outcomes = tricat_acceptance::run_all();
    for o in &outcomes {
        eprintln!("{}", o.line());
    }
    let passed = outcomes.iter().all(|o| o.passed);
    let rows: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "id": o.id,
                "name": o.name,
                "passed": o.passed,
                "detail": o.detail,
                "seconds": (o.elapsed.as_secs_f64() * 1000.0).round() / 1000.0,
            })
        })
        .collect();
    Output {
        doc: report("selftest acceptance", json!({"passed": passed, "criteria": rows})),
        code: if passed { 0 } else { 3 },
    }
}
