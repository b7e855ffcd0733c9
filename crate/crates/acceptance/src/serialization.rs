use num_bigint::BigInt;
use serde_json::json;
use tricat_core::butterflies::butterfly_from_chain_map;
use tricat_core::coherence::{lambda_tilde, phi_cell, psi_cell, Alphabet};
use tricat_core::complexes::hom_complex_truncated;
use tricat_core::doc::Document;
use tricat_core::random::Sampler;

use crate::algebra::{sample_diamond, strict_map2};
use crate::{ensure, Context};

type Check = Result<String, String>;

fn coords(s: &mut Sampler, n: usize) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::from(s.range(-2, 2))).collect()
}

/// One document of every kind, drawn from `s`.
fn samples(s: &mut Sampler) -> Result<Vec<Document>, String> {
    let mut out = Vec::new();
    let (a, b) = (s.complex3(2), s.complex3(2));
    out.push(Document::Group(a.g1().clone()));
    out.push(Document::Hom(a.d1().clone()));
    out.push(Document::Complex3(a.clone()));
    let f = s.chain_map(&a, &b).ctx("chain map")?;
    out.push(Document::ChainMap(f.clone()));

    let th = hom_complex_truncated(&a, &b).ctx("hom complex")?;
    let x = coords(s, th.complex.g1().ambient_rank());
    let h = th.decode_homotopy(&f, &x).ctx("homotopy")?;
    let y = coords(s, th.complex.g2().ambient_rank());
    let dy = th.complex.d2().apply_vec(&y);
    let x2: Vec<BigInt> = x.iter().zip(&dy).map(|(p, q)| p - q).collect();
    let h2 = th.decode_homotopy(&f, &x2).ctx("homotopy")?;
    let v = th.find_second_homotopy(&h, &h2).ctx("second homotopy")?.ok_or("no second homotopy")?;
    out.push(Document::Homotopy(h));
    out.push(Document::SecondHomotopy(v));

    let fr = s.fraction(&a, &b).ctx("fraction")?;
    let d = sample_diamond(s, &fr)?;
    out.push(Document::Fraction(fr));
    out.push(Document::Roof(d.from_roof().clone()));
    out.push(Document::Diamond(d));

    let (c2, e2) = (s.complex2(2), s.complex2(2));
    let g = strict_map2(s, &c2, &e2)?;
    out.push(Document::Complex2(c2));
    out.push(Document::Butterfly(butterfly_from_chain_map(&g).ctx("butterfly")?));

    let al = Alphabet::parse("a,b,c").ctx("alphabet")?;
    let coeff = |s: &mut Sampler| [(); 3].map(|_| s.range(-2, 2));
    let w1 = tricat_core::coherence::Word::from_coefficients(&coeff(s));
    let w2 = tricat_core::coherence::Word::from_coefficients(&coeff(s));
    out.push(Document::Word(al.clone(), w1.clone()));
    out.push(Document::Path(al.clone(), lambda_tilde(&w1, &w2).ctx("lambda")?));
    let p = al.parse_word("c").ctx("word")?;
    let q = al.parse_word("b").ctx("word")?;
    let r = al.parse_word("a").ctx("word")?;
    let witness = if s.chance(0.5) {
        psi_cell(&p, &q, &r).ctx("psi")?
    } else {
        phi_cell(&al.parse_word("a+b").ctx("word")?, &al.parse_word("c").ctx("word")?).ctx("phi")?.witness
    };
    out.push(Document::Witness(al, witness));
    out.push(Document::Report(json!({"criterion": 11, "values": [1, -2, "123456789012345678901234567890"]})));
    Ok(out)
}

pub fn round_trips() -> Check {
    let mut s = Sampler::new(0x11);
    let mut n = 0;
    for round in 0..20 {
        let docs = samples(&mut s)?;
        let kinds: Vec<&str> = docs.iter().map(Document::kind).collect();
        let mut sorted = kinds.clone();
        sorted.sort();
        let mut all = Document::KINDS.to_vec();
        all.sort();
        ensure!(sorted == all, "round {round}: kinds {kinds:?}");
        for d in docs {
            let text = d.to_json();
            ensure!(text == d.to_json(), "{}: output is not stable", d.kind());
            let back = Document::from_json(&text).ctx(d.kind())?;
            ensure!(back == d, "{}: decoded document differs", d.kind());
            ensure!(back.to_json() == text, "{}: re-encoding changes bytes", d.kind());
            n += 1;
        }
    }
    Ok(format!("{n} documents over {} kinds", Document::KINDS.len()))
}
