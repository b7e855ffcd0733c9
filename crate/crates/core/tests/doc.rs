use proptest::prelude::*;
use serde_json::{json, Value};

use tricat_core::coherence::{lambda_tilde, psi_cell, Alphabet, Word};
use tricat_core::doc::Document;
use tricat_core::random::Sampler;
use tricat_core::{Error, FGAbelianGroup, GroupHom, IntegerMatrix};

fn round_trip(d: &Document) {
    let text = d.to_json();
    let back = Document::from_json(&text).unwrap();
    assert_eq!(&back, d);
    assert_eq!(back.to_json(), text);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn algebraic_documents_round_trip(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.complex3(2), s.complex3(2));
        round_trip(&Document::Complex3(a.clone()));
        round_trip(&Document::Group(a.g0().clone()));
        round_trip(&Document::ChainMap(s.chain_map(&a, &b).unwrap()));
        round_trip(&Document::Fraction(s.fraction(&a, &b).unwrap()));
        round_trip(&Document::Complex2(s.complex2(2)));
    }

    #[test]
    fn coherence_documents_round_trip(c in prop::collection::vec(-2i64..=2, 6)) {
        let al = Alphabet::parse("a,b,c").unwrap();
        let (x, y) = (Word::from_coefficients(&c[..3]), Word::from_coefficients(&c[3..]));
        round_trip(&Document::Word(al.clone(), x.clone()));
        round_trip(&Document::Path(al, lambda_tilde(&x, &y).unwrap()));
    }
}

#[test]
fn large_entries_survive() {
    let big = "123456789012345678901234567890".parse().unwrap();
    let g = FGAbelianGroup::new(1, IntegerMatrix::diagonal(&[big])).unwrap();
    let d = Document::Group(g);
    assert!(d.to_json().contains("123456789012345678901234567890"));
    round_trip(&d);
}

#[test]
fn witnesses_round_trip() {
    let al = Alphabet::parse("a,b,c").unwrap();
    let w = |s: &str| al.parse_word(s).unwrap();
    round_trip(&Document::Witness(al.clone(), psi_cell(&w("c"), &w("b"), &w("a")).unwrap()));
    round_trip(&Document::Report(json!({"ok": true})));
}

fn group_doc() -> Value {
    Document::Group(FGAbelianGroup::cyclic(6)).to_value()
}

#[test]
fn malformed_documents_are_rejected() {
    let is_invalid = |v: Value| matches!(Document::from_value(v), Err(Error::InvalidInput(_)));
    let mut v = group_doc();
    v["extra"] = json!(1);
    assert!(is_invalid(v));
    let mut v = group_doc();
    v["payload"]["extra"] = json!(1);
    assert!(is_invalid(v));
    let mut v = group_doc();
    v["schema_version"] = json!("2");
    assert!(is_invalid(v));
    let mut v = group_doc();
    v["kind"] = json!("monoid");
    assert!(is_invalid(v));
    let mut v = group_doc();
    v["payload"]["relations"] = json!([[6, 1]]);
    assert!(is_invalid(v));
    let mut v = group_doc();
    v["payload"]["relations"] = json!([[1.5]]);
    assert!(is_invalid(v));
    assert!(Document::from_json("{").is_err());
}

#[test]
fn ill_defined_maps_are_rejected() {
    // Z/2 -> Z/3 sending the generator to 1 is not a homomorphism
    let z2 = FGAbelianGroup::cyclic(2);
    let z3 = FGAbelianGroup::cyclic(3);
    let ok = GroupHom::zero(&z2, &z3);
    let mut v = Document::Hom(ok).to_value();
    v["payload"]["matrix"] = json!([[1]]);
    assert!(Document::from_value(v).is_err());
}

#[test]
fn kinds_are_listed_once() {
    let mut k = Document::KINDS.to_vec();
    k.sort();
    k.dedup();
    assert_eq!(k.len(), 15);
}
