use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tricat_core::{ChainMap, Complex2, Complex3, Document, FGAbelianGroup, GroupHom, IntegerMatrix, Sampler};

fn tricat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tricat")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(name: &str, doc: &Document) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, doc.to_json()).unwrap();
    path.to_string_lossy().into_owned()
}

fn hom(src: &FGAbelianGroup, tgt: &FGAbelianGroup, rows: &[&[i64]]) -> GroupHom {
    GroupHom::new(src.clone(), tgt.clone(), IntegerMatrix::from_i64(src.ambient_rank(), rows)).unwrap()
}

#[test]
fn lambda_of_two_letters_is_one_swap() {
    let out = tricat(&["coh", "lambda", "--w1", "b", "--w2", "a", "--alphabet", "a,b"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["kind"], "path");
    let moves = v["payload"]["moves"].as_array().unwrap();
    assert_eq!(moves.len(), 1);
    assert_eq!(moves[0]["kind"], "swap_adjacent");
}

#[test]
fn lambda_rejects_negative_letters() {
    let out = tricat(&["coh", "lambda", "--w1", "-a", "--w2", "b"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn psi_needs_a_third_word() {
    let out = tricat(&["coh", "psi", "--w1", "a", "--w2", "b"]);
    assert_eq!(code(&out), 1);
    let out = tricat(&["coh", "psi", "--w1", "a", "--w2", "b", "--w3", "c"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["kind"], "witness");
}

#[test]
fn phi_reports_residual_braidings() {
    let out = tricat(&["coh", "phi", "--w1", "a+b", "--w2", "c", "--lex"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["payload"]["residual"].as_array().unwrap().len(), 2);
}

#[test]
fn identity_is_a_quasi_isomorphism() {
    let mut s = Sampler::new(7);
    let c = s.complex3(2);
    let path = write("identity.json", &Document::ChainMap(ChainMap::identity(&c)));
    let out = tricat(&["complex", "quasi-iso", "-i", &path]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["payload"]["result"], true);
}

#[test]
fn snf_of_a_finite_group() {
    let path = write("z6z4.json", &Document::Group(FGAbelianGroup::from_orders(&[6, 4])));
    let out = tricat(&["group", "snf", "-i", &path]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["payload"]["invariant_factors"], serde_json::json!([2, 12]));
}

#[test]
fn documents_can_come_from_stdin() {
    let doc = Document::Group(FGAbelianGroup::cyclic(5)).to_json();
    let mut child = Command::new(env!("CARGO_BIN_EXE_tricat"))
        .args(["group", "snf", "-i", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(doc.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn cohomology_of_a_shifted_group() {
    let c = Complex3::in_degree(FGAbelianGroup::cyclic(3), -1).unwrap();
    let path = write("shifted.json", &Document::Complex3(c));
    let out = tricat(&["complex", "cohomology", "-i", &path, "--degree", "-1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["payload"]["invariants"]["torsion"], serde_json::json!([3]));
    let out = tricat(&["complex", "cohomology", "-i", &path, "--degree", "0"]);
    assert_eq!(stdout_json(&out)["payload"]["invariants"]["torsion"], serde_json::json!([]));
    let out = tricat(&["complex", "cohomology", "-i", &path, "--degree", "1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn non_injective_iota_is_a_domain_violation() {
    let (zero, z) = (FGAbelianGroup::zero(), FGAbelianGroup::free(1));
    let a = Complex2::new(GroupHom::zero(&zero, &z));
    let b = Complex2::new(GroupHom::zero(&z, &zero));
    let files = [
        ("source", write("bf_source.json", &Document::Complex2(a))),
        ("target", write("bf_target.json", &Document::Complex2(b))),
        ("kappa", write("bf_kappa.json", &Document::Hom(GroupHom::zero(&zero, &z)))),
        ("iota", write("bf_iota.json", &Document::Hom(hom(&z, &z, &[&[0]])))),
        ("rho", write("bf_rho.json", &Document::Hom(GroupHom::identity(&z)))),
        ("jmath", write("bf_jmath.json", &Document::Hom(GroupHom::zero(&z, &zero)))),
    ];
    let mut args = vec!["butterfly".to_string(), "make".to_string()];
    for (flag, path) in &files {
        args.push(format!("--{flag}"));
        args.push(path.clone());
    }
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = tricat(&args);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("iota injective"));
}

#[test]
fn strict_butterflies_of_identities_are_flippable() {
    let z = FGAbelianGroup::free(1);
    let c = Complex3::new(GroupHom::zero(&FGAbelianGroup::zero(), &z), hom(&z, &z, &[&[2]])).unwrap();
    let map = write("strict.json", &Document::ChainMap(ChainMap::identity(&c)));
    let out = tricat(&["butterfly", "make", "--strict", &map]);
    assert_eq!(code(&out), 0);
    let bf: Value = stdout_json(&out);
    assert_eq!(bf["kind"], "butterfly");
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("strict_bf.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let out = tricat(&["butterfly", "flippable", "-i", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["payload"]["result"], true);
}

#[test]
fn malformed_input_exits_with_one() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("broken.json");
    std::fs::write(&path, "{").unwrap();
    let out = tricat(&["group", "snf", "-i", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(out.stdout.is_empty());
}

#[test]
fn wrong_document_kind_exits_with_one() {
    let path = write("a_group.json", &Document::Group(FGAbelianGroup::free(2)));
    let out = tricat(&["complex", "quasi-iso", "-i", &path]);
    assert_eq!(code(&out), 1);
}

#[test]
fn unknown_subcommands_exit_with_one() {
    assert_eq!(code(&tricat(&["frobnicate"])), 1);
    assert_eq!(code(&tricat(&["--help"])), 0);
}
