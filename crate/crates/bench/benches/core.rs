use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tricat_core::coherence::{lambda_path, psi_cell, Alphabet};
use tricat_core::complexes::{cohomology, derived_hom};
use tricat_core::{smith_normal_form, Sampler};

fn snf(c: &mut Criterion) {
    let mut s = Sampler::new(1);
    let m = s.matrix(8, 8, 20);
    c.bench_function("snf 8x8", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn homology(c: &mut Criterion) {
    let mut s = Sampler::new(2);
    let cx = s.complex3(4);
    c.bench_function("cohomology H^-1", |b| b.iter(|| cohomology(black_box(&cx), -1).unwrap()));
    let (a, bb) = (s.finite_complex3(2, 12), s.finite_complex3(2, 12));
    c.bench_function("derived hom", |b| b.iter(|| derived_hom(black_box(&a), black_box(&bb)).unwrap()));
}

fn coherence(c: &mut Criterion) {
    let al = Alphabet::lexicographic(["a", "b", "c", "d"].map(String::from).to_vec()).unwrap();
    let w = |t: &str| al.parse_word(t).unwrap();
    let (x, y, z) = (w("d+c+b"), w("c+a"), w("b"));
    let u = w("c+a");
    c.bench_function("lambda 5 letters", |b| b.iter(|| lambda_path(black_box(&x), black_box(&y)).unwrap()));
    c.bench_function("psi tiling", |b| b.iter(|| psi_cell(&u, &y, &z).unwrap()));
}

criterion_group!(benches, snf, homology, coherence);
criterion_main!(benches);
