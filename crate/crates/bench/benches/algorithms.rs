use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use frobskein_bench::{all_words, alternating};
use frobskein_core::frobenius::{g_power, FrobSystem};
use frobskein_core::gmatrix::{g2_power, g_matrix_operator, g_matrix_recursive};
use frobskein_core::skein2::{normalize_element, BruteForceOracle};

fn normalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize");
    for len in [4, 8, 12] {
        let e = alternating(len);
        group.bench_with_input(BenchmarkId::new("alternating", len), &e, |b, e| {
            b.iter(|| normalize_element(black_box(e)).unwrap())
        });
    }
    let sum = all_words(8);
    group.bench_function("all_words/8", |b| {
        b.iter(|| normalize_element(black_box(&sum)).unwrap())
    });
    group.finish();

    c.bench_function("oracle/build/4", |b| {
        b.iter(|| BruteForceOracle::new(black_box(4)).unwrap())
    });
}

fn gmatrix(c: &mut Criterion) {
    let mut group = c.benchmark_group("gmatrix");
    for n in [3, 5, 6] {
        group.bench_with_input(BenchmarkId::new("recursive", n), &n, |b, &n| {
            b.iter(|| g_matrix_recursive(n).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("operator", n), &n, |b, &n| {
            b.iter(|| g_matrix_operator(n).unwrap())
        });
    }
    group.finish();
}

fn powers(c: &mut Criterion) {
    c.bench_function("g2_power/6", |b| b.iter(|| g2_power(black_box(6)).unwrap()));
    let sys = FrobSystem::universal(4).unwrap();
    c.bench_function("g_power/n4/i4", |b| {
        b.iter(|| g_power(&sys, black_box(4)).unwrap())
    });
}

criterion_group!(benches, normalize, gmatrix, powers);
criterion_main!(benches);
