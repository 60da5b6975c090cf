use corrtest_bench::{laterality_pair, unbalanced_pair};
use corrtest_core::{donner_rosner_rf, pearson_common_rho, sample_r_given_rho, RngStream};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn common_rho(c: &mut Criterion) {
    for (name, (g1, g2)) in [
        ("laterality", laterality_pair()),
        ("unbalanced", unbalanced_pair()),
    ] {
        c.bench_function(&format!("pearson_common_rho/{name}"), |b| {
            b.iter(|| pearson_common_rho(black_box(&g1), black_box(&g2)).unwrap())
        });
        c.bench_function(&format!("donner_rosner_rf/{name}"), |b| {
            b.iter(|| donner_rosner_rf(black_box(&g1), black_box(&g2)).unwrap())
        });
    }
}

fn correlation_draws(c: &mut Criterion) {
    let mut stream = RngStream::new(7, 0);
    for n in [5, 25] {
        c.bench_function(&format!("sample_r_given_rho/n{n}"), |b| {
            b.iter(|| sample_r_given_rho(black_box(n), black_box(0.6), &mut stream).unwrap())
        });
    }
}

criterion_group!(benches, common_rho, correlation_draws);
criterion_main!(benches);
