use corrtest_bench::{laterality_pair, unbalanced_pair};
use corrtest_core::{fisher_z_test, gv_test, mslr_test, BootstrapSettings, GvSettings};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn monte_carlo_tests(c: &mut Criterion) {
    let mut group = c.benchmark_group("tests");
    group.sample_size(20);
    for (name, (g1, g2)) in [
        ("laterality", laterality_pair()),
        ("unbalanced", unbalanced_pair()),
    ] {
        let boot = BootstrapSettings::new(10_000, 1).unwrap();
        group.bench_function(format!("mslr_m10000/{name}"), |b| {
            b.iter(|| mslr_test(black_box(&g1), black_box(&g2), &boot).unwrap())
        });
        let gv = GvSettings::new(10_000, 1).unwrap();
        group.bench_function(format!("gv_10000/{name}"), |b| {
            b.iter(|| gv_test(black_box(&g1), black_box(&g2), &gv).unwrap())
        });
        group.bench_function(format!("fisher_z/{name}"), |b| {
            b.iter(|| fisher_z_test(black_box(&g1), black_box(&g2)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, monte_carlo_tests);
criterion_main!(benches);
