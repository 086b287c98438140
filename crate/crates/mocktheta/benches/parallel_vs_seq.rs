use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mocktheta::arith::HurwitzTable;
use mocktheta::relations::{verify_thm11_with, verify_thm47b_with};
use mocktheta::forms::{expand_f, expand_omega};

fn bench_hurwitz_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("hurwitz-table");
    for len in [2_000usize, 8_000] {
        group.bench_with_input(BenchmarkId::new("parallel", len), &len, |b, &len| {
            b.iter(|| HurwitzTable::build(len).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", len), &len, |b, &len| {
            b.iter(|| HurwitzTable::build_sequential(len).unwrap())
        });
    }
    group.finish();
}

fn bench_f_recursion_sweep(c: &mut Criterion) {
    let max_n = 300i64;
    let f = expand_f(max_n + 1);
    let mut group = c.benchmark_group("f-recursion-sweep");
    group.bench_function("parallel", |b| {
        b.iter(|| verify_thm11_with(&f, max_n, true).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| verify_thm11_with(&f, max_n, false).unwrap())
    });
    group.finish();
}

fn bench_omega_recursion_sweep(c: &mut Criterion) {
    let max_n = 150i64;
    let w = expand_omega(2 * max_n + 1);
    let mut group = c.benchmark_group("omega-recursion-sweep");
    group.bench_function("parallel", |b| {
        b.iter(|| verify_thm47b_with(&w, max_n, true).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| verify_thm47b_with(&w, max_n, false).unwrap())
    });
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_hurwitz_table, bench_f_recursion_sweep, bench_omega_recursion_sweep
}
criterion_main!(benches);
