use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mckay_core::{macdonald_basis, transport, Basis, FixedPointWeights, OdotRing, Specialization};

fn macdonald(c: &mut Criterion) {
    let mut group = c.benchmark_group("macdonald_basis");
    group.sample_size(10);
    for n in 3..=5 {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| macdonald_basis(black_box(n), Specialization::default_for(n)).unwrap())
        });
    }
    group.finish();
}

fn tautological_transport(c: &mut Criterion) {
    let mut group = c.benchmark_group("transport");
    group.sample_size(10);
    for n in 3..=5 {
        let mb = macdonald_basis(n, Specialization::default_for(n)).unwrap();
        // Warm the cached Kostka inverse so only the sandwich is timed.
        mb.scaled_inverse().unwrap();
        let weights = FixedPointWeights::tautological(mb.spec());
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| transport(black_box(&weights), &mb).unwrap())
        });
    }
    group.finish();
}

fn product_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("odot_table");
    group.sample_size(10);
    for n in 3..=5 {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| OdotRing::new(black_box(n), None).unwrap().table(Basis::S))
        });
    }
    group.finish();
}

criterion_group!(benches, macdonald, tautological_transport, product_table);
criterion_main!(benches);
