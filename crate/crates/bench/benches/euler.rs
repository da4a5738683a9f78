use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use czeta_core::graph::Graph;
use czeta_core::{cycle_limit_closed_form, primes_up_to, riemann_zeta_inverse, zeta_h_inverse};

fn bench_euler(c: &mut Criterion) {
    c.bench_function("sieve primes to 1e6", |b| {
        b.iter(|| primes_up_to(black_box(1_000_000), 100_000_000).unwrap())
    });

    let cycle4 = Graph::family("cycle:4").unwrap();
    c.bench_function("zeta_h cycle:4 s=2 tail 1e-10", |b| {
        b.iter(|| zeta_h_inverse(black_box(&cycle4), 2.0, 1e-10).unwrap())
    });

    c.bench_function("riemann inverse s=2 tail 1e-10", |b| {
        b.iter(|| riemann_zeta_inverse(black_box(2.0), 1e-10).unwrap())
    });

    c.bench_function("cycle closed form k=5 s=2", |b| {
        b.iter(|| cycle_limit_closed_form(black_box(5), 2.0, 1e-10).unwrap())
    });
}

criterion_group!(benches, bench_euler);
criterion_main!(benches);
