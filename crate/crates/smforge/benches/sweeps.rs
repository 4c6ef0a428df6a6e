// SPDX-License-Identifier: Apache-2.0
//! Parallel against sequential sweeps over discriminants.
//!
//! `par::map` falls back to the sequential path when the crate is built
//! without the `parallel` feature, so run with default features to compare
//! the two backends.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use smforge::elimination::{small_disc_linear, small_linear_discriminants};
use smforge::forms::Discriminant;
use smforge::modular::dominance_check;
use smforge::par;

fn dominance_sweep(c: &mut Criterion) {
    let discs: Vec<Discriminant> = (1000..1400)
        .filter_map(|n: i64| Discriminant::new(-n).ok())
        .collect();
    let mut group = c.benchmark_group("dominance_1000_1400");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("par", par::is_parallel()), |b| {
        b.iter(|| par::map(&discs, |&d| dominance_check(d, 128).map(|r| r.holds)))
    });
    group.bench_function("seq", |b| {
        b.iter(|| par::map_seq(&discs, |&d| dominance_check(d, 128).map(|r| r.holds)))
    });
    group.finish();
}

fn linear_sweep(c: &mut Criterion) {
    let discs: Vec<i64> = small_linear_discriminants().into_iter().take(16).collect();
    let mut group = c.benchmark_group("linear_small_16");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("par", par::is_parallel()), |b| {
        b.iter(|| par::map(&discs, |&d| small_disc_linear(d, 256).map(|r| r.outcome)))
    });
    group.bench_function("seq", |b| {
        b.iter(|| par::map_seq(&discs, |&d| small_disc_linear(d, 256).map(|r| r.outcome)))
    });
    group.finish();
}

criterion_group!(benches, dominance_sweep, linear_sweep);
criterion_main!(benches);
