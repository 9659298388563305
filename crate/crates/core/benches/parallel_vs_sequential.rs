//! Each workload runs once inside a one-thread rayon pool and once inside the
//! default pool. Building with `--no-default-features` gives the purely
//! sequential code path; compare against that run for the loop overhead.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPool;
use std::hint::black_box;
use tonelab::dense::{dense_params, t_tone_color_dense};
use tonelab::exact::{exact_tau, SearchBudget};
use tonelab::graph::truncated_distances;
use tonelab::random::{gnp, random_tree};
use tonelab::tree::color_forest_2tone;
use tonelab::verify;

fn pools() -> Vec<(&'static str, ThreadPool)> {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("1-thread", one), ("default", all)]
}

fn bench_verify(c: &mut Criterion) {
    let g = random_tree(20_000, 7);
    let coloring = color_forest_2tone(&g).unwrap();
    let mut group = c.benchmark_group("verify_tree_20k");
    for (label, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            pool.install(|| b.iter(|| verify(black_box(&g), black_box(&coloring)).unwrap()))
        });
    }
    group.finish();
}

fn bench_distances(c: &mut Criterion) {
    let g = gnp(2_000, 0.003, 11);
    let mut group = c.benchmark_group("truncated_distances_r3");
    for (label, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            pool.install(|| b.iter(|| truncated_distances(black_box(&g), 3)))
        });
    }
    group.finish();
}

fn bench_exact(c: &mut Criterion) {
    let g = gnp(10, 0.4, 3);
    let budget = SearchBudget {
        max_nodes: u64::MAX,
        deterministic: false,
    };
    let mut group = c.benchmark_group("exact_tau_n10_t2");
    group.sample_size(10);
    for (label, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            pool.install(|| b.iter(|| exact_tau(black_box(&g), 2, budget).unwrap()))
        });
    }
    group.finish();
}

fn bench_dense(c: &mut Criterion) {
    let g = gnp(300, 0.5, 5);
    let params = dense_params(g.n(), 0.5);
    let mut group = c.benchmark_group("dense_t2_n300");
    group.sample_size(10);
    for (label, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            pool.install(|| b.iter(|| t_tone_color_dense(black_box(&g), 2, &params, 1).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_verify, bench_distances, bench_exact, bench_dense);
criterion_main!(benches);
