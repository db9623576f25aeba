//! Sequential against rayon-backed execution on the all-pairs kernels.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use umbilic::foliation::random::{valid_routes, RandomRouteConfig};
use umbilic::foliation::{synthesize, verify_disjoint_with};
use umbilic::lemma_check::{lemma_check_with, Predicate};
use umbilic::route::validate_c0_with;
use umbilic::Exec;

const STRATEGIES: [Exec; 2] = [Exec::Sequential, Exec::Parallel];

fn large_route(samples: usize) -> umbilic::Route {
    let cfg = RandomRouteConfig {
        samples,
        ..RandomRouteConfig::default()
    };
    valid_routes(7, 1, &cfg).expect("generator").remove(0)
}

fn c0_validation(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate_c0");
    group.sample_size(10);
    for n in [500, 2000] {
        let route = large_route(n);
        for exec in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), n), &route, |b, r| {
                b.iter(|| validate_c0_with(black_box(r), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn disjointness_audit(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_disjoint");
    group.sample_size(10);
    let slice = synthesize(&large_route(800), true).unwrap();
    for exec in STRATEGIES {
        group.bench_function(format!("{exec:?}"), |b| {
            b.iter(|| verify_disjoint_with(black_box(&slice), exec))
        });
    }
    group.finish();
}

fn oracle_agreement(c: &mut Criterion) {
    let mut group = c.benchmark_group("lemma_check");
    group.sample_size(10);
    for exec in STRATEGIES {
        group.bench_function(format!("{exec:?}"), |b| {
            b.iter(|| lemma_check_with(Predicate::Hypercycle, 1, black_box(10_000), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, c0_validation, disjointness_audit, oracle_agreement);
criterion_main!(benches);
