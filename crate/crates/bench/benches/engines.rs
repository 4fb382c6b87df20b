use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

use slidewin_bench::{language, stream};
use slidewin_core::engines::{
    ConstantSpaceEngine, ExplicitEngine, FixedPathSummaryEngine, SlidingEngine,
};
use slidewin_core::randomized::{RandomSource, SuffixFreeEngine};
use slidewin_core::testers::{DeterministicTester, TwoSidedTester};

fn bench_membership_engines(c: &mut Criterion) {
    let n = 1024usize;
    let data = stream(4 * n);
    let mut group = c.benchmark_group("membership_push");
    group.throughput(Throughput::Elements(data.len() as u64));

    let contains_a = language("(a|b)*a(a|b)*");
    group.bench_function(BenchmarkId::new("explicit", n), |b| {
        b.iter(|| {
            let mut e = ExplicitEngine::new(&contains_a, n);
            for &s in &data {
                e.push(s);
                black_box(e.query());
            }
        })
    });
    group.bench_function(BenchmarkId::new("path_summary", n), |b| {
        b.iter(|| {
            let mut e = FixedPathSummaryEngine::new(&contains_a, n).expect("well-behaved");
            for &s in &data {
                e.push(s);
                black_box(e.query());
            }
        })
    });

    let ends_a = language("(a|b)*a");
    group.bench_function(BenchmarkId::new("constant", n), |b| {
        b.iter(|| {
            let mut e = ConstantSpaceEngine::new(&ends_a, n).expect("constant class");
            for &s in &data {
                e.push(s);
                black_box(e.query());
            }
        })
    });

    let suffix_free = language("ab*");
    group.bench_function(BenchmarkId::new("suffix_free", n), |b| {
        b.iter(|| {
            let mut e =
                SuffixFreeEngine::new(&suffix_free, n as u64, RandomSource::from_seed(1))
                    .expect("suffix-free");
            for &s in &data {
                e.push(s);
                black_box(e.query());
            }
        })
    });
    group.finish();
}

fn bench_testers(c: &mut Criterion) {
    let n = 1024usize;
    let data = stream(4 * n);
    let contains_a = language("(a|b)*a(a|b)*");
    let mut group = c.benchmark_group("tester_push");
    group.throughput(Throughput::Elements(data.len() as u64));
    group.bench_function(BenchmarkId::new("deterministic", n), |b| {
        b.iter(|| {
            let mut t = DeterministicTester::new(&contains_a, n);
            for &s in &data {
                t.push(s);
                black_box(t.query());
            }
        })
    });
    group.bench_function(BenchmarkId::new("two_sided", n), |b| {
        b.iter(|| {
            let mut t =
                TwoSidedTester::new(&contains_a, n as u64, 0.25, RandomSource::from_seed(2))
                    .expect("epsilon in range");
            for &s in &data {
                t.push(s);
                black_box(t.query());
            }
        })
    });
    group.finish();
}

criterion_group!(benches, bench_membership_engines, bench_testers);
criterion_main!(benches);
