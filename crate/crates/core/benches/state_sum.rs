use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use skeindef::corpus::{product_stack, CorpusSpec};
use skeindef::diagram::from_braid;
use skeindef::statesum::{bracket_with, expansion_series};
use skeindef::verify::{main_theorem, Config};
use skeindef::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn bench_bracket(c: &mut Criterion) {
    let mut group = c.benchmark_group("bracket");
    let torus = product_stack(&(2, (1, 2), 2, (2, 1))).unwrap().build().unwrap();
    let braid = from_braid(4, &[1, -2, 3, 1, 2, -3, 1, 2, 3, -1, 2, 3, 1, 2]).unwrap();
    for (label, d) in [("torus 12 crossings", &torus), ("braid 14 crossings", &braid)] {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, label), d, |b, d| {
                b.iter(|| bracket_with(black_box(d), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_expansion(c: &mut Criterion) {
    let mut group = c.benchmark_group("expansion to order 5");
    group.sample_size(10);
    let torus = product_stack(&(2, (1, 2), 2, (2, 1))).unwrap().build().unwrap();
    for (mode, exec) in MODES {
        group.bench_function(mode, |b| b.iter(|| expansion_series(black_box(&torus), 5, exec).unwrap()));
    }
    group.finish();
}

fn bench_corpus(c: &mut Criterion) {
    let mut group = c.benchmark_group("main theorem, small corpus");
    group.sample_size(10);
    let corpus = CorpusSpec::small().build().unwrap();
    for (mode, exec) in MODES {
        let cfg = Config { corpus: CorpusSpec::small(), max_order: 4, exec, ..Config::default() };
        group.bench_function(mode, |b| b.iter(|| main_theorem(black_box(&corpus), &cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_bracket, bench_expansion, bench_corpus);
criterion_main!(benches);
