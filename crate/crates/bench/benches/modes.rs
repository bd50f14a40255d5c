use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lazysat::{AnalyzeStrategy, Mode, SolverConfig};
use lazysat_bench::{batch, config, solve_batch};
use std::hint::black_box;

fn modes(c: &mut Criterion) {
    for n in [20, 50] {
        let formulas = batch(n, 20, 1_000);
        let mut group = c.benchmark_group(format!("uf{n}"));
        for mode in Mode::ALL {
            let cfg = config(mode);
            group.bench_with_input(BenchmarkId::from_parameter(mode), &cfg, |b, cfg| {
                b.iter(|| solve_batch(black_box(&formulas), cfg))
            });
        }
        group.finish();
    }
}

fn analysis(c: &mut Criterion) {
    let formulas = batch(50, 20, 2_000);
    let mut group = c.benchmark_group("lscb-analysis");
    for (name, analyze, minimize) in [
        ("analyze1", AnalyzeStrategy::Analyze1, false),
        ("analyze2", AnalyzeStrategy::Analyze2, false),
        ("analyze2+minimize", AnalyzeStrategy::Analyze2, true),
    ] {
        let cfg = SolverConfig {
            analyze,
            minimize,
            ..config(Mode::Lscb)
        };
        group.bench_function(name, |b| b.iter(|| solve_batch(black_box(&formulas), &cfg)));
    }
    group.finish();
}

criterion_group!(benches, modes, analysis);
criterion_main!(benches);
