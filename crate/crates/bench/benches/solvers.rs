use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use metdim::families::{generate, verify_theorem, Family, TheoremKind};
use metdim::ilp::{build_ftmd_model, build_lmd_model, solve_binary_program};
use metdim::{all_pairs_distances, exact_dimension, SearchBudget, VariantKind};

fn distances(c: &mut Criterion) {
    let mut group = c.benchmark_group("distances");
    for n in [10, 40, 100] {
        let g = generate(Family::U, n).unwrap().graph().clone();
        group.bench_with_input(BenchmarkId::new("U", n), &g, |b, g| b.iter(|| all_pairs_distances(black_box(g))));
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    let budget = SearchBudget::unlimited();
    let mut group = c.benchmark_group("exact");
    group.sample_size(10);
    for (kind, family, n) in [
        (VariantKind::Local, Family::S, 12),
        (VariantKind::Metric, Family::S, 8),
        (VariantKind::FaultTolerant, Family::S, 5),
        (VariantKind::Strong, Family::U, 9),
    ] {
        let g = generate(family, n).unwrap().graph().clone();
        group.bench_function(format!("{kind}/{}", g.name()), |b| {
            b.iter(|| exact_dimension(black_box(&g), kind, &budget).unwrap())
        });
    }
    group.finish();
}

fn ilp(c: &mut Criterion) {
    let budget = SearchBudget::unlimited();
    let mut group = c.benchmark_group("ilp");
    group.sample_size(10);
    let s5 = generate(Family::S, 5).unwrap().graph().clone();
    let u12 = generate(Family::U, 12).unwrap().graph().clone();
    let ftmd = build_ftmd_model(&s5, s5.distances()).unwrap();
    let lmd = build_lmd_model(&u12, u12.distances()).unwrap();
    group.bench_function("ftmd/S_5", |b| b.iter(|| solve_binary_program(black_box(&ftmd), &budget).unwrap()));
    group.bench_function("lmd/U_12", |b| b.iter(|| solve_binary_program(black_box(&lmd), &budget).unwrap()));
    group.bench_function("build ftmd/S_5", |b| b.iter(|| build_ftmd_model(&s5, s5.distances()).unwrap()));
    group.finish();
}

fn theorems(c: &mut Criterion) {
    let budget = SearchBudget::unlimited();
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("S strong 3..20", |b| {
        b.iter(|| verify_theorem(Family::S, TheoremKind::Strong, 3..=20, &budget).unwrap())
    });
    group.bench_function("U local 3..20", |b| {
        b.iter(|| verify_theorem(Family::U, TheoremKind::Local, 3..=20, &budget).unwrap())
    });
    group.finish();
}

criterion_group!(benches, distances, exact, ilp, theorems);
criterion_main!(benches);
