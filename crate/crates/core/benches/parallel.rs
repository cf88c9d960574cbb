use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ngcl_core::par::Exec;
use ngcl_core::taxonomy::{
    check_theorems, find_counterexample, CheckMode, ClaimId, CorpusSpec, TheoremId,
};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn survey(c: &mut Criterion) {
    let corpus = CorpusSpec::Loops { count: 500 }
        .build(7, Exec::Parallel)
        .unwrap();
    let mut group = c.benchmark_group("survey_loops_500");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| check_theorems(&TheoremId::ALL, &corpus, CheckMode::Scoped, exec).unwrap())
        });
    }
    group.finish();
}

fn corpus_build(c: &mut Criterion) {
    let spec: CorpusSpec = "exhaustive:2:2".parse().unwrap();
    let mut group = c.benchmark_group("build_exhaustive_2_2");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| spec.build(0, exec).unwrap())
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search_galois_pc_10k");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| find_counterexample(ClaimId::GaloisPc, 10_000, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, survey, corpus_build, search);
criterion_main!(benches);
