use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use lmtopo_core::process::run_trial;
use lmtopo_core::ProcessState;

fn trials(c: &mut Criterion) {
    let mut group = c.benchmark_group("process/trial");
    group.sample_size(20);
    for (n, d) in [(50, 1), (12, 2), (16, 2), (10, 3)] {
        group.bench_function(BenchmarkId::from_parameter(format!("n{n}_d{d}")), |b| {
            let mut seed = 0;
            b.iter(|| {
                seed += 1;
                run_trial(n, d, seed).unwrap()
            })
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("process/t_hom");
    group.sample_size(20);
    group.bench_function("binary_n12_d2", |b| {
        b.iter(|| ProcessState::new(12, 2, 9).unwrap().hitting_time_homology().unwrap())
    });
    group.bench_function("linear_n12_d2", |b| {
        b.iter(|| ProcessState::new(12, 2, 9).unwrap().hitting_time_homology_linear().unwrap())
    });
    group.finish();
}

criterion_group!(benches, trials, search);
criterion_main!(benches);
