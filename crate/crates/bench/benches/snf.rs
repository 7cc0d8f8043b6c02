use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lmtopo_core::homology::boundary_matrix;
use lmtopo_core::zlinalg::{rank_mod_q, rank_rational};
use lmtopo_core::{sample_static, smith_normal_form, SparseIntMatrix};

fn dense_random(c: &mut Criterion) {
    let mut group = c.benchmark_group("snf/random");
    for dim in [8, 16, 32] {
        let m = SparseIntMatrix::random(&mut ChaCha8Rng::seed_from_u64(dim as u64), dim, dim, 3);
        group.bench_with_input(BenchmarkId::new("invariants", dim), &m, |b, m| b.iter(|| smith_normal_form(m, false)));
        group.bench_with_input(BenchmarkId::new("transforms", dim), &m, |b, m| b.iter(|| smith_normal_form(m, true)));
    }
    group.finish();
}

fn boundary(c: &mut Criterion) {
    let mut group = c.benchmark_group("snf/boundary");
    for n in [12, 16, 20] {
        let y = sample_static(n, 2, 0.5, 1).unwrap();
        let m = boundary_matrix(&y, 2).unwrap();
        group.bench_with_input(BenchmarkId::new("smith", n), &m, |b, m| b.iter(|| smith_normal_form(m, false)));
        group.bench_with_input(BenchmarkId::new("rank_q", n), &m, |b, m| b.iter(|| rank_rational(m)));
        group.bench_with_input(BenchmarkId::new("rank_mod_2", n), &m, |b, m| b.iter(|| rank_mod_q(m, 2).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, dense_random, boundary);
criterion_main!(benches);
