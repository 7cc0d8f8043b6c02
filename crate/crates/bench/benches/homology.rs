use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use lmtopo_core::cocycle::{check_conditions, weight, Caps, Cochain};
use lmtopo_core::simplex::faces_of_dim;
use lmtopo_core::{betti, homology, sample_static, FieldSpec};

fn integral(c: &mut Criterion) {
    let mut group = c.benchmark_group("homology");
    for (n, d) in [(12, 2), (16, 2), (20, 2), (12, 3)] {
        let y = sample_static(n, d, 0.4, 2).unwrap();
        let id = format!("n{n}_d{d}");
        group.bench_with_input(BenchmarkId::new("integral", &id), &y, |b, y| b.iter(|| homology(y)));
        group.bench_with_input(BenchmarkId::new("betti_f2", &id), &y, |b, y| {
            b.iter(|| betti(y, FieldSpec::Prime(2)).unwrap())
        });
    }
    group.finish();
}

fn cochains(c: &mut Criterion) {
    let caps = Caps::default();
    let mut group = c.benchmark_group("cochain");
    let y = sample_static(16, 2, 0.15, 3).unwrap();
    group.bench_function("conditions_n16", |b| b.iter(|| check_conditions(&y, &caps).unwrap()));
    // four edges at n = 6 over Z/3: below the shortcut, so the coset is enumerated
    let phi = Cochain::from_ints(6, 2, FieldSpec::Prime(3), faces_of_dim(6, 1).step_by(4).map(|f| (f, 1))).unwrap();
    group.bench_function("weight_n6_z3", |b| b.iter(|| weight(&phi, &caps).unwrap()));
    group.finish();
}

criterion_group!(benches, integral, cochains);
criterion_main!(benches);
