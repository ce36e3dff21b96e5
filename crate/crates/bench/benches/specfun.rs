use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use pjop_core::specfun::SpecFunConfig;
use pjop_core::unikernels::{airy_kernel, bessel_kernel};

fn bench_specfun(c: &mut Criterion) {
    let sf = SpecFunConfig::default();
    let mut group = c.benchmark_group("specfun");
    for x in [0.5f64, 8.0, 30.0] {
        group.bench_with_input(BenchmarkId::new("bessel_j", x), &x, |b, &x| {
            b.iter(|| sf.bessel_j(1.5, black_box(x)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("bessel_j_prime", x), &x, |b, &x| {
            b.iter(|| sf.bessel_j_prime(1.5, black_box(x)).unwrap())
        });
    }
    for x in [-12.0f64, -3.0, 0.5, 4.0, 12.0] {
        group.bench_with_input(BenchmarkId::new("airy_ai_pair", x), &x, |b, &x| {
            b.iter(|| sf.airy_ai_pair(black_box(x)).unwrap())
        });
    }
    group.bench_function("bessel_kernel", |b| {
        b.iter(|| bessel_kernel(1.0, black_box(1.0), black_box(2.0)).unwrap())
    });
    group.bench_function("airy_kernel", |b| {
        b.iter(|| airy_kernel(black_box(-1.0), black_box(0.5)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_specfun);
criterion_main!(benches);
