use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use firstorder::{jacobi_eigendecompose, random_hermitian, DEFAULT_MAX_SWEEPS};
use std::hint::black_box;

fn bench_jacobi(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobi_eigendecompose");
    for n in [4usize, 8, 16, 32, 64] {
        let a = random_hermitian(n as u64, n, 1.0).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| jacobi_eigendecompose(black_box(a), DEFAULT_MAX_SWEEPS).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_jacobi);
criterion_main!(benches);
