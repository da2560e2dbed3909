//! Engine throughput with the default rayon pool against a single thread.
//! Build with `--no-default-features` for the purely sequential engine.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hopf_cyclic::equivariant::{build_equivariant, DEFAULT_BUDGET};
use hopf_cyclic::fixtures;
use hopf_cyclic::homogeneous::{s3_z2, HomogeneousSpace};
use hopf_cyclic::linalg::{Mat, Scalar};

fn workloads() -> Vec<(&'static str, Box<dyn Fn() + Send + Sync>)> {
    let f3 = fixtures::f3();
    let n = 48;
    let dense: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| Scalar::from_frac(((i * 7 + j * 3) % 11) as i64 - 5, 1 + (i + j) as i64 % 3)).collect())
        .collect();
    let m = Mat::from_dense(&dense);
    vec![
        (
            "equivariant-f3-level3",
            Box::new(move || {
                let c = build_equivariant(&f3.b, &f3.h, 3, DEFAULT_BUDGET).unwrap();
                assert!(c.materialize(3).all_passed());
            }),
        ),
        (
            "homogeneous-s3-z2",
            Box::new(|| {
                HomogeneousSpace::new(&s3_z2()).unwrap();
            }),
        ),
        (
            "rational-matmul-48",
            Box::new(move || {
                m.mul(&m);
            }),
        ),
    ]
}

fn engine(c: &mut Criterion) {
    let mut group = c.benchmark_group("engine");
    group.sample_size(10);
    for (name, work) in workloads() {
        #[cfg(feature = "parallel")]
        {
            group.bench_function(BenchmarkId::new(name, "default-pool"), |b| b.iter(&work));
            let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
            group.bench_function(BenchmarkId::new(name, "one-thread"), |b| single.install(|| b.iter(&work)));
        }
        #[cfg(not(feature = "parallel"))]
        group.bench_function(BenchmarkId::new(name, "sequential"), |b| b.iter(&work));
    }
    group.finish();
}

criterion_group!(benches, engine);
criterion_main!(benches);
