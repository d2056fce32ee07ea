use std::f64::consts::PI;
use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use transforms_core::chebyshev::MobiusExpansion;
use transforms_core::halfline::{default_breakpoints, MappedExpansion};
use transforms_core::maps::cauchy_power_map;
use transforms_core::{Execution, HalfLineFunction};

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn slow() -> HalfLineFunction {
    HalfLineFunction::real(|x| x / (1.0 + x).powf(PI - 2.0), -1.0, PI - 3.0)
}

// Builds one Chebyshev series per piece; the pieces are independent.
fn build(c: &mut Criterion) {
    let f = slow();
    let mut group = c.benchmark_group("mapped_expansion");
    for n in [128usize, 1024] {
        let plan = default_breakpoints(10, 110).unwrap().with_n(n);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &plan, |b, plan| {
                b.iter(|| MappedExpansion::new(&f, black_box(plan.clone()), exec).unwrap())
            });
        }
    }
    group.finish();
}

// Σ_j C g(λ_j) over p preimages, each through a Möbius series.
fn preimage_sum(c: &mut Criterion) {
    let z = Complex64::new(1.0, 1.0);
    let mut group = c.benchmark_group("power_map");
    for p in [10u32, 100] {
        let f = HalfLineFunction::real(|x| (-x).exp() / (1.0 + x), 0.0, 8.0);
        let g = f.compose_power(p as f64);
        let m = MobiusExpansion::new(&g, 256).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, p), &p, |b, &p| {
                b.iter(|| cauchy_power_map(|w| m.cauchy(w).map(|s| s.estimate), p, black_box(z), exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20).measurement_time(Duration::from_secs(3));
    targets = build, preimage_sum
}
criterion_main!(benches);
