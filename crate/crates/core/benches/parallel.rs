use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use stada::field::{d, laplace, upsilon, AnalyticField, FieldOps, GridField};
use stada::par::Execution;
use stada::random::{self, rng};
use stada::suite::{run_suite_with, Suite, SuiteSpec};
use stada::{Backend, Float};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn grid(n: usize, exec: Execution) -> GridField<Float> {
    let mut r = rng(1, 0);
    let field = AnalyticField::<Float>::plane_wave(random::multivector(&mut r), &[1.0, 0.0, 2.0, 0.0])
        .plus(&AnalyticField::plane_wave(random::multivector(&mut r), &[0.0, 1.0, 0.0, 1.0]));
    let h = [2.0 * std::f64::consts::PI / n as f64; 4];
    GridField::sample(&field, [n; 4], h, exec).0
}

fn grid_operators(c: &mut Criterion) {
    let mut group = c.benchmark_group("grid-operators-12^4");
    group.sample_size(10);
    for (name, exec) in MODES {
        let g = grid(12, exec);
        group.bench_with_input(BenchmarkId::new("d", name), &g, |b, g| b.iter(|| d(g)));
        group.bench_with_input(BenchmarkId::new("upsilon", name), &g, |b, g| b.iter(|| upsilon(g)));
        group.bench_with_input(BenchmarkId::new("laplace", name), &g, |b, g| b.iter(|| laplace(g)));
    }
    group.finish();
}

fn suite_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite-batch");
    group.sample_size(10);
    let spec = SuiteSpec { backend: Backend::Float, ..SuiteSpec::new(Suite::All, 1) };
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("all-float", name), |b| b.iter(|| run_suite_with(&spec, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, grid_operators, suite_batch);
criterion_main!(benches);
