use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use solgas::dynamics::solve_peak;
use solgas::fredholm::q_gas;
use solgas::nsoliton::{q_exact, sample_gas_solitons, Method};
use solgas::outer_model::q_asymptotic;
use solgas::specfun::{complete_elliptic, theta3};
use solgas::{Complex64, Numerics, Scenario};
use solgas_bench::{gas, trial_scenario};

fn specfun(c: &mut Criterion) {
    c.bench_function("complete_elliptic", |b| b.iter(|| complete_elliptic(black_box(0.7))));
    let tau = Complex64::new(0.0, 0.8);
    c.bench_function("theta3", |b| b.iter(|| theta3(black_box(Complex64::new(0.3, 0.1)), tau)));
}

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("q_exact");
    for n in [16, 64, 128] {
        let set = sample_gas_solitons(n, &gas()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &set, |b, set| {
            b.iter(|| q_exact(set, black_box(1.5), 0.2, Method::LogDet))
        });
    }
    group.finish();
}

fn fredholm(c: &mut Criterion) {
    let scn = Scenario::gas_only(gas());
    let mut group = c.benchmark_group("q_gas");
    for n in [50, 200] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| q_gas(&scn, black_box(2.0), 0.5, n, 250.0))
        });
    }
    group.finish();
}

fn asymptotic(c: &mut Criterion) {
    let scn = trial_scenario();
    let num = Numerics::default();
    c.bench_function("q_asymptotic", |b| b.iter(|| q_asymptotic(black_box(120.0), 30.0, &scn, &num)));
    c.bench_function("solve_peak", |b| b.iter(|| solve_peak(black_box(30.0), &scn, &num)));
}

criterion_group!(benches, specfun, exact, fredholm, asymptotic);
criterion_main!(benches);
