use agmx_bench::{laplacian, logistic, piecewise, TABLE_KAPPAS};
use agmx_core::{make_params, solve, step, MethodKind, Objective, SolverConfig, SolverState};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

const TABLE_METHODS: [MethodKind; 4] = [
    MethodKind::Hnag,
    MethodKind::HnagPlus,
    MethodKind::Tm,
    MethodKind::Nag,
];

fn single_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("step");
    let (f, x0) = laplacian(3150.0);
    for method in MethodKind::ALL {
        let p = make_params(method, f.mu(), f.lipschitz()).unwrap();
        group.bench_function(BenchmarkId::new("laplacian_3150", method.as_str()), |b| {
            let mut s = SolverState::new(&f, &p, &x0).unwrap();
            b.iter(|| {
                step(&f, &p, &mut s).unwrap();
                // Restart before the unstable box form overflows.
                if s.k % 256 == 0 {
                    s = SolverState::new(&f, &p, &x0).unwrap();
                }
            })
        });
    }
    group.finish();
}

// Full solves to the 1e-8 gradient rule, no energies recorded.
fn full_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for kappa in TABLE_KAPPAS {
        let (f, x0) = laplacian(kappa);
        for method in TABLE_METHODS {
            let cfg = SolverConfig::new(method).with_lyapunov(false);
            group.bench_with_input(BenchmarkId::new(method.as_str(), kappa), &x0, |b, x0| {
                b.iter(|| black_box(solve(&f, &cfg, x0).unwrap().iterations))
            });
        }
    }
    group.finish();
}

fn nonquadratic(c: &mut Criterion) {
    let mut group = c.benchmark_group("nonquadratic");
    group.sample_size(10);
    let (pw, x_pw) = piecewise();
    let (lg, x_lg) = logistic();
    for method in [MethodKind::Hnag, MethodKind::Nag] {
        let cfg = SolverConfig::new(method).with_lyapunov(false);
        group.bench_function(BenchmarkId::new("piecewise", method.as_str()), |b| {
            b.iter(|| black_box(solve(&pw, &cfg, &x_pw).unwrap().iterations))
        });
        group.bench_function(BenchmarkId::new("logistic", method.as_str()), |b| {
            b.iter(|| black_box(solve(&lg, &cfg, &x_lg).unwrap().iterations))
        });
    }
    group.finish();
}

criterion_group!(benches, single_step, full_solve, nonquadratic);
criterion_main!(benches);
