use agmx_core::{
    anchor, bregman, build_laplacian2d, build_logistic, build_piecewise, lyapunov, solve,
    start_point, three_point_lhs, LyapunovKind, MethodKind, Objective, Problem, Rng,
    ShiftedObjective, SolverConfig,
};
use proptest::prelude::*;

fn small_problems() -> Vec<Problem> {
    vec![
        Problem::Quadratic(build_laplacian2d(6).unwrap()),
        Problem::Piecewise(build_piecewise(30, 4, 1.0, 1e3, 1e-6, &mut Rng::new(3)).unwrap()),
        Problem::Logistic(build_logistic(80, 12, 0.1, &mut Rng::new(4)).unwrap()),
    ]
}

fn sample(rng: &mut Rng, dim: usize, scale: f64) -> Vec<f64> {
    rng.normal_vec(dim).into_iter().map(|v| scale * v).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn three_point_identity(seed in any::<u64>(), scale in 0.01f64..3.0) {
        for f in small_problems() {
            let mut rng = Rng::new(seed);
            let (x, y, z) = (sample(&mut rng, f.dim(), scale), sample(&mut rng, f.dim(), scale), sample(&mut rng, f.dim(), scale));
            let lhs = three_point_lhs(&f, &x, &y, &z).unwrap();
            let d_yx = bregman(&f, &y, &x).unwrap();
            let d_zy = bregman(&f, &z, &y).unwrap();
            let d_zx = bregman(&f, &z, &x).unwrap();
            let rhs = d_yx + d_zy - d_zx;
            let size = d_yx.abs() + d_zy.abs() + d_zx.abs() + lhs.abs();
            prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + size), "{} vs {}", lhs, rhs);
        }
    }

    #[test]
    fn bregman_sandwich_and_cocoercivity(seed in any::<u64>(), scale in 0.01f64..3.0) {
        for f in small_problems() {
            let mut rng = Rng::new(seed);
            let x = sample(&mut rng, f.dim(), scale);
            let y = sample(&mut rng, f.dim(), scale);
            let d2: f64 = x.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum();
            let d = bregman(&f, &y, &x).unwrap();
            let slack = 1e-9 * (1.0 + f.lipschitz() * d2);
            prop_assert!(d >= 0.5 * f.mu() * d2 - slack);
            prop_assert!(d <= 0.5 * f.lipschitz() * d2 + slack);
            // ⟨∇f(x) − ∇f(y), x − y⟩ ≥ ‖∇f(x) − ∇f(y)‖²/L
            let gx = f.gradient(&x);
            let gy = f.gradient(&y);
            let inner: f64 = gx.iter().zip(gy.iter()).zip(x.iter().zip(&y)).map(|((a, b), (u, v))| (a - b) * (u - v)).sum();
            let gd2: f64 = gx.iter().zip(gy.iter()).map(|(a, b)| (a - b).powi(2)).sum();
            prop_assert!(inner >= gd2 / f.lipschitz() - slack);
        }
    }

    #[test]
    fn energies_are_nonnegative(seed in any::<u64>(), scale in 0.01f64..3.0) {
        let f = build_laplacian2d(6).unwrap();
        let mut rng = Rng::new(seed);
        let x = sample(&mut rng, f.dim(), scale);
        let y = sample(&mut rng, f.dim(), scale);
        for kind in [LyapunovKind::EHnag, LyapunovKind::EHnagPlus, LyapunovKind::EPartial] {
            for mu_hat in [0.0, 0.5 * f.mu(), f.mu()] {
                let e = lyapunov(kind, &f, &x, &y, mu_hat).unwrap();
                prop_assert!(e >= -1e-12 * (1.0 + f.lipschitz() * scale * scale));
            }
        }
    }
}

#[test]
fn zero_shift_is_bitwise_identical() {
    for f in small_problems() {
        let center = start_point(f.dim(), 5);
        let shifted = ShiftedObjective::new(f.clone(), 0.0, center).unwrap();
        let mut rng = Rng::new(11);
        for _ in 0..20 {
            let x = rng.normal_vec(f.dim());
            assert_eq!(shifted.value(&x).to_bits(), f.value(&x).to_bits());
            let (a, b) = (shifted.gradient(&x), f.gradient(&x));
            assert!(a
                .iter()
                .zip(b.iter())
                .all(|(u, v)| u.to_bits() == v.to_bits()));
        }
    }
}

#[test]
fn gradient_envelope_along_hnag() {
    // ‖∇f(x_k)‖² ≤ C₁(1 + √(2/κ))^{−k} with C₁ = E(z_0)·2L/α.
    for f in small_problems() {
        let f = anchor(f).unwrap();
        let trace = solve(
            &f,
            &SolverConfig::new(MethodKind::Hnag),
            &start_point(f.dim(), 42),
        )
        .unwrap();
        let kappa = f.condition_number();
        let alpha = (2.0 / kappa).sqrt();
        let c1 = trace.first().energy * 2.0 * f.lipschitz() / alpha;
        let r = 1.0 / (1.0 + alpha);
        for rec in &trace.records {
            let bound = c1 * r.powi(rec.k as i32);
            assert!(
                rec.grad_norm.powi(2) <= bound * (1.0 + 1e-12),
                "k = {}",
                rec.k
            );
        }
    }
}

#[test]
fn gd_contracts_at_the_classical_rate() {
    let f = build_laplacian2d(10).unwrap();
    let trace = solve(
        &f,
        &SolverConfig::new(MethodKind::Gd).with_max_iter(400),
        &start_point(100, 9),
    )
    .unwrap();
    let kappa = f.condition_number();
    let q = (kappa - 1.0) / (kappa + 1.0);
    for w in trace.records.windows(2) {
        assert!(w[1].x_err_sq.sqrt() <= q * w[0].x_err_sq.sqrt() * (1.0 + 1e-12));
    }
}

#[test]
fn every_family_converges_with_every_stable_method() {
    for f in small_problems() {
        let f = anchor(f).unwrap();
        let x0 = start_point(f.dim(), 42);
        for m in MethodKind::ALL
            .into_iter()
            .filter(|&m| m != MethodKind::HnagBox)
        {
            let trace = solve(&f, &SolverConfig::new(m), &x0).unwrap();
            assert_eq!(trace.status, agmx_core::Status::Converged, "{m}");
        }
    }
}
