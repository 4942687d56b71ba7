use crate::error::{Error, Result};
use crate::objective::{Anchored, Objective};
use crate::solvers::{make_params, step, SolverState};
use crate::vector::{norm, Vector};

/// Relative gradient reduction demanded of the oracle.
pub const ORACLE_TOL: f64 = 1e-12;
const ORACLE_MAX_ITER: usize = 1_000_000;

/// High-accuracy minimizer.
///
/// Returns the attached minimizer when the objective has one (exact for
/// quadratics). Otherwise runs NAG from the zero vector until
/// `‖∇f(x)‖ ≤ 10⁻¹²‖∇f(0)‖`.
pub fn find_minimizer<F: Objective + ?Sized>(f: &F) -> Result<Vector> {
    if let Some(x) = f.minimizer() {
        return Ok(x.clone());
    }
    let params = make_params(crate::solvers::MethodKind::Nag, f.mu(), f.lipschitz())?;
    let mut state = SolverState::new(f, &params, &vec![0.0; f.dim()])?;
    let g0 = norm(&state.grad);
    if g0 == 0.0 {
        return Ok(state.x);
    }
    let threshold = ORACLE_TOL * g0;
    for _ in 0..ORACLE_MAX_ITER {
        step(f, &params, &mut state)?;
        if norm(&state.grad) <= threshold {
            return Ok(state.x);
        }
    }
    Err(Error::Oracle {
        iterations: ORACLE_MAX_ITER,
        ratio: norm(&state.grad) / g0,
    })
}

/// Attaches the oracle's minimizer.
pub fn anchor<F: Objective>(f: F) -> Result<Anchored<F>> {
    let x = find_minimizer(&f)?;
    Anchored::new(f, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{build_logistic, build_piecewise, QuadraticObjective, Rng};

    #[test]
    fn quadratic_center_is_returned_exactly() {
        let c = Vector::from(vec![0.3, -7.0, 1e-9]);
        let f = QuadraticObjective::diagonal(vec![1.0, 2.0, 3.0], c.clone()).unwrap();
        assert_eq!(find_minimizer(&f).unwrap(), c);
    }

    #[test]
    fn logistic_oracle_meets_its_tolerance() {
        let f = build_logistic(200, 20, 0.1, &mut Rng::new(8)).unwrap();
        let x = find_minimizer(&f).unwrap();
        let g0 = f.gradient(&vec![0.0; 200]).norm();
        assert!(f.gradient(&x).norm() <= ORACLE_TOL * g0);
    }

    #[test]
    fn piecewise_oracle_is_self_consistent() {
        let f = build_piecewise(30, 4, 1.0, 1e3, 1e-6, &mut Rng::new(2)).unwrap();
        let anchored = anchor(f).unwrap();
        let xs = anchored.minimizer().unwrap().clone();
        // Restarting NAG at x̂⋆ barely moves it.
        let p = make_params(crate::solvers::MethodKind::Nag, 1.0, 1e3).unwrap();
        let mut s = SolverState::new(&anchored, &p, &xs).unwrap();
        for _ in 0..100 {
            step(&anchored, &p, &mut s).unwrap();
        }
        let moved: f64 =
            s.x.iter()
                .zip(xs.iter())
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
        assert!(moved <= 1e-6, "moved {moved}");
    }
}
