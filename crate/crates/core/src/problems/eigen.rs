//! Extreme eigenvalues of symmetric positive semidefinite operators.

use crate::error::{Error, Result};
use crate::problems::rng::Rng;
use crate::vector::{dot, norm};

const MAX_POWER_ITERATIONS: usize = 200_000;
// Fixed start vector seed so estimates are reproducible.
const START_SEED: u64 = 0x5EED_E16E;

struct PowerResult {
    value: f64,
    vector: Vec<f64>,
    iterations: usize,
    converged: bool,
}

/// Power iteration on `op`, stopping once `‖op(v) − λv‖ ≤ tol·|λ|`.
fn power_iteration<M>(op: M, dim: usize, tol: f64) -> PowerResult
where
    M: Fn(&[f64], &mut [f64]),
{
    let mut rng = Rng::new(START_SEED);
    let mut v: Vec<f64> = (0..dim).map(|_| rng.uniform() + 0.5).collect();
    let nv = norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let mut w = vec![0.0; dim];
    let mut lambda = 0.0;
    for it in 1..=MAX_POWER_ITERATIONS {
        op(&v, &mut w);
        lambda = dot(&v, &w);
        let residual: f64 = w
            .iter()
            .zip(&v)
            .map(|(wi, vi)| (wi - lambda * vi).powi(2))
            .sum::<f64>()
            .sqrt();
        let nw = norm(&w);
        if residual <= tol * lambda.abs() || nw == 0.0 {
            return PowerResult {
                value: lambda,
                vector: v,
                iterations: it,
                converged: true,
            };
        }
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / nw;
        }
    }
    PowerResult {
        value: lambda,
        vector: v,
        iterations: MAX_POWER_ITERATIONS,
        converged: false,
    }
}

/// Largest eigenvalue of a symmetric positive semidefinite operator.
pub fn largest_eigenvalue<M>(matvec: M, dim: usize, tol: f64) -> Result<f64>
where
    M: Fn(&[f64], &mut [f64]),
{
    check_args(dim, tol)?;
    let top = power_iteration(&matvec, dim, tol);
    if !top.converged {
        return Err(Error::EigenNotConverged {
            iterations: top.iterations,
            lambda_min: f64::NAN,
            lambda_max: top.value,
        });
    }
    Ok(top.value)
}

/// `(λ_min, λ_max)` of a symmetric positive semidefinite operator.
///
/// `λ_max` comes from power iteration, `λ_min` from power iteration on
/// `λ_max·I − A` followed by a Rayleigh quotient of `A` at the converged
/// vector. Both stop on a relative residual of `tol`.
pub fn estimate_extreme_eigs<M>(matvec: M, dim: usize, tol: f64) -> Result<(f64, f64)>
where
    M: Fn(&[f64], &mut [f64]),
{
    check_args(dim, tol)?;
    let top = power_iteration(&matvec, dim, tol);
    if !top.converged {
        return Err(Error::EigenNotConverged {
            iterations: top.iterations,
            lambda_min: f64::NAN,
            lambda_max: top.value,
        });
    }
    let lambda_max = top.value;
    let shifted = |x: &[f64], out: &mut [f64]| {
        matvec(x, out);
        for (o, xi) in out.iter_mut().zip(x) {
            *o = lambda_max * xi - *o;
        }
    };
    let bottom = power_iteration(shifted, dim, tol);
    let mut av = vec![0.0; dim];
    matvec(&bottom.vector, &mut av);
    let lambda_min = dot(&bottom.vector, &av) / dot(&bottom.vector, &bottom.vector);
    if !bottom.converged {
        return Err(Error::EigenNotConverged {
            iterations: top.iterations + bottom.iterations,
            lambda_min,
            lambda_max,
        });
    }
    Ok((lambda_min.min(lambda_max), lambda_max))
}

fn check_args(dim: usize, tol: f64) -> Result<()> {
    if dim == 0 {
        return Err(Error::Parameter(
            "operator dimension must be positive".into(),
        ));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Parameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn identity_operator() {
        let id = |x: &[f64], out: &mut [f64]| out.copy_from_slice(x);
        let (lo, hi) = estimate_extreme_eigs(id, 5, 1e-10).unwrap();
        assert_relative_eq!(lo, 1.0, max_relative = 1e-12);
        assert_relative_eq!(hi, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn diagonal_operator() {
        let d = [1.0, 10.0];
        let op = |x: &[f64], out: &mut [f64]| {
            for i in 0..2 {
                out[i] = d[i] * x[i];
            }
        };
        let (lo, hi) = estimate_extreme_eigs(op, 2, 1e-8).unwrap();
        assert_relative_eq!(lo, 1.0, max_relative = 1e-8);
        assert_relative_eq!(hi, 10.0, max_relative = 1e-8);
    }

    #[test]
    fn against_nalgebra_on_a_random_gram_matrix() {
        let mut rng = Rng::new(5);
        let n = 12;
        let b = nalgebra::DMatrix::from_fn(3 * n, n, |_, _| rng.normal());
        let a = b.transpose() * &b;
        let op = |x: &[f64], out: &mut [f64]| {
            let y = &a * nalgebra::DVector::from_column_slice(x);
            out.copy_from_slice(y.as_slice());
        };
        let (lo, hi) = estimate_extreme_eigs(op, n, 1e-10).unwrap();
        let eig = a.clone().symmetric_eigen();
        let true_hi = eig.eigenvalues.max();
        let true_lo = eig.eigenvalues.min();
        assert_relative_eq!(hi, true_hi, max_relative = 1e-10);
        assert_relative_eq!(lo, true_lo, max_relative = 1e-6);
    }

    #[test]
    fn bad_arguments() {
        let id = |x: &[f64], out: &mut [f64]| out.copy_from_slice(x);
        assert!(estimate_extreme_eigs(id, 0, 1e-8).is_err());
        assert!(estimate_extreme_eigs(id, 3, 0.0).is_err());
    }
}
