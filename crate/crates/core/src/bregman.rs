//! Bregman divergence, its asymmetry, and the plain gradient step.
//!
//! These evaluate `f` and `∇f` afresh on every call.

use crate::error::{check_dim, Error, Result};
use crate::objective::Objective;
use crate::vector::{dot, Vector};

/// `D_f(y, x) = f(y) − f(x) − ⟨∇f(x), y − x⟩`.
pub fn bregman<F: Objective + ?Sized>(f: &F, y: &[f64], x: &[f64]) -> Result<f64> {
    check_dim(f.dim(), y.len())?;
    check_dim(f.dim(), x.len())?;
    let gx = f.gradient(x);
    let lin: f64 = gx
        .iter()
        .zip(y.iter().zip(x))
        .map(|(g, (yi, xi))| g * (yi - xi))
        .sum();
    Ok(f.value(y) - f.value(x) - lin)
}

/// `Δ_f(x, y) = D_f(y, x) − D_f(x, y)`.
///
/// Zero for quadratics; satisfies
/// `⟨∇f(x) − ∇f(y), x − y⟩ = 2·D_f(x, y) + Δ_f(x, y)`.
pub fn bregman_asymmetry<F: Objective + ?Sized>(f: &F, x: &[f64], y: &[f64]) -> Result<f64> {
    Ok(bregman(f, y, x)? - bregman(f, x, y)?)
}

/// `x⁺ = x − ∇f(x)/L`.
pub fn grad_step<F: Objective + ?Sized>(f: &F, x: &[f64]) -> Result<Vector> {
    check_dim(f.dim(), x.len())?;
    let lipschitz = f.lipschitz();
    if !(lipschitz > 0.0 && lipschitz.is_finite()) {
        return Err(Error::Parameter(format!(
            "gradient step needs a positive Lipschitz constant, got {lipschitz}"
        )));
    }
    let g = f.gradient(x);
    Ok(x.iter()
        .zip(g.iter())
        .map(|(xi, gi)| xi - gi / lipschitz)
        .collect())
}

/// `⟨∇f(y) − ∇f(x), y − z⟩`, the left side of the three-point identity
/// `D_f(y,x) + D_f(z,y) − D_f(z,x)`.
pub fn three_point_lhs<F: Objective + ?Sized>(
    f: &F,
    x: &[f64],
    y: &[f64],
    z: &[f64],
) -> Result<f64> {
    check_dim(f.dim(), x.len())?;
    check_dim(f.dim(), y.len())?;
    check_dim(f.dim(), z.len())?;
    let gx = f.gradient(x);
    let gy = f.gradient(y);
    let diff: Vec<f64> = gy.iter().zip(gx.iter()).map(|(a, b)| a - b).collect();
    let yz: Vec<f64> = y.iter().zip(z).map(|(a, b)| a - b).collect();
    Ok(dot(&diff, &yz))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::ShiftedObjective;
    use crate::problems::QuadraticObjective;
    use approx::assert_relative_eq;

    /// `f(x) = x⁴/4` in one dimension. Not strongly convex; only used for
    /// closed-form divergence values.
    struct Quartic;

    impl Objective for Quartic {
        fn dim(&self) -> usize {
            1
        }
        fn value(&self, x: &[f64]) -> f64 {
            0.25 * x[0].powi(4)
        }
        fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
            out[0] = x[0].powi(3);
        }
        fn mu(&self) -> f64 {
            f64::MIN_POSITIVE
        }
        fn lipschitz(&self) -> f64 {
            f64::MAX
        }
    }

    fn scaled_identity(scale: f64, dim: usize) -> QuadraticObjective {
        QuadraticObjective::diagonal(vec![scale; dim], Vector::zeros(dim)).unwrap()
    }

    #[test]
    fn quartic_divergences_match_hand_values() {
        assert_eq!(bregman(&Quartic, &[1.0], &[0.0]).unwrap(), 0.25);
        assert_eq!(bregman(&Quartic, &[0.0], &[1.0]).unwrap(), 0.75);
        assert_eq!(bregman_asymmetry(&Quartic, &[0.0], &[1.0]).unwrap(), -0.5);
    }

    #[test]
    fn divergence_vanishes_on_the_diagonal() {
        let x = [0.3, -1.2, 4.0];
        let f = QuadraticObjective::diagonal(vec![1.0, 2.0, 3.0], Vector::zeros(3)).unwrap();
        assert_eq!(bregman(&f, &x, &x).unwrap(), 0.0);
        assert_eq!(bregman_asymmetry(&f, &x, &x).unwrap(), 0.0);
        assert_eq!(bregman(&Quartic, &[2.5], &[2.5]).unwrap(), 0.0);
    }

    #[test]
    fn quadratic_divergence_is_symmetric_half_norm() {
        let f =
            QuadraticObjective::diagonal(vec![1.0, 4.0], Vector::from(vec![1.0, -1.0])).unwrap();
        let x = [0.5, 2.0];
        let y = [-1.0, 0.25];
        // ½ (y−x)ᵀ A (y−x) with A = diag(1, 4)
        let expected = 0.5 * (1.5f64.powi(2) + 4.0 * 1.75f64.powi(2));
        assert_relative_eq!(bregman(&f, &y, &x).unwrap(), expected, max_relative = 1e-14);
        assert_relative_eq!(bregman(&f, &x, &y).unwrap(), expected, max_relative = 1e-14);
        assert!(bregman_asymmetry(&f, &x, &y).unwrap().abs() < 1e-14);
    }

    #[test]
    fn dimension_mismatch_is_an_input_error() {
        let f = scaled_identity(1.0, 3);
        assert_eq!(
            bregman(&f, &[1.0, 2.0], &[0.0, 0.0, 0.0]),
            Err(Error::Dimension {
                expected: 3,
                got: 2
            })
        );
        assert!(bregman_asymmetry(&f, &[1.0], &[1.0, 2.0, 3.0]).is_err());
        assert!(grad_step(&f, &[1.0]).is_err());
    }

    #[test]
    fn grad_step_examples() {
        // μ = L: one exact step lands on the minimizer.
        let center = Vector::from(vec![2.0, -3.0]);
        let f = QuadraticObjective::diagonal(vec![5.0, 5.0], center.clone()).unwrap();
        let next = grad_step(&f, &[10.0, 7.0]).unwrap();
        assert_relative_eq!(next[0], 2.0, epsilon = 1e-14);
        assert_relative_eq!(next[1], -3.0, epsilon = 1e-14);
        assert_eq!(grad_step(&f, &center).unwrap(), center);

        // f(x) = ½·4x², x = 1 → 1 − 4/4 = 0
        let f = scaled_identity(4.0, 1);
        assert_eq!(grad_step(&f, &[1.0]).unwrap()[0], 0.0);
    }

    #[test]
    fn grad_step_accepts_shifted_objectives() {
        let f = QuadraticObjective::diagonal(vec![1.0, 10.0], Vector::zeros(2)).unwrap();
        let shifted = ShiftedObjective::around_minimizer(&f, 1.0).unwrap();
        // ∇f_{-μ}(x) = (0, 9 x₂), step 1/L = 1/10
        let next = grad_step(&shifted, &[1.0, 1.0]).unwrap();
        assert_relative_eq!(next[0], 1.0);
        assert_relative_eq!(next[1], 1.0 - 0.9, epsilon = 1e-15);
    }
}
