use crate::error::{check_dim, Error, Result};
use crate::objective::{validate_constants, Objective};
use crate::problems::dense::{gram, ColumnMatrix};
use crate::problems::eigen::largest_eigenvalue;
use crate::problems::rng::Rng;
use crate::vector::norm_sq;

pub const DEFAULT_LAMBDA: f64 = 0.1;
pub const DEFAULT_D: usize = 1000;
pub const DEFAULT_M: usize = 50;

/// Bound on `|h‴|` for `h(s) = log(1 + e^{−s})`.
pub const THIRD_DERIVATIVE_BOUND: f64 = 0.11;

/// `log(1 + e^z)` without overflow.
pub fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// `1/(1 + e^{−z})` without overflow.
pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `f(x) = Σᵢ log(1 + exp(−b_i a_iᵀx)) + (λ/2)‖x‖²`.
#[derive(Debug, Clone)]
pub struct LogisticObjective {
    a: ColumnMatrix,
    b: Vec<f64>,
    lambda: f64,
    lipschitz: f64,
}

impl LogisticObjective {
    /// Computes `L = λ_max(Σ a_i a_iᵀ) + λ`.
    pub fn new(a: ColumnMatrix, b: Vec<f64>, lambda: f64) -> Result<Self> {
        check_dim(a.cols(), b.len())?;
        if b.iter().any(|&v| v != 1.0 && v != -1.0) {
            return Err(Error::Input("labels must be +1 or -1".into()));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Parameter(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        let g = gram(&a);
        let top = largest_eigenvalue(|x, out| g.matvec_into(x, out), a.cols(), 1e-12)?;
        let lipschitz = top + lambda;
        validate_constants(lambda, lipschitz)?;
        Ok(Self {
            a,
            b,
            lambda,
            lipschitz,
        })
    }

    pub fn a(&self) -> &ColumnMatrix {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    fn margins(&self, x: &[f64]) -> Vec<f64> {
        self.a
            .transpose_matvec(x)
            .into_iter()
            .zip(&self.b)
            .map(|(s, b)| b * s)
            .collect()
    }
}

impl Objective for LogisticObjective {
    fn dim(&self) -> usize {
        self.a.rows()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let loss: f64 = self.margins(x).iter().map(|&s| softplus(-s)).sum();
        loss + 0.5 * self.lambda * norm_sq(x)
    }

    fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        let weights: Vec<f64> = self
            .margins(x)
            .iter()
            .zip(&self.b)
            .map(|(&s, b)| -b * sigmoid(-s))
            .collect();
        self.a.matvec_into(&weights, out);
        for (o, xi) in out.iter_mut().zip(x) {
            *o += self.lambda * xi;
        }
    }

    fn mu(&self) -> f64 {
        self.lambda
    }

    fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    fn hessian_lipschitz(&self) -> Option<f64> {
        let cubes: f64 = (0..self.a.cols())
            .map(|i| norm_sq(self.a.column(i)).powf(1.5))
            .sum();
        Some(THIRD_DERIVATIVE_BOUND * cubes)
    }
}

/// Draws `A` column by column from the standard normal, then the labels
/// as fair ±1 coin flips.
pub fn build_logistic(d: usize, m: usize, lambda: f64, rng: &mut Rng) -> Result<LogisticObjective> {
    if d == 0 || m == 0 {
        return Err(Error::Parameter("d and m must be at least 1".into()));
    }
    let a = ColumnMatrix::new(d, m, rng.normal_vec(d * m))?;
    let b: Vec<f64> = (0..m).map(|_| rng.sign()).collect();
    LogisticObjective::new(a, b, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::check_gradient;
    use approx::assert_relative_eq;

    fn default_problem() -> LogisticObjective {
        build_logistic(DEFAULT_D, DEFAULT_M, DEFAULT_LAMBDA, &mut Rng::default()).unwrap()
    }

    #[test]
    fn stable_scalar_functions() {
        assert_eq!(softplus(0.0), std::f64::consts::LN_2);
        assert_eq!(softplus(800.0), 800.0);
        assert_eq!(softplus(-800.0), 0.0);
        assert_eq!(sigmoid(0.0), 0.5);
        assert_eq!(sigmoid(800.0), 1.0);
        assert_eq!(sigmoid(-800.0), 0.0);
        assert_relative_eq!(sigmoid(2.0) + sigmoid(-2.0), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn third_derivative_bound_holds() {
        // h‴(s) = (e^{−2s} − e^{−s})/(1 + e^{−s})³
        let mut peak: f64 = 0.0;
        for i in -4000..=4000 {
            let s = i as f64 * 0.005;
            let e = (-s).exp();
            peak = peak.max(((e * e - e) / (1.0 + e).powi(3)).abs());
        }
        assert!(peak <= THIRD_DERIVATIVE_BOUND, "peak {peak}");
        assert!(peak > 0.09);
    }

    #[test]
    fn defaults_and_constants() {
        let f = default_problem();
        assert_eq!((f.dim(), f.b().len(), f.lambda()), (1000, 50, 0.1));
        assert_eq!(f.mu(), 0.1);
        let dense = nalgebra::DMatrix::from_column_slice(1000, 50, f.a().as_slice());
        let top = (dense.transpose() * &dense)
            .symmetric_eigen()
            .eigenvalues
            .max();
        assert_relative_eq!(f.lipschitz(), top + 0.1, max_relative = 1e-12);
        let cubes: f64 = (0..50).map(|i| norm_sq(f.a().column(i)).powf(1.5)).sum();
        assert_relative_eq!(
            f.hessian_lipschitz().unwrap(),
            0.11 * cubes,
            max_relative = 1e-14
        );
    }

    #[test]
    fn gradient_at_origin_is_half_the_label_sum() {
        let f = default_problem();
        let g = f.gradient(&vec![0.0; f.dim()]);
        let mut expected = vec![0.0; f.dim()];
        for (i, b) in f.b().iter().enumerate() {
            for (e, a) in expected.iter_mut().zip(f.a().column(i)) {
                *e -= b * a / 2.0;
            }
        }
        for (gi, ei) in g.iter().zip(&expected) {
            assert_relative_eq!(*gi, *ei, epsilon = 1e-12);
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let f = default_problem();
        let mut rng = Rng::new(17);
        for _ in 0..20 {
            let x = rng.normal_vec(f.dim());
            let err = check_gradient(&f, &x);
            assert!(err <= 1e-6, "err {err}");
        }
    }

    #[test]
    fn hessian_dominates_lambda() {
        let f = default_problem();
        let mut rng = Rng::new(23);
        for _ in 0..20 {
            let x: Vec<f64> = rng.normal_vec(f.dim()).iter().map(|v| 0.1 * v).collect();
            let v = rng.normal_vec(f.dim());
            let step = 1e-4;
            let xp: Vec<f64> = x.iter().zip(&v).map(|(a, b)| a + step * b).collect();
            let xm: Vec<f64> = x.iter().zip(&v).map(|(a, b)| a - step * b).collect();
            let gp = f.gradient(&xp);
            let gm = f.gradient(&xm);
            let curvature: f64 = gp
                .iter()
                .zip(gm.iter())
                .zip(&v)
                .map(|((p, m), vi)| (p - m) * vi)
                .sum::<f64>()
                / (2.0 * step);
            assert!(curvature >= f.lambda() * norm_sq(&v) * (1.0 - 1e-4));
        }
    }

    #[test]
    fn labels_are_signs() {
        let f = default_problem();
        assert!(f.b().iter().all(|&b| b == 1.0 || b == -1.0));
        let bad = ColumnMatrix::new(1, 1, vec![1.0]).unwrap();
        assert!(LogisticObjective::new(bad.clone(), vec![0.5], 0.1).is_err());
        assert!(LogisticObjective::new(bad, vec![1.0], 0.0).is_err());
    }
}
