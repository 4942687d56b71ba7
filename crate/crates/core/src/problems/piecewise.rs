use crate::error::{check_dim, Error, Result};
use crate::objective::{validate_constants, Objective};
use crate::problems::dense::{gram, ColumnMatrix};
use crate::problems::eigen::largest_eigenvalue;
use crate::problems::rng::Rng;
use crate::vector::norm_sq;

pub const DEFAULT_MU: f64 = 1.0;
pub const DEFAULT_LIPSCHITZ: f64 = 1e4;
pub const DEFAULT_D: usize = 100;
pub const DEFAULT_P: usize = 5;
pub const DEFAULT_EPS: f64 = 1e-6;

// exp(−709) is the last double above the underflow floor.
const EXP_FLOOR: f64 = 709.0;

/// `h(t) = ½t²e^{−ε/t}` for `t > 0`, zero otherwise.
pub fn h(t: f64, eps: f64) -> f64 {
    if t <= eps / EXP_FLOOR {
        return 0.0;
    }
    0.5 * t * t * (-eps / t).exp()
}

pub fn h_prime(t: f64, eps: f64) -> f64 {
    if t <= eps / EXP_FLOOR {
        return 0.0;
    }
    (-eps / t).exp() * (t + 0.5 * eps)
}

/// Increases from 0 to 1, so `Σ h″ a_i a_iᵀ ⪯ ‖A‖²I`.
pub fn h_second(t: f64, eps: f64) -> f64 {
    if t <= eps / EXP_FLOOR {
        return 0.0;
    }
    let u = eps / t;
    (-u).exp() * (1.0 + u + 0.5 * u * u)
}

/// `e^{−ε/t}·ε³/(2t⁴)`, maximal at `t = ε/4` with value `128e⁻⁴/ε`.
pub fn h_third(t: f64, eps: f64) -> f64 {
    if t <= eps / EXP_FLOOR {
        return 0.0;
    }
    let u = eps / t;
    (-u).exp() * u.powi(4) / (2.0 * eps)
}

/// `f(x) = Σᵢ h(a_iᵀx − b_i) + (μ/2)‖x‖²`.
#[derive(Debug, Clone)]
pub struct PiecewiseSmoothObjective {
    a: ColumnMatrix,
    b: Vec<f64>,
    mu: f64,
    lipschitz: f64,
    eps: f64,
}

impl PiecewiseSmoothObjective {
    /// Takes `A` as is. `lipschitz` must be at least `μ + ‖A‖²`.
    pub fn new(a: ColumnMatrix, b: Vec<f64>, mu: f64, lipschitz: f64, eps: f64) -> Result<Self> {
        check_dim(a.cols(), b.len())?;
        validate_constants(mu, lipschitz)?;
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::Parameter(format!("eps must be positive, got {eps}")));
        }
        Ok(Self {
            a,
            b,
            mu,
            lipschitz,
            eps,
        })
    }

    pub fn a(&self) -> &ColumnMatrix {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `a_iᵀx − b_i` for every column.
    pub fn residuals(&self, x: &[f64]) -> Vec<f64> {
        let mut s = self.a.transpose_matvec(x);
        for (si, bi) in s.iter_mut().zip(&self.b) {
            *si -= bi;
        }
        s
    }
}

impl Objective for PiecewiseSmoothObjective {
    fn dim(&self) -> usize {
        self.a.rows()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let hs: f64 = self.residuals(x).iter().map(|&s| h(s, self.eps)).sum();
        hs + 0.5 * self.mu * norm_sq(x)
    }

    fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        let weights: Vec<f64> = self
            .residuals(x)
            .iter()
            .map(|&s| h_prime(s, self.eps))
            .collect();
        self.a.matvec_into(&weights, out);
        for (o, xi) in out.iter_mut().zip(x) {
            *o += self.mu * xi;
        }
    }

    fn mu(&self) -> f64 {
        self.mu
    }

    fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    /// `max|h‴|·Σ‖a_i‖³`; finite but huge for small `ε`.
    fn hessian_lipschitz(&self) -> Option<f64> {
        let cubes: f64 = (0..self.a.cols())
            .map(|i| norm_sq(self.a.column(i)).powf(1.5))
            .sum();
        Some(128.0 * (-4.0f64).exp() / self.eps * cubes)
    }
}

/// Draws `A` (column by column) and then `b` from the standard normal and
/// rescales `A` so that `‖A‖ = √(L − μ)`.
pub fn build_piecewise(
    d: usize,
    p: usize,
    mu: f64,
    lipschitz: f64,
    eps: f64,
    rng: &mut Rng,
) -> Result<PiecewiseSmoothObjective> {
    if d == 0 || p == 0 {
        return Err(Error::Parameter("d and p must be at least 1".into()));
    }
    validate_constants(mu, lipschitz)?;
    if lipschitz <= mu {
        return Err(Error::Parameter("piecewise objective needs mu < L".into()));
    }
    let mut a = ColumnMatrix::new(d, p, rng.normal_vec(d * p))?;
    let b = rng.normal_vec(p);
    let g = gram(&a);
    let top = largest_eigenvalue(|x, out| g.matvec_into(x, out), p, 1e-12)
        .map_err(|e| Error::Numeric(format!("scaling A failed: {e}")))?;
    a.scale((lipschitz - mu).sqrt() / top.sqrt());
    PiecewiseSmoothObjective::new(a, b, mu, lipschitz, eps)
}
