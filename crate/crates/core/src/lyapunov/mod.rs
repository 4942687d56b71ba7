//! Lyapunov energies and numerical checks of their decay.
//!
//! All energies are measured against the objective's attached minimizer
//! `x⋆`. Bregman divergences `D_f(x, x⋆)` include the `⟨∇f(x⋆), x − x⋆⟩`
//! term, so an oracle minimizer with a tiny residual gradient is handled
//! the same way as an exact one.

mod contraction;
mod schedule;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bregman::bregman_asymmetry;
use crate::error::{check_dim, Error, Result};
use crate::objective::{grad_dot_offset, Objective};
use crate::vector::{dist_sq, dot, norm_sq, Vector};

pub use contraction::{contraction_residuals, ContractionReport, Theorem, CONTRACTION_CSV_HEADER};
pub use schedule::{shift_schedule, ShiftSchedule, MAX_SCHEDULE_A};

/// `x⋆` with `f(x⋆)` and `∇f(x⋆)` evaluated once.
#[derive(Debug, Clone)]
pub(crate) struct Anchor {
    pub point: Vector,
    pub value: f64,
    pub grad: Vector,
}

impl Anchor {
    pub fn new<F: Objective + ?Sized>(f: &F, point: Vector) -> Self {
        let value = f.value(&point);
        let grad = f.gradient(&point);
        Self { point, value, grad }
    }

    fn of<F: Objective + ?Sized>(f: &F) -> Result<Self> {
        let point = f.minimizer().cloned().ok_or_else(|| {
            Error::UnknownMinimizer("Lyapunov values are measured against x⋆".into())
        })?;
        Ok(Self::new(f, point))
    }

    /// `D_f(x, x⋆)` given `f(x)`.
    pub fn bregman_from(&self, fx: f64, x: &[f64]) -> f64 {
        fx - self.value - grad_dot_offset(&self.grad, x, &self.point)
    }

    /// `∇f(x) − ∇f(x⋆)`
    fn relative_gradient<F: Objective + ?Sized>(&self, f: &F, x: &[f64]) -> Vec<f64> {
        let g = f.gradient(x);
        g.iter().zip(self.grad.iter()).map(|(a, b)| a - b).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LyapunovKind {
    /// `D_f(x, x⋆) + (μ/2)‖y − x⋆‖²`
    EHnag,
    /// `D_{f−μ}(x, x⋆) + μ‖y − x⋆‖²`
    EHnagPlus,
    /// `D_{f−μ̂}(x, x⋆) + (μ/2)‖y − x⋆‖²`
    EPartial,
}

/// Evaluates a Lyapunov function at `(x, y)`.
///
/// `mu_hat` is only read for [`LyapunovKind::EPartial`].
pub fn lyapunov<F: Objective + ?Sized>(
    kind: LyapunovKind,
    f: &F,
    x: &[f64],
    y: &[f64],
    mu_hat: f64,
) -> Result<f64> {
    check_dim(f.dim(), x.len())?;
    check_dim(f.dim(), y.len())?;
    let anchor = Anchor::of(f)?;
    let mu = f.mu();
    let d = anchor.bregman_from(f.value(x), x);
    let x_err = dist_sq(x, &anchor.point);
    let y_err = dist_sq(y, &anchor.point);
    Ok(match kind {
        LyapunovKind::EHnag => d + 0.5 * mu * y_err,
        LyapunovKind::EHnagPlus => d - 0.5 * mu * x_err + mu * y_err,
        LyapunovKind::EPartial => {
            check_shift(mu_hat, mu)?;
            d - 0.5 * mu_hat * x_err + 0.5 * mu * y_err
        }
    })
}

fn check_shift(mu_hat: f64, mu: f64) -> Result<()> {
    if !(0.0..=mu).contains(&mu_hat) {
        return Err(Error::Parameter(format!(
            "mu_hat must lie in [0, mu = {mu}], got {mu_hat}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StrongVariant {
    /// HNAG flow with `E_HNAG`:
    /// `−⟨∇E, 𝒢⟩ ≥ E + β‖∇f(x)‖² + (μ/2)‖x − y‖²`.
    Hnag,
    /// HNAG+ flow with `E_HNAG_PLUS`:
    /// `−⟨∇E, 𝒢⟩ ≥ 2E + β‖∇f_{−μ}(x)‖² + βμ⟨∇f_{−μ}(x), x − x⋆⟩`.
    HnagPlus,
    /// HNAG flow with `E_PARTIAL`, `δ = μ − μ̂`:
    /// `−⟨∇E, 𝒢⟩ ≥ (2 − √(δ/μ))E + (1 − √(δ/μ))Δ_f(x, x⋆)
    ///  + β‖∇f_{−μ̂}(x)‖² + βμ̂⟨∇f_{−μ̂}(x), x − x⋆⟩`.
    Partial,
}

impl StrongVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            StrongVariant::Hnag => "HNAG",
            StrongVariant::HnagPlus => "HNAG_PLUS",
            StrongVariant::Partial => "PARTIAL",
        }
    }
}

impl fmt::Display for StrongVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StrongVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "HNAG" => Ok(StrongVariant::Hnag),
            "HNAG_PLUS" | "HNAG+" => Ok(StrongVariant::HnagPlus),
            "PARTIAL" => Ok(StrongVariant::Partial),
            _ => Err(Error::Input(format!(
                "unknown strong-Lyapunov variant '{s}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrongResidual {
    /// `−⟨∇E(z), 𝒢(z)⟩`
    pub lhs: f64,
    /// The lower bound claimed for it.
    pub rhs: f64,
    /// `lhs − rhs`, nonnegative when the bound holds.
    pub residual: f64,
}

impl StrongResidual {
    /// `residual ≥ −tol·(1 + |lhs|)`
    pub fn holds(&self, tol: f64) -> bool {
        self.residual >= -tol * (1.0 + self.lhs.abs())
    }
}

/// Evaluates both sides of a strong Lyapunov inequality at `z = (x, y)`.
///
/// `∇E` and the flow field `𝒢` are assembled from `∇f(x) − ∇f(x⋆)`; for an
/// exact minimizer that is `∇f(x)`.
pub fn strong_lyapunov_residual<F: Objective + ?Sized>(
    variant: StrongVariant,
    f: &F,
    x: &[f64],
    y: &[f64],
    beta: f64,
    mu_hat: f64,
) -> Result<StrongResidual> {
    check_dim(f.dim(), x.len())?;
    check_dim(f.dim(), y.len())?;
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Parameter(format!(
            "beta must be positive, got {beta}"
        )));
    }
    let anchor = Anchor::of(f)?;
    let mu = f.mu();
    let xs = &anchor.point;
    let g = anchor.relative_gradient(f, x);
    let d = anchor.bregman_from(f.value(x), x);
    let x_err: Vec<f64> = x.iter().zip(xs.iter()).map(|(a, b)| a - b).collect();
    let y_err: Vec<f64> = y.iter().zip(xs.iter()).map(|(a, b)| a - b).collect();
    let y_minus_x: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    // Second component of 𝒢, shared by both flows: x − y − ∇f/μ.
    let g_y: Vec<f64> = y_minus_x
        .iter()
        .zip(&g)
        .map(|(d, gi)| -d - gi / mu)
        .collect();

    let (lhs, rhs) = match variant {
        StrongVariant::Hnag => {
            let g_x: Vec<f64> = y_minus_x
                .iter()
                .zip(&g)
                .map(|(d, gi)| d - beta * gi)
                .collect();
            let lhs = -dot(&g, &g_x) - mu * dot(&y_err, &g_y);
            let e = d + 0.5 * mu * norm_sq(&y_err);
            let rhs = e + beta * norm_sq(&g) + 0.5 * mu * norm_sq(&y_minus_x);
            (lhs, rhs)
        }
        StrongVariant::HnagPlus => {
            let gs: Vec<f64> = g.iter().zip(&x_err).map(|(gi, e)| gi - mu * e).collect();
            let g_x: Vec<f64> = y_minus_x
                .iter()
                .zip(&g)
                .map(|(d, gi)| 2.0 * d - beta * gi)
                .collect();
            let lhs = -dot(&gs, &g_x) - 2.0 * mu * dot(&y_err, &g_y);
            let e = d - 0.5 * mu * norm_sq(&x_err) + mu * norm_sq(&y_err);
            let rhs = 2.0 * e + beta * norm_sq(&gs) + beta * mu * dot(&gs, &x_err);
            (lhs, rhs)
        }
        StrongVariant::Partial => {
            check_shift(mu_hat, mu)?;
            let ratio = ((mu - mu_hat) / mu).sqrt();
            let gs: Vec<f64> = g
                .iter()
                .zip(&x_err)
                .map(|(gi, e)| gi - mu_hat * e)
                .collect();
            let g_x: Vec<f64> = y_minus_x
                .iter()
                .zip(&g)
                .map(|(d, gi)| d - beta * gi)
                .collect();
            let lhs = -dot(&gs, &g_x) - mu * dot(&y_err, &g_y);
            let e = d - 0.5 * mu_hat * norm_sq(&x_err) + 0.5 * mu * norm_sq(&y_err);
            let asym = bregman_asymmetry(f, x, xs)?;
            let rhs = (2.0 - ratio) * e
                + (1.0 - ratio) * asym
                + beta * norm_sq(&gs)
                + beta * mu_hat * dot(&gs, &x_err);
            (lhs, rhs)
        }
    };
    Ok(StrongResidual {
        lhs,
        rhs,
        residual: lhs - rhs,
    })
}

/// `(|Δ_f(x, y)|, (M/6)‖x − y‖³)`; the first never exceeds the second for
/// an objective with `M`-Lipschitz Hessian.
pub fn asymmetry_bound_check<F: Objective + ?Sized>(
    f: &F,
    x: &[f64],
    y: &[f64],
) -> Result<(f64, f64)> {
    let m = f
        .hessian_lipschitz()
        .ok_or_else(|| Error::Capability("objective has no Hessian Lipschitz constant".into()))?;
    let asym = bregman_asymmetry(f, x, y)?;
    Ok((asym.abs(), m / 6.0 * dist_sq(x, y).powf(1.5)))
}

/// Both sides of `‖∇f_k(x)‖² ≥ ‖∇f_{k−1}(x)‖² − 2(μ_k − μ_{k−1})⟨∇f_{k−1}(x), x − x⋆⟩`
/// where `f_j = f_{−μ_j}`.
pub fn gradient_norm_ineq<F: Objective + ?Sized>(
    f: &F,
    x: &[f64],
    mu_prev: f64,
    mu_next: f64,
) -> Result<(f64, f64)> {
    check_dim(f.dim(), x.len())?;
    let anchor = Anchor::of(f)?;
    let g = f.gradient(x);
    let shifted = |s: f64| -> Vec<f64> {
        g.iter()
            .zip(x)
            .zip(anchor.point.iter())
            .map(|((gi, xi), ci)| gi - s * (xi - ci))
            .collect()
    };
    let prev = shifted(mu_prev);
    let next = shifted(mu_next);
    let lhs = norm_sq(&next);
    let rhs = norm_sq(&prev) - 2.0 * (mu_next - mu_prev) * grad_dot_offset(&prev, x, &anchor.point);
    Ok((lhs, rhs))
}
