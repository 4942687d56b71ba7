use crate::error::Result;
use crate::objective::validate_constants;
use crate::solvers::MethodKind;

/// Step constants of one method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coefficients {
    Gd {
        step: f64,
    },
    Nag {
        step: f64,
        momentum: f64,
    },
    /// Triple momentum (Van Scoy, Freeman, Lynch 2018), parametrized by
    /// `ρ = 1 − 1/√κ`:
    /// `α = (1+ρ)/L`, `β = ρ²/(2−ρ)`, `γ = ρ²/((1+ρ)(2−ρ))`, `δ = ρ²/(1−ρ²)`.
    Tm {
        rho: f64,
        alpha: f64,
        beta: f64,
        gamma: f64,
        delta: f64,
    },
    /// Shared by HNAG, HNAG+ and the box form; `β` is stored through `αβ`.
    Hnag {
        alpha: f64,
        alpha_beta: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodParams {
    pub method: MethodKind,
    pub mu: f64,
    pub lipschitz: f64,
    pub inv_lipschitz: f64,
    pub coefficients: Coefficients,
}

impl MethodParams {
    /// `α` for the HNAG family.
    pub fn alpha(&self) -> Option<f64> {
        match self.coefficients {
            Coefficients::Hnag { alpha, .. } => Some(alpha),
            _ => None,
        }
    }

    /// `β = (αβ)/α` for the HNAG family.
    pub fn beta(&self) -> Option<f64> {
        match self.coefficients {
            Coefficients::Hnag { alpha, alpha_beta } => Some(alpha_beta / alpha),
            _ => None,
        }
    }

    pub fn momentum(&self) -> Option<f64> {
        match self.coefficients {
            Coefficients::Nag { momentum, .. } => Some(momentum),
            Coefficients::Tm { beta, .. } => Some(beta),
            _ => None,
        }
    }
}

/// Recommended constants for `method` on a `μ`-strongly convex, `L`-smooth
/// objective.
///
/// * HNAG, box form: `α = √(2μ/L)`, `αβ = 1/L`
/// * HNAG+: `α = √(μ/L)`, `αβ = 1/L`
/// * GD: step `2/(L+μ)`
/// * NAG: step `1/L`, momentum `(√κ−1)/(√κ+1)`
/// * TM: see [`Coefficients::Tm`]
pub fn make_params(method: MethodKind, mu: f64, lipschitz: f64) -> Result<MethodParams> {
    validate_constants(mu, lipschitz)?;
    let inv_lipschitz = 1.0 / lipschitz;
    let sqrt_kappa = (lipschitz / mu).sqrt();
    let coefficients = match method {
        MethodKind::Gd => Coefficients::Gd {
            step: 2.0 / (lipschitz + mu),
        },
        MethodKind::Nag => Coefficients::Nag {
            step: inv_lipschitz,
            momentum: (sqrt_kappa - 1.0) / (sqrt_kappa + 1.0),
        },
        MethodKind::Tm => {
            let rho = 1.0 - 1.0 / sqrt_kappa;
            Coefficients::Tm {
                rho,
                alpha: (1.0 + rho) / lipschitz,
                beta: rho * rho / (2.0 - rho),
                gamma: rho * rho / ((1.0 + rho) * (2.0 - rho)),
                delta: rho * rho / (1.0 - rho * rho),
            }
        }
        MethodKind::Hnag | MethodKind::HnagBox => Coefficients::Hnag {
            alpha: (2.0 * mu / lipschitz).sqrt(),
            alpha_beta: inv_lipschitz,
        },
        MethodKind::HnagPlus => Coefficients::Hnag {
            alpha: (mu / lipschitz).sqrt(),
            alpha_beta: inv_lipschitz,
        },
    };
    Ok(MethodParams {
        method,
        mu,
        lipschitz,
        inv_lipschitz,
        coefficients,
    })
}
