use crate::error::{check_dim, Error, Result};
use crate::objective::Objective;
use crate::solvers::params::{Coefficients, MethodParams};
use crate::solvers::MethodKind;
use crate::vector::Vector;

/// Iterate of one run.
///
/// `grad` always holds `∇f(x)`, so the HNAG family reuses it in the next
/// step and evaluates the gradient once per iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    pub k: usize,
    pub x: Vector,
    /// `y` for HNAG, HNAG+ and NAG; `v` for the box form; `ξ_k` for TM;
    /// a copy of `x` for GD.
    pub aux: Vector,
    /// `ξ_{k−1}` for TM.
    pub history: Option<Vector>,
    pub grad: Vector,
}

impl SolverState {
    /// Matched start: `y_0 = x_0`, `v_0 = α·x_0`, `ξ_0 = ξ_{−1} = x_0`.
    pub fn new<F: Objective + ?Sized>(f: &F, params: &MethodParams, x0: &[f64]) -> Result<Self> {
        check_dim(f.dim(), x0.len())?;
        if x0.iter().any(|v| !v.is_finite()) {
            return Err(Error::Input("start point must be finite".into()));
        }
        let x = Vector::from(x0);
        let aux = match (params.method, params.coefficients) {
            (MethodKind::HnagBox, Coefficients::Hnag { alpha, .. }) => x.scaled(alpha),
            _ => x.clone(),
        };
        let history = (params.method == MethodKind::Tm).then(|| x.clone());
        let grad = f.gradient(&x);
        Ok(Self {
            k: 0,
            x,
            aux,
            history,
            grad,
        })
    }

    /// The second sequence as reported in traces: `y` directly, `v/α` for
    /// the box form, `ξ` for TM, `x` for GD.
    pub fn y(&self, params: &MethodParams) -> Vector {
        match (params.method, params.coefficients) {
            (MethodKind::HnagBox, Coefficients::Hnag { alpha, .. }) => self.aux.scaled(1.0 / alpha),
            _ => self.aux.clone(),
        }
    }
}

/// Advances `state` by one iteration.
///
/// Fails with [`Error::Divergence`] carrying the new iteration index when
/// any coordinate becomes non-finite.
pub fn step<F: Objective + ?Sized>(
    f: &F,
    params: &MethodParams,
    state: &mut SolverState,
) -> Result<()> {
    check_dim(f.dim(), state.x.dim())?;
    check_dim(f.dim(), state.aux.dim())?;
    let inv_l = params.inv_lipschitz;
    match (params.method, params.coefficients) {
        (MethodKind::Gd, Coefficients::Gd { step }) => {
            for (xi, gi) in state.x.iter_mut().zip(state.grad.iter()) {
                *xi -= step * gi;
            }
            f.gradient_into(&state.x, &mut state.grad);
            state.aux.copy_from_slice(&state.x);
        }
        (MethodKind::Nag, Coefficients::Nag { step, momentum }) => {
            let gy = f.gradient(&state.aux);
            let x_next: Vector = state
                .aux
                .iter()
                .zip(gy.iter())
                .map(|(y, g)| y - step * g)
                .collect();
            for ((y, xn), xo) in state.aux.iter_mut().zip(x_next.iter()).zip(state.x.iter()) {
                *y = xn + momentum * (xn - xo);
            }
            state.x = x_next;
            f.gradient_into(&state.x, &mut state.grad);
        }
        (
            MethodKind::Tm,
            Coefficients::Tm {
                alpha,
                beta,
                gamma,
                delta,
                ..
            },
        ) => {
            let prev = state
                .history
                .as_mut()
                .ok_or_else(|| Error::Input("triple momentum state lacks its history".into()))?;
            let xi = &state.aux;
            let y: Vector = xi
                .iter()
                .zip(prev.iter())
                .map(|(c, p)| (1.0 + gamma) * c - gamma * p)
                .collect();
            let gy = f.gradient(&y);
            let xi_next: Vector = xi
                .iter()
                .zip(prev.iter())
                .zip(gy.iter())
                .map(|((c, p), g)| (1.0 + beta) * c - beta * p - alpha * g)
                .collect();
            for ((x, n), c) in state.x.iter_mut().zip(xi_next.iter()).zip(xi.iter()) {
                *x = (1.0 + delta) * n - delta * c;
            }
            *prev = std::mem::replace(&mut state.aux, xi_next);
            f.gradient_into(&state.x, &mut state.grad);
        }
        (MethodKind::Hnag | MethodKind::HnagPlus, Coefficients::Hnag { alpha, alpha_beta }) => {
            // x_{k+1} = (x_k + cα y_k − αβ ∇f(x_k)) / (1 + cα), c = 1 or 2
            // y_{k+1} = (y_k + α x_{k+1} − (α/μ) ∇f(x_{k+1})) / (1 + α)
            let c = if params.method == MethodKind::HnagPlus {
                2.0
            } else {
                1.0
            };
            let denom = 1.0 + c * alpha;
            for ((x, y), g) in state
                .x
                .iter_mut()
                .zip(state.aux.iter())
                .zip(state.grad.iter())
            {
                *x = (*x + c * alpha * y - alpha_beta * g) / denom;
            }
            f.gradient_into(&state.x, &mut state.grad);
            let a_mu = alpha / params.mu;
            for ((y, x), g) in state
                .aux
                .iter_mut()
                .zip(state.x.iter())
                .zip(state.grad.iter())
            {
                *y = (*y + alpha * x - a_mu * g) / (1.0 + alpha);
            }
        }
        (MethodKind::HnagBox, Coefficients::Hnag { alpha, .. }) => {
            // v_{k+1} = (v_k + α² x_k − ∇f(x_k)/L) / (1 + α)
            // x_{k+1} = (x_k + v_{k+1} − 2∇f(x_k)/L) / (1 + α)
            let a2 = alpha * alpha;
            for ((v, x), g) in state
                .aux
                .iter_mut()
                .zip(state.x.iter_mut())
                .zip(state.grad.iter())
            {
                *v = (*v + a2 * *x - inv_l * g) / (1.0 + alpha);
                *x = (*x + *v - 2.0 * inv_l * g) / (1.0 + alpha);
            }
            f.gradient_into(&state.x, &mut state.grad);
        }
        (method, _) => {
            return Err(Error::Parameter(format!(
                "parameters do not belong to method {method}"
            )))
        }
    }
    state.k += 1;
    let finite = state.x.is_finite()
        && state.aux.is_finite()
        && state.grad.is_finite()
        && state.history.as_ref().is_none_or(|h| h.is_finite());
    if !finite {
        return Err(Error::Divergence { iteration: state.k });
    }
    Ok(())
}
