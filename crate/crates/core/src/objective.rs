//! Strongly convex, smooth objectives and the wrappers the theory checks
//! are phrased in terms of.
//!
//! An [`Objective`] carries its own constants: the strong-convexity modulus
//! `mu`, the gradient Lipschitz constant `lipschitz` (`L`), optionally the
//! Hessian Lipschitz constant `M`, and optionally a known minimizer. The
//! wrappers here never cache evaluations; every call re-evaluates the base.

use crate::error::{check_dim, Error, Result};
use crate::vector::{dist_sq, Vector};

/// A `mu`-strongly convex, `L`-smooth function on `R^dim`.
///
/// Implementations must be deterministic: the same input always yields the
/// same value and gradient, bit for bit.
pub trait Objective: Send + Sync {
    fn dim(&self) -> usize;

    fn value(&self, x: &[f64]) -> f64;

    /// Writes `∇f(x)` into `out` (`out.len() == dim`).
    fn gradient_into(&self, x: &[f64], out: &mut [f64]);

    fn gradient(&self, x: &[f64]) -> Vector {
        let mut g = Vector::zeros(self.dim());
        self.gradient_into(x, &mut g);
        g
    }

    fn mu(&self) -> f64;

    fn lipschitz(&self) -> f64;

    /// Lipschitz constant of the Hessian, when one is known.
    fn hessian_lipschitz(&self) -> Option<f64> {
        None
    }

    /// The exact (or oracle-certified) minimizer, when one is attached.
    fn minimizer(&self) -> Option<&Vector> {
        None
    }

    fn condition_number(&self) -> f64 {
        self.lipschitz() / self.mu()
    }
}

impl<T: Objective + ?Sized> Objective for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn value(&self, x: &[f64]) -> f64 {
        (**self).value(x)
    }
    fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        (**self).gradient_into(x, out)
    }
    fn mu(&self) -> f64 {
        (**self).mu()
    }
    fn lipschitz(&self) -> f64 {
        (**self).lipschitz()
    }
    fn hessian_lipschitz(&self) -> Option<f64> {
        (**self).hessian_lipschitz()
    }
    fn minimizer(&self) -> Option<&Vector> {
        (**self).minimizer()
    }
}

impl<T: Objective + ?Sized> Objective for Box<T> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn value(&self, x: &[f64]) -> f64 {
        (**self).value(x)
    }
    fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        (**self).gradient_into(x, out)
    }
    fn mu(&self) -> f64 {
        (**self).mu()
    }
    fn lipschitz(&self) -> f64 {
        (**self).lipschitz()
    }
    fn hessian_lipschitz(&self) -> Option<f64> {
        (**self).hessian_lipschitz()
    }
    fn minimizer(&self) -> Option<&Vector> {
        (**self).minimizer()
    }
}

/// Checks the constants every objective must satisfy.
pub fn validate_constants(mu: f64, lipschitz: f64) -> Result<()> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Parameter(format!("mu must be positive, got {mu}")));
    }
    if !(lipschitz >= mu && lipschitz.is_finite()) {
        return Err(Error::Parameter(format!(
            "lipschitz must satisfy mu <= L, got mu = {mu}, L = {lipschitz}"
        )));
    }
    Ok(())
}

/// `f_{-μ̂}(x) = f(x) − (μ̂/2)‖x − x⋆‖²`.
///
/// The remaining strong convexity is `δ = μ − μ̂`, reported as `mu()`.
/// `lipschitz()` reports the base `L`: it still bounds the shifted gradient,
/// and it keeps the gradient step `x − ∇f_{-μ̂}(x)/L` on the same scale as
/// the unshifted one.
#[derive(Debug, Clone)]
pub struct ShiftedObjective<F> {
    base: F,
    shift: f64,
    center: Vector,
}

impl<F: Objective> ShiftedObjective<F> {
    pub fn new(base: F, shift: f64, center: Vector) -> Result<Self> {
        check_dim(base.dim(), center.dim())?;
        if !(0.0..=base.mu()).contains(&shift) {
            return Err(Error::Parameter(format!(
                "shift must lie in [0, mu = {}], got {shift}",
                base.mu()
            )));
        }
        Ok(Self {
            base,
            shift,
            center,
        })
    }

    /// Shifts around the base's attached minimizer.
    pub fn around_minimizer(base: F, shift: f64) -> Result<Self> {
        let center = base
            .minimizer()
            .cloned()
            .ok_or_else(|| Error::UnknownMinimizer("shifted objective needs x⋆".into()))?;
        Self::new(base, shift, center)
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    /// Remaining convexity `δ = μ − μ̂`.
    pub fn delta(&self) -> f64 {
        self.base.mu() - self.shift
    }
}

impl<F: Objective> Objective for ShiftedObjective<F> {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let v = self.base.value(x);
        if self.shift == 0.0 {
            return v;
        }
        v - 0.5 * self.shift * dist_sq(x, &self.center)
    }

    fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        self.base.gradient_into(x, out);
        if self.shift == 0.0 {
            return;
        }
        for ((o, xi), ci) in out.iter_mut().zip(x).zip(self.center.iter()) {
            *o -= self.shift * (xi - ci);
        }
    }

    fn mu(&self) -> f64 {
        self.delta()
    }

    fn lipschitz(&self) -> f64 {
        self.base.lipschitz()
    }

    fn hessian_lipschitz(&self) -> Option<f64> {
        self.base.hessian_lipschitz()
    }

    fn minimizer(&self) -> Option<&Vector> {
        Some(&self.center)
    }
}

/// Attaches a minimizer (typically the oracle's output) to an objective.
#[derive(Debug, Clone)]
pub struct Anchored<F> {
    inner: F,
    minimizer: Vector,
}

impl<F: Objective> Anchored<F> {
    pub fn new(inner: F, minimizer: Vector) -> Result<Self> {
        check_dim(inner.dim(), minimizer.dim())?;
        Ok(Self { inner, minimizer })
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }

    pub fn into_inner(self) -> F {
        self.inner
    }
}

impl<F: Objective> Objective for Anchored<F> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn value(&self, x: &[f64]) -> f64 {
        self.inner.value(x)
    }
    fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        self.inner.gradient_into(x, out)
    }
    fn mu(&self) -> f64 {
        self.inner.mu()
    }
    fn lipschitz(&self) -> f64 {
        self.inner.lipschitz()
    }
    fn hessian_lipschitz(&self) -> Option<f64> {
        self.inner.hessian_lipschitz()
    }
    fn minimizer(&self) -> Option<&Vector> {
        Some(&self.minimizer)
    }
}

/// `f(x) − ⟨∇f(p), x − p⟩` for a fixed point `p`.
///
/// The tilt leaves `μ`, `L` and `M` unchanged and makes `p` a stationary
/// point whose gradient evaluates to exactly zero in floating point, so
/// fixed-point behaviour can be checked bit-tight on problems whose true
/// minimizer is only known approximately.
#[derive(Debug, Clone)]
pub struct Tilted<F> {
    inner: F,
    anchor: Vector,
    tilt: Vector,
}

impl<F: Objective> Tilted<F> {
    pub fn new(inner: F, anchor: Vector) -> Result<Self> {
        check_dim(inner.dim(), anchor.dim())?;
        let tilt = inner.gradient(&anchor);
        Ok(Self {
            inner,
            anchor,
            tilt,
        })
    }
}

impl<F: Objective> Objective for Tilted<F> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn value(&self, x: &[f64]) -> f64 {
        let shifted: f64 = x
            .iter()
            .zip(self.anchor.iter())
            .zip(self.tilt.iter())
            .map(|((xi, pi), ti)| ti * (xi - pi))
            .sum();
        self.inner.value(x) - shifted
    }
    fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        self.inner.gradient_into(x, out);
        for (o, t) in out.iter_mut().zip(self.tilt.iter()) {
            *o -= t;
        }
    }
    fn mu(&self) -> f64 {
        self.inner.mu()
    }
    fn lipschitz(&self) -> f64 {
        self.inner.lipschitz()
    }
    fn hessian_lipschitz(&self) -> Option<f64> {
        self.inner.hessian_lipschitz()
    }
    fn minimizer(&self) -> Option<&Vector> {
        Some(&self.anchor)
    }
}

/// `⟨∇f(x), x − c⟩`, a quantity that shows up in every strong-Lyapunov bound.
pub(crate) fn grad_dot_offset(grad: &[f64], x: &[f64], center: &[f64]) -> f64 {
    grad.iter()
        .zip(x)
        .zip(center)
        .map(|((g, xi), ci)| g * (xi - ci))
        .sum()
}
