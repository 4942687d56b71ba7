use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solvers::{Column, MethodKind, Trace};

const MIN_LENGTH: usize = 20;
const MIN_WINDOW: usize = 10;
/// Entries below this fraction of `e_0` sit on the floating-point floor.
const FLOOR: f64 = 1e-28;
/// Slopes below this are treated as flat.
const FLAT_SLOPE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    /// `exp(slope)` of the least-squares line through `(k, ln e_k)`.
    pub rate: f64,
    /// Fitted indices `k_start..k_end` (end exclusive).
    pub window: (usize, usize),
    /// RMS deviation of `ln e_k` from the fitted line.
    pub fit_residual: f64,
    pub metric: Option<Column>,
}

/// Fits a geometric rate to the tail of `errors`.
///
/// The sequence is cut at the first entry below `10⁻²⁸·e_0`; the last
/// `tail_fraction` of what remains is fitted.
pub fn estimate_rate(errors: &[f64], tail_fraction: f64) -> Result<RateEstimate> {
    if errors.len() < MIN_LENGTH {
        return Err(Error::Estimation(format!(
            "need at least {MIN_LENGTH} values, got {}",
            errors.len()
        )));
    }
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(Error::Parameter(format!(
            "tail fraction must lie in (0, 1], got {tail_fraction}"
        )));
    }
    if errors.iter().any(|e| e.is_nan() || *e < 0.0) {
        return Err(Error::Input("errors must be nonnegative numbers".into()));
    }
    let e0 = errors[0];
    if !(e0 > 0.0 && e0.is_finite()) {
        return Err(Error::Estimation(
            "first error must be positive and finite".into(),
        ));
    }
    let usable = errors
        .iter()
        .position(|&e| e < FLOOR * e0 || !e.is_finite())
        .unwrap_or(errors.len());
    let start = ((usable as f64) * (1.0 - tail_fraction)).floor() as usize;
    let n = usable - start;
    if n < MIN_WINDOW {
        return Err(Error::Estimation(format!(
            "only {n} usable points in the fitting window, need {MIN_WINDOW}"
        )));
    }
    let ks: Vec<f64> = (start..usable).map(|k| k as f64).collect();
    let ls: Vec<f64> = errors[start..usable].iter().map(|e| e.ln()).collect();
    let nf = n as f64;
    let k_mean = ks.iter().sum::<f64>() / nf;
    let l_mean = ls.iter().sum::<f64>() / nf;
    let sxx: f64 = ks.iter().map(|k| (k - k_mean).powi(2)).sum();
    let sxy: f64 = ks
        .iter()
        .zip(&ls)
        .map(|(k, l)| (k - k_mean) * (l - l_mean))
        .sum();
    let mut slope = sxy / sxx;
    let intercept = l_mean - slope * k_mean;
    let fit_residual = (ks
        .iter()
        .zip(&ls)
        .map(|(k, l)| (l - intercept - slope * k).powi(2))
        .sum::<f64>()
        / nf)
        .sqrt();
    if slope > FLAT_SLOPE {
        return Err(Error::Estimation(format!(
            "sequence grows (slope {slope:e})"
        )));
    }
    if slope > 0.0 {
        slope = 0.0;
    }
    Ok(RateEstimate {
        rate: slope.exp(),
        window: (start, usable),
        fit_residual,
        metric: None,
    })
}

pub fn estimate_trace_rate(
    trace: &Trace,
    column: Column,
    tail_fraction: f64,
) -> Result<RateEstimate> {
    let mut est = estimate_rate(&trace.column(column), tail_fraction)?;
    est.metric = Some(column);
    Ok(est)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    General,
    QuadraticOrAsymptotic,
}

/// Per-step contraction factors from the convergence theory.
///
/// `None` for the box form, which has no analysis of its own.
pub fn theoretical_rate(method: MethodKind, kappa: f64, regime: Regime) -> Result<Option<f64>> {
    if kappa.is_nan() || kappa < 1.0 || !kappa.is_finite() {
        return Err(Error::Parameter(format!(
            "kappa must be at least 1, got {kappa}"
        )));
    }
    let sk = kappa.sqrt();
    Ok(match method {
        MethodKind::Gd => Some((1.0 - 2.0 / kappa).max(0.0)),
        MethodKind::Nag => Some(1.0 - 1.0 / sk),
        MethodKind::Tm => Some((1.0 - 2.0 / sk).max(0.0)),
        MethodKind::Hnag => Some(match regime {
            Regime::General => 1.0 / (1.0 + (2.0 / kappa).sqrt()),
            Regime::QuadraticOrAsymptotic => 1.0 / (1.0 + 2.0 * (2.0 / kappa).sqrt()),
        }),
        MethodKind::HnagPlus => Some(1.0 / (1.0 + 2.0 / sk)),
        MethodKind::HnagBox => None,
    })
}
