use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper end of the admissible growth parameter, `¾(√2 − 1)`.
pub const MAX_SCHEDULE_A: f64 = 0.75 * (std::f64::consts::SQRT_2 - 1.0);

/// The analysis-only shift sequences, in units of `μ`:
///
/// * `δ_k = δ₀(1 + a√(2ρ))^{−2k/3}`
/// * `μ_k = μ − δ_k`
/// * `c_k = 2 − √(δ_k/μ)`
/// * `r_k = (1 + c_k√(2ρ))⁻¹`
///
/// No solver reads these; they exist to check the bookkeeping of the
/// asymptotic rate argument.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftSchedule {
    pub delta0: f64,
    pub a: f64,
    pub rho: f64,
    pub delta: Vec<f64>,
    pub mu: Vec<f64>,
    pub c: Vec<f64>,
    pub r: Vec<f64>,
    /// `r₀ < (1 + √(2ρ))^{−3/2}`
    pub admissible: bool,
    /// `2(1 − δ_k/δ_{k−1}) ≤ 1 − r₀` for every `k ≥ 1`.
    pub gradient_cancellation: bool,
    /// `lim r_k = (1 + 2√(2ρ))⁻¹`
    pub limit_rate: f64,
}

pub fn shift_schedule(delta0: f64, a: f64, rho: f64, k_max: usize) -> Result<ShiftSchedule> {
    if !(delta0 > 0.0 && delta0 <= 1.0) {
        return Err(Error::Parameter(format!(
            "delta0 must lie in (0, 1] (units of mu), got {delta0}"
        )));
    }
    if !(a > 0.0 && a <= MAX_SCHEDULE_A * (1.0 + 1e-15)) {
        return Err(Error::Parameter(format!(
            "a must lie in (0, {MAX_SCHEDULE_A}], got {a}"
        )));
    }
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(Error::Parameter(format!(
            "rho must lie in (0, 1], got {rho}"
        )));
    }
    let s = (2.0 * rho).sqrt();
    let q = 1.0 + a * s;
    let delta: Vec<f64> = (0..=k_max)
        .map(|k| delta0 * q.powf(-2.0 * k as f64 / 3.0))
        .collect();
    let mu: Vec<f64> = delta.iter().map(|d| 1.0 - d).collect();
    let c: Vec<f64> = delta.iter().map(|d| 2.0 - d.sqrt()).collect();
    let r: Vec<f64> = c.iter().map(|ck| 1.0 / (1.0 + ck * s)).collect();
    let admissible = r[0] < (1.0 + s).powf(-1.5);
    let gradient_cancellation = delta
        .windows(2)
        .all(|w| 2.0 * (1.0 - w[1] / w[0]) <= 1.0 - r[0]);
    Ok(ShiftSchedule {
        delta0,
        a,
        rho,
        delta,
        mu,
        c,
        r,
        admissible,
        gradient_cancellation,
        limit_rate: 1.0 / (1.0 + 2.0 * s),
    })
}
