use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::solvers::{MethodKind, Trace};

/// Per-step contraction claims `Ẽ_{k+1} ≤ r·Ẽ_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Theorem {
    /// HNAG, `Ẽ = E_HNAG − ‖∇f‖²/(2L)`, `r = (1 + √(2/κ))⁻¹`.
    ThmHnagFuncval,
    /// HNAG+, `Ẽ = E_HNAG_PLUS − ‖∇f_{−μ}‖²/(2L)`, `r = (1 + 2/√κ)⁻¹`.
    ThmHnagPlus,
    /// HNAG on quadratics, `Ẽ = E_PARTIAL(μ) − ‖∇f_{−μ}‖²/(2L)`,
    /// `r = (1 + 2√(2/κ))⁻¹`.
    PropQuadratic,
}

impl Theorem {
    pub const ALL: [Theorem; 3] = [
        Theorem::ThmHnagFuncval,
        Theorem::ThmHnagPlus,
        Theorem::PropQuadratic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::ThmHnagFuncval => "THM_HNAG_FUNCVAL",
            Theorem::ThmHnagPlus => "THM_HNAG_PLUS",
            Theorem::PropQuadratic => "PROP_QUADRATIC",
        }
    }

    /// The method whose iterates the claim is about.
    pub fn method(self) -> MethodKind {
        match self {
            Theorem::ThmHnagPlus => MethodKind::HnagPlus,
            Theorem::ThmHnagFuncval | Theorem::PropQuadratic => MethodKind::Hnag,
        }
    }

    pub fn rate(self, kappa: f64) -> f64 {
        match self {
            Theorem::ThmHnagFuncval => 1.0 / (1.0 + (2.0 / kappa).sqrt()),
            Theorem::ThmHnagPlus => 1.0 / (1.0 + 2.0 / kappa.sqrt()),
            Theorem::PropQuadratic => 1.0 / (1.0 + 2.0 * (2.0 / kappa).sqrt()),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_uppercase().replace('-', "_");
        Theorem::ALL
            .into_iter()
            .find(|t| t.as_str() == key)
            .ok_or_else(|| Error::Input(format!("unknown theorem tag '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractionReport {
    pub theorem: Theorem,
    pub rate: f64,
    /// `Ẽ_0`, the scale violations are measured against.
    pub reference: f64,
    /// `lhs[k] = Ẽ_{k+1}`
    pub lhs: Vec<f64>,
    /// `rhs[k] = r·Ẽ_k`
    pub rhs: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Largest residual, or 0 for a run without steps.
    pub max_violation: f64,
    /// Step index `k` of `max_violation`.
    pub worst_step: usize,
}

pub const CONTRACTION_CSV_HEADER: &str = "k,lhs,rhs,residual";

impl ContractionReport {
    /// `max_violation ≤ rel_tol·Ẽ_0`
    pub fn passes(&self, rel_tol: f64) -> bool {
        self.max_violation <= rel_tol * self.reference.abs()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Input(e.to_string());
        w.write_record(CONTRACTION_CSV_HEADER.split(','))
            .map_err(io)?;
        for k in 0..self.lhs.len() {
            w.write_record(&[
                k.to_string(),
                self.lhs[k].to_string(),
                self.rhs[k].to_string(),
                self.residuals[k].to_string(),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::Input(e.to_string()))
    }
}

/// Checks a contraction claim along a recorded trace.
///
/// The trace must come from the theorem's method with energies recorded.
/// `PROP_QUADRATIC` is only claimed for quadratic objectives; on anything
/// else the report is still produced but carries no guarantee.
pub fn contraction_residuals<F: Objective + ?Sized>(
    theorem: Theorem,
    trace: &Trace,
    f: &F,
) -> Result<ContractionReport> {
    if trace.method != theorem.method() {
        return Err(Error::Usage(format!(
            "{theorem} is a statement about {}, the trace is from {}",
            theorem.method(),
            trace.method
        )));
    }
    let lipschitz = f.lipschitz();
    let rate = theorem.rate(f.condition_number());
    let reduced: Vec<f64> = trace
        .records
        .iter()
        .map(|r| match theorem {
            Theorem::ThmHnagFuncval => r.energy - r.grad_norm * r.grad_norm / (2.0 * lipschitz),
            Theorem::ThmHnagPlus | Theorem::PropQuadratic => {
                r.shifted_energy - r.shifted_grad_norm * r.shifted_grad_norm / (2.0 * lipschitz)
            }
        })
        .collect();
    if reduced.iter().any(|v| v.is_nan()) {
        return Err(Error::Usage(
            "trace has no Lyapunov values; record them and attach a minimizer".into(),
        ));
    }
    let lhs: Vec<f64> = reduced[1..].to_vec();
    let rhs: Vec<f64> = reduced[..reduced.len() - 1]
        .iter()
        .map(|e| rate * e)
        .collect();
    let residuals: Vec<f64> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
    let (worst_step, max_violation) =
        residuals
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (k, v)| {
                if v > best.1 {
                    (k, v)
                } else {
                    best
                }
            });
    Ok(ContractionReport {
        theorem,
        rate,
        reference: reduced[0],
        lhs,
        rhs,
        residuals,
        max_violation: if max_violation.is_finite() {
            max_violation
        } else {
            0.0
        },
        worst_step,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{build_laplacian2d, start_point};
    use crate::solvers::{solve, SolverConfig};
    use approx::assert_relative_eq;

    #[test]
    fn rates() {
        assert_relative_eq!(
            Theorem::PropQuadratic.rate(3150.0),
            0.95202,
            max_relative = 1e-5
        );
        assert_relative_eq!(Theorem::ThmHnagFuncval.rate(2.0), 0.5);
        assert_relative_eq!(Theorem::ThmHnagPlus.rate(4.0), 0.5);
    }

    #[test]
    fn tags_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.as_str().parse::<Theorem>().unwrap(), t);
        }
        assert_eq!(
            "thm_hnag_plus".parse::<Theorem>().unwrap(),
            Theorem::ThmHnagPlus
        );
        assert!("THM_NOPE".parse::<Theorem>().is_err());
    }

    #[test]
    fn start_at_minimizer_gives_zero_residuals() {
        let f = build_laplacian2d(4).unwrap();
        let cfg = SolverConfig::new(MethodKind::Hnag).with_max_iter(3);
        let trace = solve(&f, &cfg, &[0.0; 16]).unwrap();
        let report = contraction_residuals(Theorem::ThmHnagFuncval, &trace, &f).unwrap();
        assert!(report.residuals.iter().all(|&r| r == 0.0));
        assert!(report.passes(1e-10));
    }

    #[test]
    fn hnag_on_laplacian_contracts() {
        let f = build_laplacian2d(39).unwrap();
        let x0 = start_point(f.dim(), 42);
        let trace = solve(&f, &SolverConfig::new(MethodKind::Hnag), &x0).unwrap();
        for t in [Theorem::ThmHnagFuncval, Theorem::PropQuadratic] {
            let report = contraction_residuals(t, &trace, &f).unwrap();
            assert_eq!(report.lhs.len(), trace.iterations);
            assert!(
                report.passes(1e-10),
                "{t}: {} at k = {}",
                report.max_violation,
                report.worst_step
            );
        }
    }

    #[test]
    fn method_mismatch_is_a_usage_error() {
        let f = build_laplacian2d(4).unwrap();
        let trace = solve(&f, &SolverConfig::new(MethodKind::Gd), &start_point(16, 1)).unwrap();
        assert!(matches!(
            contraction_residuals(Theorem::ThmHnagPlus, &trace, &f),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn csv_layout() {
        let f = build_laplacian2d(3).unwrap();
        let cfg = SolverConfig::new(MethodKind::HnagPlus).with_max_iter(4);
        let trace = solve(&f, &cfg, &start_point(9, 3)).unwrap();
        let report = contraction_residuals(Theorem::ThmHnagPlus, &trace, &f).unwrap();
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CONTRACTION_CSV_HEADER);
        assert_eq!(text.lines().count(), 5);
        assert!(text.lines().nth(1).unwrap().starts_with("0,"));
    }
}
