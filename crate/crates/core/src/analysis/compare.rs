use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::analysis::rate::{estimate_trace_rate, theoretical_rate, Regime};
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::solvers::{solve, Column, MethodKind, SolverConfig, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Converged,
    MaxIter,
    Diverged,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Converged => "converged",
            RowStatus::MaxIter => "max_iter",
            RowStatus::Diverged => "diverged",
        }
    }
}

impl From<Status> for RowStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Converged => RowStatus::Converged,
            Status::MaxIter => RowStatus::MaxIter,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub method: MethodKind,
    pub kappa: f64,
    pub iterations: usize,
    pub runtime_seconds: f64,
    /// `None` when the trace is too short to fit or has no minimizer.
    pub measured_rate: Option<f64>,
    pub theoretical_rate: Option<f64>,
    pub status: RowStatus,
}

pub const COMPARISON_CSV_HEADER: &str =
    "method,kappa,iterations,runtime_s,measured_rate,theoretical_rate";

/// Metric the rate is fitted on: `‖y − x⋆‖²` for the HNAG family, whose
/// `y` carries the contraction, `‖x − x⋆‖²` otherwise.
fn rate_metric(method: MethodKind) -> Column {
    if method.is_hnag_family() {
        Column::YErrSq
    } else {
        Column::XErrSq
    }
}

/// Runs every method from the same start and tabulates the outcome.
///
/// HNAG is reported against its quadratic/asymptotic rate. A method that
/// blows up gets a `Diverged` row rather than aborting the table.
pub fn compare<F: Objective + ?Sized>(
    f: &F,
    methods: &[MethodKind],
    config: &SolverConfig,
    x0: &[f64],
) -> Result<Vec<ComparisonRow>> {
    let kappa = f.condition_number();
    let mut rows = Vec::with_capacity(methods.len());
    for &method in methods {
        let cfg = config.clone().with_method(method);
        let theory = theoretical_rate(method, kappa, Regime::QuadraticOrAsymptotic)?;
        let start = Instant::now();
        let outcome = solve(f, &cfg, x0);
        let runtime_seconds = start.elapsed().as_secs_f64();
        let row = match outcome {
            Ok(trace) => ComparisonRow {
                method,
                kappa,
                iterations: trace.iterations,
                runtime_seconds,
                measured_rate: estimate_trace_rate(&trace, rate_metric(method), 0.5)
                    .ok()
                    .map(|e| e.rate),
                theoretical_rate: theory,
                status: trace.status.into(),
            },
            Err(Error::Divergence { iteration }) => ComparisonRow {
                method,
                kappa,
                iterations: iteration,
                runtime_seconds,
                measured_rate: None,
                theoretical_rate: theory,
                status: RowStatus::Diverged,
            },
            Err(e) => return Err(e),
        };
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_rows_csv<W: Write>(rows: &[ComparisonRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Input(e.to_string());
    w.write_record(COMPARISON_CSV_HEADER.split(','))
        .map_err(io)?;
    let opt = |v: Option<f64>| v.map(|r| r.to_string()).unwrap_or_default();
    for r in rows {
        w.write_record(&[
            r.method.as_str().to_string(),
            r.kappa.to_string(),
            r.iterations.to_string(),
            r.runtime_seconds.to_string(),
            opt(r.measured_rate),
            opt(r.theoretical_rate),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Input(e.to_string()))
}
