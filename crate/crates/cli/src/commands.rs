use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use agmx_core::{
    anchor, compare as compare_methods, contraction_residuals, estimate_rate, estimate_trace_rate,
    make_params, solve as solve_method, start_point, strong_lyapunov_residual, theoretical_rate,
    write_rows_csv, Column, Error, MethodKind, Objective, Problem, Regime, Rng, RowStatus,
    SolverConfig, Status, StrongVariant, Trace, Vector,
};
use serde::Serialize;

use crate::args::{CompareArgs, DiagnoseArgs, Format, ProblemArgs, RatesArgs, RunArgs, SolveArgs};

/// Exit codes: 1 usage, 2 non-convergence or failed check, 3 divergence.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Unconverged(String),
    Diverged(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Unconverged(_) => 2,
            Failure::Diverged(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Unconverged(m) | Failure::Diverged(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Divergence { .. } => Failure::Diverged(e.to_string()),
            Error::Oracle { .. } | Error::EigenNotConverged { .. } | Error::Estimation(_) => {
                Failure::Unconverged(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn io_failure(e: io::Error) -> Failure {
    Failure::Usage(format!("i/o error: {e}"))
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Failure::Usage(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

/// Builds the problem and attaches a minimizer: exact for quadratics,
/// from the oracle otherwise.
fn objective(args: &ProblemArgs) -> Result<Box<dyn Objective>, Failure> {
    let problem = args.spec().map_err(Failure::Usage)?.build()?;
    Ok(match problem {
        Problem::Quadratic(_) => Box::new(problem),
        other => Box::new(anchor(other)?),
    })
}

fn config(method: MethodKind, solve: &SolveArgs, seed: u64) -> Result<SolverConfig, Failure> {
    let mut cfg = SolverConfig::new(method)
        .with_tol(solve.tol)
        .with_max_iter(solve.max_iter);
    cfg.seed = seed;
    cfg.validate()?;
    Ok(cfg)
}

fn rate_column(method: MethodKind) -> Column {
    if method.is_hnag_family() {
        Column::YErrSq
    } else {
        Column::XErrSq
    }
}

#[derive(Serialize)]
struct Summary {
    method: &'static str,
    kappa: f64,
    iterations: usize,
    status: &'static str,
    measured_rate: Option<f64>,
    theoretical_rate: Option<f64>,
}

fn write_json<T: Serialize>(value: &T, out: Option<&Path>) -> CmdResult {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(w).and_then(|_| w.flush()).map_err(io_failure)
}

pub fn run(args: RunArgs) -> CmdResult {
    let f = objective(&args.problem)?;
    let cfg = config(args.method, &args.solve, args.problem.seed)?;
    let kappa = f.condition_number();
    let theory = theoretical_rate(args.method, kappa, Regime::QuadraticOrAsymptotic)?;
    let x0 = start_point(f.dim(), args.problem.seed);
    let trace = match solve_method(&f, &cfg, &x0) {
        Ok(t) => t,
        Err(Error::Divergence { iteration }) => {
            let summary = Summary {
                method: args.method.as_str(),
                kappa,
                iterations: iteration,
                status: RowStatus::Diverged.as_str(),
                measured_rate: None,
                theoretical_rate: theory,
            };
            write_json(&summary, args.summary.as_deref())?;
            return Err(Failure::Diverged(format!(
                "{} diverged at iteration {iteration}",
                args.method
            )));
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = &args.out {
        trace.write_csv(sink(Some(path))?)?;
    }
    let summary = Summary {
        method: args.method.as_str(),
        kappa,
        iterations: trace.iterations,
        status: trace.status.as_str(),
        measured_rate: estimate_trace_rate(&trace, rate_column(args.method), 0.5)
            .ok()
            .map(|e| e.rate),
        theoretical_rate: theory,
    };
    write_json(&summary, args.summary.as_deref())?;
    match trace.status {
        Status::Converged => Ok(()),
        Status::MaxIter => Err(Failure::Unconverged(format!(
            "{} stopped at max_iter = {} without meeting the tolerance",
            args.method, trace.iterations
        ))),
    }
}

#[derive(Serialize)]
struct JsonRow {
    method: &'static str,
    kappa: f64,
    iterations: usize,
    runtime_s: f64,
    measured_rate: Option<f64>,
    theoretical_rate: Option<f64>,
    status: &'static str,
}

pub fn compare(args: CompareArgs) -> CmdResult {
    if args.methods.len() < 2 {
        return Err(Failure::Usage("compare needs at least two methods".into()));
    }
    let f = objective(&args.problem)?;
    let cfg = config(args.methods[0], &args.solve, args.problem.seed)?;
    let x0 = start_point(f.dim(), args.problem.seed);
    let rows = compare_methods(&f, &args.methods, &cfg, &x0)?;
    match args.format {
        Format::Csv => write_rows_csv(&rows, sink(args.out.as_deref())?)?,
        Format::Json => {
            let json: Vec<JsonRow> = rows
                .iter()
                .map(|r| JsonRow {
                    method: r.method.as_str(),
                    kappa: r.kappa,
                    iterations: r.iterations,
                    runtime_s: r.runtime_seconds,
                    measured_rate: r.measured_rate,
                    theoretical_rate: r.theoretical_rate,
                    status: r.status.as_str(),
                })
                .collect();
            write_json(&json, args.out.as_deref())?;
        }
    }
    if let Some(r) = rows.iter().find(|r| r.status == RowStatus::Diverged) {
        return Err(Failure::Diverged(format!(
            "{} diverged at iteration {}",
            r.method, r.iterations
        )));
    }
    let stuck: Vec<&str> = rows
        .iter()
        .filter(|r| r.status != RowStatus::Converged)
        .map(|r| r.method.as_str())
        .collect();
    if stuck.is_empty() {
        Ok(())
    } else {
        Err(Failure::Unconverged(format!(
            "not converged: {}",
            stuck.join(", ")
        )))
    }
}

pub fn diagnose(args: DiagnoseArgs) -> CmdResult {
    let f = objective(&args.problem)?;
    if let Some(variant) = args.sweep {
        return sweep(&f, variant, &args);
    }
    let theorem = args
        .theorem
        .expect("clap requires --theorem without --sweep");
    let method = args.method.unwrap_or(theorem.method());
    if method != theorem.method() {
        return Err(Failure::Usage(format!(
            "{theorem} is a statement about {}, not {method}",
            theorem.method()
        )));
    }
    let cfg = config(method, &args.solve, args.problem.seed)?;
    let trace: Trace = solve_method(&f, &cfg, &start_point(f.dim(), args.problem.seed))?;
    let report = contraction_residuals(theorem, &trace, &f)?;
    report.write_csv(sink(args.out.as_deref())?)?;
    if report.passes(args.rel_tol) {
        Ok(())
    } else {
        Err(Failure::Unconverged(format!(
            "{theorem} violated: residual {:e} at step k = {} exceeds {:e}",
            report.max_violation,
            report.worst_step,
            args.rel_tol * report.reference.abs()
        )))
    }
}

/// Strong Lyapunov residuals at seeded random states around `x⋆`.
fn sweep(f: &dyn Objective, variant: StrongVariant, args: &DiagnoseArgs) -> CmdResult {
    if !(0.0..=1.0).contains(&args.mu_hat) {
        return Err(Failure::Usage(format!(
            "--mu-hat must lie in [0, 1], got {}",
            args.mu_hat
        )));
    }
    let mu = f.mu();
    let (method, mu_hat) = match variant {
        StrongVariant::HnagPlus => (MethodKind::HnagPlus, mu),
        StrongVariant::Hnag => (MethodKind::Hnag, 0.0),
        StrongVariant::Partial => (MethodKind::Hnag, args.mu_hat * mu),
    };
    let beta = make_params(method, mu, f.lipschitz())?
        .beta()
        .expect("HNAG-family parameters carry beta");
    let xs = f
        .minimizer()
        .expect("objective() attaches a minimizer")
        .clone();
    let mut rng = Rng::new(args.problem.seed);
    let mut w = csv::Writer::from_writer(sink(args.out.as_deref())?);
    let csv_err = |e: csv::Error| Failure::Usage(e.to_string());
    w.write_record(["sample", "lhs", "rhs", "residual"])
        .map_err(csv_err)?;
    let mut worst: Option<(usize, f64)> = None;
    for i in 0..args.samples {
        let x: Vector = xs.iter().map(|c| c + rng.normal()).collect();
        let y: Vector = xs.iter().map(|c| c + rng.normal()).collect();
        let r = strong_lyapunov_residual(variant, f, &x, &y, beta, mu_hat)?;
        w.write_record(&[
            i.to_string(),
            r.lhs.to_string(),
            r.rhs.to_string(),
            r.residual.to_string(),
        ])
        .map_err(csv_err)?;
        if !r.holds(1e-12) && worst.is_none_or(|(_, v)| r.residual < v) {
            worst = Some((i, r.residual));
        }
    }
    w.flush().map_err(io_failure)?;
    match worst {
        None => Ok(()),
        Some((i, v)) => Err(Failure::Unconverged(format!(
            "{variant} inequality fails at sample {i}: residual {v:e}"
        ))),
    }
}

#[derive(Serialize)]
struct CatalogRow {
    method: &'static str,
    general: Option<f64>,
    quadratic_or_asymptotic: Option<f64>,
}

#[derive(Serialize)]
struct Fit {
    column: &'static str,
    rate: f64,
    k_start: usize,
    k_end: usize,
    fit_residual: f64,
}

pub fn rates(args: RatesArgs) -> CmdResult {
    if let Some(path) = &args.trace {
        return fit_file(path, &args);
    }
    let kappa = args.kappa.expect("clap requires --kappa without --trace");
    let rows = MethodKind::ALL
        .into_iter()
        .map(|m| {
            Ok(CatalogRow {
                method: m.as_str(),
                general: theoretical_rate(m, kappa, Regime::General)?,
                quadratic_or_asymptotic: theoretical_rate(m, kappa, Regime::QuadraticOrAsymptotic)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    match args.format {
        Format::Json => write_json(&rows, None),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            let opt = |v: Option<f64>| v.map(|r| r.to_string()).unwrap_or_default();
            let csv_err = |e: csv::Error| Failure::Usage(e.to_string());
            w.write_record(["method", "general", "quadratic_or_asymptotic"])
                .map_err(csv_err)?;
            for r in rows {
                w.write_record([
                    r.method.to_string(),
                    opt(r.general),
                    opt(r.quadratic_or_asymptotic),
                ])
                .map_err(csv_err)?;
            }
            w.flush().map_err(io_failure)
        }
    }
}

fn fit_file(path: &Path, args: &RatesArgs) -> CmdResult {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| Failure::Usage(e.to_string()))?
        .clone();
    let idx = headers
        .iter()
        .position(|h| h == args.column.as_str())
        .ok_or_else(|| {
            Failure::Usage(format!(
                "{} has no column '{}'",
                path.display(),
                args.column.as_str()
            ))
        })?;
    let mut values = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Failure::Usage(e.to_string()))?;
        let v: f64 = rec[idx].parse().map_err(|_| {
            Failure::Usage(format!(
                "bad number '{}' in column {}",
                &rec[idx],
                args.column.as_str()
            ))
        })?;
        values.push(v);
    }
    let est = estimate_rate(&values, args.tail)?;
    let fit = Fit {
        column: args.column.as_str(),
        rate: est.rate,
        k_start: est.window.0,
        k_end: est.window.1,
        fit_residual: est.fit_residual,
    };
    match args.format {
        Format::Json => write_json(&fit, None),
        Format::Csv => {
            println!("column,rate,k_start,k_end,fit_residual");
            println!(
                "{},{},{},{},{}",
                fit.column, fit.rate, fit.k_start, fit.k_end, fit.fit_residual
            );
            Ok(())
        }
    }
}
