use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lyapunov::Anchor;
use crate::objective::Objective;
use crate::solvers::params::{make_params, MethodParams};
use crate::solvers::step::{step, SolverState};
use crate::solvers::MethodKind;
use crate::vector::{dist_sq, norm, Vector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub method: MethodKind,
    /// Stop once `‖∇f(x_k)‖ ≤ tol_rel_grad·‖∇f(x_0)‖`.
    pub tol_rel_grad: f64,
    pub max_iter: usize,
    /// Fill the `E` and `E_shifted` columns.
    pub record_lyapunov: bool,
    pub seed: u64,
}

impl SolverConfig {
    pub fn new(method: MethodKind) -> Self {
        Self {
            method,
            tol_rel_grad: 1e-8,
            max_iter: 1_000_000,
            record_lyapunov: true,
            seed: crate::problems::DEFAULT_SEED,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol_rel_grad = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_lyapunov(mut self, record: bool) -> Self {
        self.record_lyapunov = record;
        self
    }

    pub fn with_method(mut self, method: MethodKind) -> Self {
        self.method = method;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol_rel_grad > 0.0 && self.tol_rel_grad < 1.0) {
            return Err(Error::Parameter(format!(
                "tolerance must lie in (0, 1), got {}",
                self.tol_rel_grad
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::Parameter("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Converged,
    MaxIter,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Converged => "converged",
            Status::MaxIter => "max_iter",
        }
    }
}

/// One row of a trace. Quantities that need `x⋆` are NaN when the
/// objective carries no minimizer; energies are NaN unless recorded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub k: usize,
    pub f_gap: f64,
    pub grad_norm: f64,
    pub x_err_sq: f64,
    pub y_err_sq: f64,
    /// `D_f(x, x⋆) + (μ/2)‖y − x⋆‖²`
    #[serde(rename = "E")]
    pub energy: f64,
    /// HNAG+ runs: `D_{f−μ}(x, x⋆) + μ‖y − x⋆‖²`.
    /// Other runs: `D_{f−μ}(x, x⋆) + (μ/2)‖y − x⋆‖²`.
    #[serde(rename = "E_shifted")]
    pub shifted_energy: f64,
    /// `‖∇f(x) − μ(x − x⋆)‖`, kept for the shifted contraction checks.
    #[serde(skip)]
    pub shifted_grad_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Column {
    FGap,
    GradNorm,
    XErrSq,
    YErrSq,
    #[serde(rename = "E")]
    Energy,
    #[serde(rename = "E_shifted")]
    ShiftedEnergy,
}

impl Column {
    pub fn as_str(self) -> &'static str {
        match self {
            Column::FGap => "f_gap",
            Column::GradNorm => "grad_norm",
            Column::XErrSq => "x_err_sq",
            Column::YErrSq => "y_err_sq",
            Column::Energy => "E",
            Column::ShiftedEnergy => "E_shifted",
        }
    }

    pub const ALL: [Column; 6] = [
        Column::FGap,
        Column::GradNorm,
        Column::XErrSq,
        Column::YErrSq,
        Column::Energy,
        Column::ShiftedEnergy,
    ];

    fn get(self, r: &TraceRecord) -> f64 {
        match self {
            Column::FGap => r.f_gap,
            Column::GradNorm => r.grad_norm,
            Column::XErrSq => r.x_err_sq,
            Column::YErrSq => r.y_err_sq,
            Column::Energy => r.energy,
            Column::ShiftedEnergy => r.shifted_energy,
        }
    }
}

impl std::str::FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Column::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown trace column '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub method: MethodKind,
    pub mu: f64,
    pub lipschitz: f64,
    /// `records[k]` describes iterate `k`, starting at `k = 0`.
    pub records: Vec<TraceRecord>,
    pub status: Status,
    pub iterations: usize,
    pub final_x: Vector,
    pub final_y: Vector,
}

pub const TRACE_CSV_HEADER: &str = "k,f_gap,grad_norm,x_err_sq,y_err_sq,E,E_shifted";

impl Trace {
    pub fn column(&self, column: Column) -> Vec<f64> {
        self.records.iter().map(|r| column.get(r)).collect()
    }

    pub fn first(&self) -> &TraceRecord {
        &self.records[0]
    }

    pub fn last(&self) -> &TraceRecord {
        self.records.last().expect("a trace always holds k = 0")
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.records {
            w.serialize(r).map_err(|e| Error::Input(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::Input(e.to_string()))?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Input(e.to_string()))
    }
}

struct Recorder<'a> {
    anchor: Option<Anchor>,
    params: &'a MethodParams,
    energies: bool,
}

impl Recorder<'_> {
    fn record<F: Objective + ?Sized>(&self, f: &F, state: &SolverState) -> TraceRecord {
        let grad_norm = norm(&state.grad);
        let y = state.y(self.params);
        let Some(anchor) = &self.anchor else {
            return TraceRecord {
                k: state.k,
                f_gap: f64::NAN,
                grad_norm,
                x_err_sq: f64::NAN,
                y_err_sq: f64::NAN,
                energy: f64::NAN,
                shifted_energy: f64::NAN,
                shifted_grad_norm: f64::NAN,
            };
        };
        let mu = self.params.mu;
        let fx = f.value(&state.x);
        let x_err_sq = dist_sq(&state.x, &anchor.point);
        let y_err_sq = dist_sq(&y, &anchor.point);
        let (energy, shifted_energy, shifted_grad_norm) = if self.energies {
            let d = anchor.bregman_from(fx, &state.x);
            let d_shift = d - 0.5 * mu * x_err_sq;
            let y_weight = if self.params.method == MethodKind::HnagPlus {
                mu
            } else {
                0.5 * mu
            };
            let sg: f64 = state
                .grad
                .iter()
                .zip(state.x.iter())
                .zip(anchor.point.iter())
                .map(|((g, x), s)| (g - mu * (x - s)).powi(2))
                .sum::<f64>()
                .sqrt();
            (d + 0.5 * mu * y_err_sq, d_shift + y_weight * y_err_sq, sg)
        } else {
            (f64::NAN, f64::NAN, f64::NAN)
        };
        TraceRecord {
            k: state.k,
            f_gap: fx - anchor.value,
            grad_norm,
            x_err_sq,
            y_err_sq,
            energy,
            shifted_energy,
            shifted_grad_norm,
        }
    }
}

/// Runs `config.method` from `x0` until the relative gradient test passes
/// or `max_iter` steps have been taken.
pub fn solve<F: Objective + ?Sized>(f: &F, config: &SolverConfig, x0: &[f64]) -> Result<Trace> {
    config.validate()?;
    let params = make_params(config.method, f.mu(), f.lipschitz())?;
    let mut state = SolverState::new(f, &params, x0)?;
    let recorder = Recorder {
        anchor: f.minimizer().map(|p| Anchor::new(f, p.clone())),
        params: &params,
        energies: config.record_lyapunov,
    };
    let mut records = vec![recorder.record(f, &state)];
    let threshold = config.tol_rel_grad * records[0].grad_norm;
    let mut status = Status::MaxIter;
    if records[0].grad_norm == 0.0 {
        status = Status::Converged;
    } else {
        for _ in 0..config.max_iter {
            step(f, &params, &mut state)?;
            let r = recorder.record(f, &state);
            let done = r.grad_norm <= threshold;
            records.push(r);
            if done {
                status = Status::Converged;
                break;
            }
        }
    }
    Ok(Trace {
        method: config.method,
        mu: params.mu,
        lipschitz: params.lipschitz,
        records,
        status,
        iterations: state.k,
        final_y: state.y(&params),
        final_x: state.x,
    })
}

/// Largest `‖x_j^{HNAG} − x_j^{box}‖` over `j ≤ k`, both runs started from
/// `x0` with matched internal variables.
pub fn forms_deviation<F: Objective + ?Sized>(f: &F, x0: &[f64], k: usize) -> Result<f64> {
    let p_scheme = make_params(MethodKind::Hnag, f.mu(), f.lipschitz())?;
    let p_box = make_params(MethodKind::HnagBox, f.mu(), f.lipschitz())?;
    let mut scheme = SolverState::new(f, &p_scheme, x0)?;
    let mut boxed = SolverState::new(f, &p_box, x0)?;
    let mut worst: f64 = 0.0;
    for _ in 0..k {
        step(f, &p_scheme, &mut scheme)?;
        step(f, &p_box, &mut boxed)?;
        worst = worst.max(dist_sq(&scheme.x, &boxed.x).sqrt());
    }
    Ok(worst)
}
