//! Benchmark objectives, seeded generation, eigenvalue estimation and
//! gradient checking.

mod dense;
mod eigen;
pub mod logistic;
pub mod piecewise;
mod quadratic;
mod rng;
mod sparse;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use dense::{gram, ColumnMatrix};
pub use eigen::{estimate_extreme_eigs, largest_eigenvalue};
pub use logistic::{build_logistic, LogisticObjective};
pub use piecewise::{build_piecewise, PiecewiseSmoothObjective};
pub use quadratic::{
    build_laplacian2d, laplacian2d_spectrum, laplacian2d_with_kappa, QuadraticObjective,
};
pub use rng::{Rng, DEFAULT_SEED};
pub use sparse::CsrMatrix;

use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::vector::{max_abs, norm, Vector};

/// Max over coordinates of `|∂_i f − g_i|`, relative to `‖∇f(x)‖∞`, with
/// `∂_i f` from central differences of step `10⁻⁶(1 + ‖x‖)`.
///
/// Returns the absolute error when the gradient vanishes.
pub fn check_gradient<F: Objective + ?Sized>(f: &F, x: &[f64]) -> f64 {
    let g = f.gradient(x);
    let step = 1e-6 * (1.0 + norm(x));
    let mut probe = x.to_vec();
    let mut worst: f64 = 0.0;
    for i in 0..x.len() {
        let orig = probe[i];
        probe[i] = orig + step;
        let up = f.value(&probe);
        probe[i] = orig - step;
        let down = f.value(&probe);
        probe[i] = orig;
        let fd = (up - down) / (2.0 * step);
        worst = worst.max((fd - g[i]).abs());
    }
    let scale = max_abs(&g);
    if scale > 0.0 {
        worst / scale
    } else {
        worst
    }
}

/// Start point shared by every method: `Unif(0, 1)` coordinates drawn from
/// a stream split off the problem seed.
pub fn start_point(dim: usize, seed: u64) -> Vector {
    let mut rng = Rng::new(seed).split();
    Vector::from(rng.uniform_vec(dim))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Laplacian2d,
    Piecewise,
    Logistic,
}

impl ProblemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::Laplacian2d => "laplacian2d",
            ProblemKind::Piecewise => "piecewise",
            ProblemKind::Logistic => "logistic",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "laplacian2d" | "laplacian" => Ok(ProblemKind::Laplacian2d),
            "piecewise" => Ok(ProblemKind::Piecewise),
            "logistic" => Ok(ProblemKind::Logistic),
            other => Err(Error::Input(format!("unknown problem '{other}'"))),
        }
    }
}

/// Everything needed to rebuild a problem bit for bit.
///
/// `dims` is `[n]` for the Laplacian, `[d, p]` for the piecewise objective
/// and `[d, m]` for logistic regression. Recognized parameters: `kappa`
/// (Laplacian, picks the grid and shifts to this condition number),
/// `mu`, `lipschitz`, `eps` (piecewise), `lambda` (logistic).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    pub dims: Vec<usize>,
    pub seed: u64,
    #[serde(default)]
    pub parameters: BTreeMap<String, f64>,
}

impl ProblemSpec {
    pub fn laplacian2d(n: usize) -> Self {
        Self {
            kind: ProblemKind::Laplacian2d,
            dims: vec![n],
            seed: DEFAULT_SEED,
            parameters: BTreeMap::new(),
        }
    }

    pub fn laplacian2d_kappa(kappa: f64) -> Self {
        Self {
            kind: ProblemKind::Laplacian2d,
            dims: vec![],
            seed: DEFAULT_SEED,
            parameters: BTreeMap::from([("kappa".to_string(), kappa)]),
        }
    }

    pub fn piecewise_default() -> Self {
        Self {
            kind: ProblemKind::Piecewise,
            dims: vec![piecewise::DEFAULT_D, piecewise::DEFAULT_P],
            seed: DEFAULT_SEED,
            parameters: BTreeMap::from([
                ("mu".to_string(), piecewise::DEFAULT_MU),
                ("lipschitz".to_string(), piecewise::DEFAULT_LIPSCHITZ),
                ("eps".to_string(), piecewise::DEFAULT_EPS),
            ]),
        }
    }

    pub fn logistic_default() -> Self {
        Self {
            kind: ProblemKind::Logistic,
            dims: vec![logistic::DEFAULT_D, logistic::DEFAULT_M],
            seed: DEFAULT_SEED,
            parameters: BTreeMap::from([("lambda".to_string(), logistic::DEFAULT_LAMBDA)]),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Input(e.to_string()))
    }

    fn param(&self, name: &str, default: f64) -> f64 {
        self.parameters.get(name).copied().unwrap_or(default)
    }

    fn dim_at(&self, i: usize, default: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(default)
    }

    pub fn build(&self) -> Result<Problem> {
        let mut rng = Rng::new(self.seed);
        match self.kind {
            ProblemKind::Laplacian2d => {
                if let Some(&kappa) = self.parameters.get("kappa") {
                    Ok(Problem::Quadratic(laplacian2d_with_kappa(kappa)?.0))
                } else {
                    let n = *self
                        .dims
                        .first()
                        .ok_or_else(|| Error::Parameter("laplacian2d needs n or kappa".into()))?;
                    Ok(Problem::Quadratic(build_laplacian2d(n)?))
                }
            }
            ProblemKind::Piecewise => Ok(Problem::Piecewise(build_piecewise(
                self.dim_at(0, piecewise::DEFAULT_D),
                self.dim_at(1, piecewise::DEFAULT_P),
                self.param("mu", piecewise::DEFAULT_MU),
                self.param("lipschitz", piecewise::DEFAULT_LIPSCHITZ),
                self.param("eps", piecewise::DEFAULT_EPS),
                &mut rng,
            )?)),
            ProblemKind::Logistic => Ok(Problem::Logistic(build_logistic(
                self.dim_at(0, logistic::DEFAULT_D),
                self.dim_at(1, logistic::DEFAULT_M),
                self.param("lambda", logistic::DEFAULT_LAMBDA),
                &mut rng,
            )?)),
        }
    }
}

/// Any of the built-in objectives.
#[derive(Debug, Clone)]
pub enum Problem {
    Quadratic(QuadraticObjective),
    Piecewise(PiecewiseSmoothObjective),
    Logistic(LogisticObjective),
}

impl Problem {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Problem::Quadratic(_) => ProblemKind::Laplacian2d,
            Problem::Piecewise(_) => ProblemKind::Piecewise,
            Problem::Logistic(_) => ProblemKind::Logistic,
        }
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self, Problem::Quadratic(_))
    }

    fn inner(&self) -> &dyn Objective {
        match self {
            Problem::Quadratic(f) => f,
            Problem::Piecewise(f) => f,
            Problem::Logistic(f) => f,
        }
    }
}

impl Objective for Problem {
    fn dim(&self) -> usize {
        self.inner().dim()
    }
    fn value(&self, x: &[f64]) -> f64 {
        self.inner().value(x)
    }
    fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        self.inner().gradient_into(x, out)
    }
    fn mu(&self) -> f64 {
        self.inner().mu()
    }
    fn lipschitz(&self) -> f64 {
        self.inner().lipschitz()
    }
    fn hessian_lipschitz(&self) -> Option<f64> {
        self.inner().hessian_lipschitz()
    }
    fn minimizer(&self) -> Option<&Vector> {
        self.inner().minimizer()
    }
}
