use std::path::PathBuf;

use agmx_core::{Column, MethodKind, ProblemKind, ProblemSpec, StrongVariant, Theorem};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "agmx",
    version,
    about = "Accelerated gradient methods with Lyapunov diagnostics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one method and write its trace
    Run(RunArgs),
    /// Run several methods from the same start and tabulate them
    Compare(CompareArgs),
    /// Check a contraction theorem or sweep a strong Lyapunov inequality
    Diagnose(DiagnoseArgs),
    /// Print the rate catalog, or fit a rate to a trace file
    Rates(RatesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    #[arg(long, default_value = "laplacian2d")]
    pub problem: ProblemKind,
    /// Laplacian grid size
    #[arg(long)]
    pub n: Option<usize>,
    /// Build the Laplacian with this condition number instead of a grid size
    #[arg(long, conflicts_with = "n")]
    pub kappa: Option<f64>,
    /// Dimension of the piecewise or logistic problem
    #[arg(long)]
    pub d: Option<usize>,
    /// Number of pieces for the piecewise problem
    #[arg(long)]
    pub p: Option<usize>,
    /// Number of samples for the logistic problem
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub lipschitz: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Seeds the problem data and the start point
    #[arg(long, env = "AGMX_SEED", default_value_t = 42)]
    pub seed: u64,
}

impl ProblemArgs {
    pub fn spec(&self) -> Result<ProblemSpec, String> {
        let mut spec = match self.problem {
            ProblemKind::Laplacian2d => {
                if self.d.is_some() || self.p.is_some() || self.m.is_some() {
                    return Err("--d, --p and --m do not apply to laplacian2d".into());
                }
                match (self.n, self.kappa) {
                    (_, Some(kappa)) => ProblemSpec::laplacian2d_kappa(kappa),
                    (Some(n), None) => ProblemSpec::laplacian2d(n),
                    (None, None) => return Err("laplacian2d needs --n or --kappa".into()),
                }
            }
            ProblemKind::Piecewise => {
                if self.n.is_some()
                    || self.kappa.is_some()
                    || self.m.is_some()
                    || self.lambda.is_some()
                {
                    return Err("piecewise takes --d, --p, --mu, --lipschitz and --eps".into());
                }
                let mut s = ProblemSpec::piecewise_default();
                if let Some(d) = self.d {
                    s.dims[0] = d;
                }
                if let Some(p) = self.p {
                    s.dims[1] = p;
                }
                for (key, v) in [
                    ("mu", self.mu),
                    ("lipschitz", self.lipschitz),
                    ("eps", self.eps),
                ] {
                    if let Some(v) = v {
                        s.parameters.insert(key.into(), v);
                    }
                }
                s
            }
            ProblemKind::Logistic => {
                if self.n.is_some()
                    || self.kappa.is_some()
                    || self.p.is_some()
                    || self.mu.is_some()
                    || self.lipschitz.is_some()
                    || self.eps.is_some()
                {
                    return Err("logistic takes --d, --m and --lambda".into());
                }
                let mut s = ProblemSpec::logistic_default();
                if let Some(d) = self.d {
                    s.dims[0] = d;
                }
                if let Some(m) = self.m {
                    s.dims[1] = m;
                }
                if let Some(l) = self.lambda {
                    s.parameters.insert("lambda".into(), l);
                }
                s
            }
        };
        if self.problem == ProblemKind::Laplacian2d
            && (self.mu.is_some()
                || self.lipschitz.is_some()
                || self.eps.is_some()
                || self.lambda.is_some())
        {
            return Err("laplacian2d constants are fixed by the grid".into());
        }
        spec.seed = self.seed;
        Ok(spec)
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_iter: usize,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub solve: SolveArgs,
    /// gd, nag, tm, hnag (alias hnagpp), hnag+ or hnag_box
    #[arg(long, default_value = "hnag")]
    pub method: MethodKind,
    /// Trace CSV destination
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Summary JSON destination; printed to stdout when omitted
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub solve: SolveArgs,
    /// Comma-separated method list
    #[arg(long, value_delimiter = ',', default_value = "gd,nag,tm,hnag,hnag+")]
    pub methods: Vec<MethodKind>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub solve: SolveArgs,
    /// THM_HNAG_FUNCVAL, THM_HNAG_PLUS or PROP_QUADRATIC
    #[arg(long, required_unless_present = "sweep", conflicts_with = "sweep")]
    pub theorem: Option<Theorem>,
    /// Method whose trace is checked; defaults to the theorem's own
    #[arg(long, requires = "theorem")]
    pub method: Option<MethodKind>,
    /// Strong Lyapunov variant to sweep: hnag, hnag+ or partial
    #[arg(long)]
    pub sweep: Option<StrongVariant>,
    /// Shift for the partial variant, as a fraction of mu
    #[arg(long, default_value_t = 0.5, requires = "sweep")]
    pub mu_hat: f64,
    #[arg(long, default_value_t = 100, requires = "sweep")]
    pub samples: usize,
    /// Violation tolerance relative to the starting reduced energy
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RatesArgs {
    /// Condition number for the catalog
    #[arg(long, required_unless_present = "trace", conflicts_with = "trace")]
    pub kappa: Option<f64>,
    /// Trace CSV to fit
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Trace column to fit
    #[arg(long, default_value = "y_err_sq", requires = "trace")]
    pub column: Column,
    #[arg(long, default_value_t = 0.5)]
    pub tail: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}
