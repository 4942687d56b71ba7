//! First-order methods for smooth strongly convex minimization.
//!
//! The crate implements HNAG and HNAG+ (Hessian-driven Nesterov accelerated
//! gradient) next to gradient descent, Nesterov's method and the triple
//! momentum method, and ships the machinery to check their Lyapunov-based
//! convergence guarantees numerically:
//!
//! * [`solvers`] steps and solve loops with per-iteration traces,
//! * [`problems`] seeded benchmark objectives (finite-difference Laplacian,
//!   a piecewise smooth objective, regularized logistic regression),
//! * [`lyapunov`] energies, strong-Lyapunov residuals and contraction checks,
//! * [`analysis`] a minimizer oracle, rate fitting and method comparison.
//!
//! ```
//! use agmx_core::{build_laplacian2d, solve, MethodKind, SolverConfig, Status, Vector};
//!
//! let f = build_laplacian2d(9).unwrap();
//! let x0 = Vector::filled(81, 1.0);
//! let trace = solve(&f, &SolverConfig::new(MethodKind::Hnag), &x0).unwrap();
//! assert_eq!(trace.status, Status::Converged);
//! ```

pub mod analysis;
pub mod bregman;
pub mod error;
pub mod lyapunov;
pub mod objective;
pub mod problems;
pub mod solvers;
pub mod vector;

pub use analysis::{
    anchor, compare, estimate_rate, estimate_trace_rate, find_minimizer, theoretical_rate,
    write_rows_csv, ComparisonRow, RateEstimate, Regime, RowStatus, COMPARISON_CSV_HEADER,
};
pub use bregman::{bregman, bregman_asymmetry, grad_step, three_point_lhs};
pub use error::{Error, Result};
pub use lyapunov::{
    asymmetry_bound_check, contraction_residuals, gradient_norm_ineq, lyapunov, shift_schedule,
    strong_lyapunov_residual, ContractionReport, LyapunovKind, ShiftSchedule, StrongResidual,
    StrongVariant, Theorem, CONTRACTION_CSV_HEADER, MAX_SCHEDULE_A,
};
pub use objective::{validate_constants, Anchored, Objective, ShiftedObjective, Tilted};
pub use problems::{
    build_laplacian2d, build_logistic, build_piecewise, check_gradient, estimate_extreme_eigs,
    laplacian2d_with_kappa, start_point, CsrMatrix, LogisticObjective, PiecewiseSmoothObjective,
    Problem, ProblemKind, ProblemSpec, QuadraticObjective, Rng,
};
pub use solvers::{
    forms_deviation, make_params, solve, step, Coefficients, Column, MethodKind, MethodParams,
    SolverConfig, SolverState, Status, Trace, TraceRecord, TRACE_CSV_HEADER,
};
pub use vector::Vector;
