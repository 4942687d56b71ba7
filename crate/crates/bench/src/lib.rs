//! Fixtures shared by the benchmarks.

use agmx_core::{
    anchor, laplacian2d_with_kappa, start_point, Anchored, Objective, Problem, ProblemSpec,
    QuadraticObjective, Vector,
};

/// Matched-κ Laplacians used for the iteration-count table.
pub const TABLE_KAPPAS: [f64; 3] = [785.0, 3150.0, 13000.0];

pub fn laplacian(kappa: f64) -> (QuadraticObjective, Vector) {
    let (f, _) = laplacian2d_with_kappa(kappa).expect("valid kappa");
    let x0 = start_point(f.dim(), 42);
    (f, x0)
}

pub fn piecewise() -> (Anchored<Problem>, Vector) {
    anchored(ProblemSpec::piecewise_default())
}

pub fn logistic() -> (Anchored<Problem>, Vector) {
    anchored(ProblemSpec::logistic_default())
}

fn anchored(spec: ProblemSpec) -> (Anchored<Problem>, Vector) {
    let f = anchor(spec.build().expect("default problem builds")).expect("oracle converges");
    let x0 = start_point(f.dim(), spec.seed);
    (f, x0)
}
