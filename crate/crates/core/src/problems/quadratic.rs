use std::f64::consts::PI;

use crate::error::{check_dim, Error, Result};
use crate::objective::{validate_constants, Objective};
use crate::problems::sparse::CsrMatrix;
use crate::vector::{dot, Vector};

/// `f(x) = ½(x − c)ᵀA(x − c)` with `A` symmetric positive definite.
#[derive(Debug, Clone)]
pub struct QuadraticObjective {
    matrix: CsrMatrix,
    center: Vector,
    mu: f64,
    lipschitz: f64,
}

impl QuadraticObjective {
    /// `mu` and `lipschitz` must bracket the spectrum of `matrix`; they are
    /// trusted, not recomputed.
    pub fn new(matrix: CsrMatrix, center: Vector, mu: f64, lipschitz: f64) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::Input(format!(
                "quadratic needs a square matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        check_dim(matrix.rows(), center.dim())?;
        if !center.is_finite() {
            return Err(Error::Input("center must be finite".into()));
        }
        validate_constants(mu, lipschitz)?;
        Ok(Self {
            matrix,
            center,
            mu,
            lipschitz,
        })
    }

    pub fn diagonal(diag: Vec<f64>, center: Vector) -> Result<Self> {
        let mu = diag.iter().copied().fold(f64::INFINITY, f64::min);
        let lipschitz = diag.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::new(CsrMatrix::diagonal(&diag)?, center, mu, lipschitz)
    }

    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    /// Same matrix, different minimizer.
    pub fn with_center(&self, center: Vector) -> Result<Self> {
        Self::new(self.matrix.clone(), center, self.mu, self.lipschitz)
    }

    fn offset(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(self.center.iter())
            .map(|(a, b)| a - b)
            .collect()
    }
}

impl Objective for QuadraticObjective {
    fn dim(&self) -> usize {
        self.center.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let d = self.offset(x);
        0.5 * dot(&d, &self.matrix.matvec(&d))
    }

    fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        let d = self.offset(x);
        self.matrix.matvec_into(&d, out);
    }

    fn mu(&self) -> f64 {
        self.mu
    }

    fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    fn hessian_lipschitz(&self) -> Option<f64> {
        Some(0.0)
    }

    fn minimizer(&self) -> Option<&Vector> {
        Some(&self.center)
    }
}

/// Extreme eigenvalues of the 5-point Laplacian on an `n×n` interior grid.
pub fn laplacian2d_spectrum(n: usize) -> (f64, f64) {
    let h = 1.0 / (n as f64 + 1.0);
    let s = (PI * h / 2.0).sin();
    let c = (PI * h / 2.0).cos();
    let scale = 8.0 / (h * h);
    (scale * s * s, scale * c * c)
}

/// 5-point finite-difference Laplacian on the unit square with homogeneous
/// Dirichlet boundary, `n×n` interior nodes, `h = 1/(n+1)`, minimizer 0.
///
/// `μ` and `L` are the analytic extreme eigenvalues.
pub fn build_laplacian2d(n: usize) -> Result<QuadraticObjective> {
    if n == 0 {
        return Err(Error::Parameter("grid size n must be at least 1".into()));
    }
    let h = 1.0 / (n as f64 + 1.0);
    let inv_h2 = 1.0 / (h * h);
    let dim = n * n;
    let mut indptr = Vec::with_capacity(dim + 1);
    let mut indices = Vec::with_capacity(5 * dim);
    let mut values = Vec::with_capacity(5 * dim);
    indptr.push(0);
    // Row-major node numbering: node (i, j) is i*n + j.
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            if i > 0 {
                indices.push(row - n);
                values.push(-inv_h2);
            }
            if j > 0 {
                indices.push(row - 1);
                values.push(-inv_h2);
            }
            indices.push(row);
            values.push(4.0 * inv_h2);
            if j + 1 < n {
                indices.push(row + 1);
                values.push(-inv_h2);
            }
            if i + 1 < n {
                indices.push(row + n);
                values.push(-inv_h2);
            }
            indptr.push(values.len());
        }
    }
    let matrix = CsrMatrix::from_parts(dim, dim, indptr, indices, values)?;
    let (mu, lipschitz) = if n == 1 {
        (4.0 * inv_h2, 4.0 * inv_h2)
    } else {
        laplacian2d_spectrum(n)
    };
    QuadraticObjective::new(matrix, Vector::zeros(dim), mu, lipschitz)
}

/// Laplacian with condition number exactly `kappa`.
///
/// Takes the smallest grid whose natural condition number reaches `kappa`
/// and adds `t·I` with `t = (L − κμ)/(κ − 1)`, which lowers it to `kappa`.
/// Returns the objective and the grid size used.
pub fn laplacian2d_with_kappa(kappa: f64) -> Result<(QuadraticObjective, usize)> {
    if !(kappa >= 1.0 && kappa.is_finite()) {
        return Err(Error::Parameter(format!(
            "kappa must be at least 1, got {kappa}"
        )));
    }
    let mut n = 1;
    loop {
        let (mu, l) = laplacian2d_spectrum(n);
        if n > 1 && l / mu >= kappa || n == 1 && kappa <= 1.0 {
            break;
        }
        n += 1;
        if n > 100_000 {
            return Err(Error::Parameter(format!(
                "kappa {kappa} needs an impractically fine grid"
            )));
        }
    }
    let base = build_laplacian2d(n)?;
    let (mu, l) = (base.mu, base.lipschitz);
    if kappa == 1.0 || l / mu == kappa {
        return Ok((base, n));
    }
    let t = (l - kappa * mu) / (kappa - 1.0);
    let shifted = QuadraticObjective::new(
        base.matrix.add_diagonal(t),
        base.center.clone(),
        mu + t,
        l + t,
    )?;
    Ok((shifted, n))
}
