//! Self-contained numerical kernels: symmetric eigensolvers, Sturm-Liouville
//! discretization, quadrature and ODE integration.
//!
//! Everything here is deterministic: identical inputs produce bit-identical
//! outputs. All solvers are dense (desk scale, matrices up to a few thousand
//! rows); the tridiagonal path uses implicit-shift QL.

mod eigen;
mod ode;
mod quad;
mod sl;

pub use eigen::{
    symmetric_eigs, symmetric_eigvals, tridiag_eigenvector, tridiag_eigs, DenseMatrix, EigenPairs,
};
pub use ode::{ode_rk4, rk4_step, Trajectory};
pub use quad::{simpson, trapezoid};
pub use sl::{sl_discretize, sl_problem, Endpoint, GridSpec, Placement, RadialOperator, SlProblem};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("matrix entry ({i},{j}) breaks symmetry by {diff:e} (relative tolerance 1e-12)")]
    NotSymmetric { i: usize, j: usize, diff: f64 },
    #[error("eigensolver did not converge within {iterations} iterations (row {row}); partial results are invalid")]
    NoConvergence { row: usize, iterations: usize },
    #[error("requested {requested} eigenvalues from a {dim}-dimensional problem")]
    TooManyEigenvalues { requested: usize, dim: usize },
    #[error("non-finite entry in input")]
    NonFinite,
    #[error("weight must be positive on the open interval, got {value:e} at {position}")]
    NonPositiveWeight { position: f64, value: f64 },
    #[error("grid: need a < b and at least 8 cells, got [{a}, {b}] with {count}")]
    BadGrid { a: f64, b: f64, count: usize },
    #[error("ODE state became non-finite at t = {t}")]
    BlowUp { t: f64 },
    #[error("ODE integration needs at least 16 steps, got {0}")]
    TooFewSteps(usize),
}

/// Symmetric tridiagonal matrix: `diag` of length n, `offdiag` of length n-1.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self, NumericsError> {
        if offdiag.len() + 1 != diag.len() {
            return Err(NumericsError::BadGrid {
                a: 0.0,
                b: 0.0,
                count: offdiag.len(),
            });
        }
        if diag.iter().chain(offdiag.iter()).any(|x| !x.is_finite()) {
            return Err(NumericsError::NonFinite);
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }
}

/// Second-order Richardson extrapolation from a coarse/fine grid pair
/// (fine grid has half the spacing). Returns the extrapolated value and
/// an error estimate for it.
pub fn richardson(coarse: f64, fine: f64) -> (f64, f64) {
    let correction = (fine - coarse) / 3.0;
    (fine + correction, correction.abs())
}
