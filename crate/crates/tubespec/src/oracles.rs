//! Independent cross-check solvers.
//!
//! These deliberately avoid the matrix discretization path: the shooting
//! oracle integrates the phase of each radial problem and locates
//! eigenvalues by bisection on the monotone endpoint phase, and the 2-D
//! oracle discretizes the longitudinally invariant sector of a tube on a
//! coupled (rho, sigma) grid without any separation of variables. Agreement
//! between these and the production path is part of the verification suite;
//! keep them independent.

use crate::geometry::MargulisTube;
use crate::numerics::{richardson, rk4_step, symmetric_eigvals, DenseMatrix, NumericsError};
use std::f64::consts::PI;

/// Left start of the shooting problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LeftStart {
    Neumann,
    Dirichlet,
    /// start at a coordinate singularity rho = 0 where solutions behave
    /// like rho^m (m = 0 is the regular Neumann-type branch)
    RegularOrigin { m: u32 },
}

/// Right boundary condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RightCondition {
    Neumann,
    Dirichlet,
}

/// Phase-function shooting for the weighted problem
/// `-(w u')' + w V u = lambda w u` on [a, b].
///
/// With u = r sin(theta), w u' = r cos(theta) the phase obeys
/// `theta' = cos^2(theta)/w + w (lambda - V) sin^2(theta)`,
/// is monotone increasing in lambda at the right endpoint, and hits
/// `pi/2 + k pi` (Neumann) or `(k+1) pi` (Dirichlet) exactly at the k-th
/// eigenvalue. Bisection on lambda therefore cannot miss or double-count.
pub struct ShootingOracle<'a> {
    pub weight: &'a dyn Fn(f64) -> f64,
    pub potential: &'a dyn Fn(f64) -> f64,
    pub interval: (f64, f64),
    pub left: LeftStart,
    pub right: RightCondition,
    pub steps: usize,
}

impl<'a> ShootingOracle<'a> {
    fn end_phase(&self, lambda: f64) -> f64 {
        let (a, b) = self.interval;
        let (t0, theta0) = match self.left {
            LeftStart::Neumann => (a, PI / 2.0),
            LeftStart::Dirichlet => (a, 0.0),
            LeftStart::RegularOrigin { m } => {
                // series start just inside the singular origin
                let t0 = a + 1e-7 * (b - a);
                if m == 0 {
                    // u = 1 - lambda rho^2/4 + ..., w u' ~ -lambda t0^2 / 2
                    let wu = -lambda * t0 * t0 / 2.0;
                    (t0, f64::atan2(1.0, wu))
                } else {
                    // u ~ rho^m, w u' ~ m rho^{m-1} w
                    (t0, f64::atan2(t0, m as f64 * (self.weight)(t0)))
                }
            }
        };
        let f = |t: f64, y: &[f64], dy: &mut [f64]| {
            let w = (self.weight)(t);
            let v = (self.potential)(t);
            let (s, c) = y[0].sin_cos();
            dy[0] = c * c / w + w * (lambda - v) * s * s;
        };
        let h = (b - t0) / self.steps as f64;
        let mut y = vec![theta0];
        for i in 0..self.steps {
            y = rk4_step(&f, t0 + i as f64 * h, &y, h);
        }
        y[0]
    }

    fn target(&self, k: usize) -> f64 {
        match self.right {
            RightCondition::Neumann => PI / 2.0 + k as f64 * PI,
            RightCondition::Dirichlet => (k + 1) as f64 * PI,
        }
    }

    /// k-th eigenvalue (0-indexed), by bisection on the endpoint phase.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let target = self.target(k);
        let mut lo = -1.0;
        let mut hi = 1.0;
        while self.end_phase(hi) < target {
            lo = hi;
            hi *= 4.0;
        }
        while self.end_phase(lo) > target {
            lo = if lo < 0.0 { lo * 4.0 } else { -1.0 };
        }
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if self.end_phase(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// First `count` eigenvalues.
    pub fn eigenvalues(&self, count: usize) -> Vec<f64> {
        (0..count).map(|k| self.eigenvalue(k)).collect()
    }
}

/// Eigenvalues of the longitudinally invariant sector of a tube (functions
/// of (rho, sigma) only), by a genuinely two-dimensional finite-volume
/// discretization on a polar grid. Returns the smallest `count` values,
/// Richardson-extrapolated over a grid-doubling pair.
pub fn tube_invariant_sector_2d(
    tube: &MargulisTube,
    n_rho: usize,
    n_sigma: usize,
    count: usize,
) -> Result<Vec<(f64, f64)>, NumericsError> {
    let coarse = invariant_sector_eigs(tube, n_rho, n_sigma, count)?;
    let fine = invariant_sector_eigs(tube, 2 * n_rho, 2 * n_sigma, count)?;
    Ok(coarse
        .iter()
        .zip(fine.iter())
        .map(|(&c, &f)| richardson(c, f))
        .collect())
}

fn invariant_sector_eigs(
    tube: &MargulisTube,
    n_rho: usize,
    n_sigma: usize,
    count: usize,
) -> Result<Vec<f64>, NumericsError> {
    // metric d rho^2 + sinh^2 d sigma^2 (+ longitudinal factor, constant
    // here), volume density sinh cosh, angular stiffness cosh/sinh
    let r = tube.radius;
    let h = r / n_rho as f64;
    let dsig = 2.0 * PI / n_sigma as f64;
    let w = |rho: f64| rho.sinh() * rho.cosh();
    let idx = |i: usize, j: usize| i * n_sigma + j;
    let n = n_rho * n_sigma;

    // assemble the flux form, then symmetrize by sqrt of cell mass
    let mass: Vec<f64> = (0..n)
        .map(|p| w((p / n_sigma) as f64 * h + 0.5 * h) * h * dsig)
        .collect();
    let mut a = DenseMatrix::zeros(n);
    for i in 0..n_rho {
        let rho_c = (i as f64 + 0.5) * h;
        for j in 0..n_sigma {
            let p = idx(i, j);
            // radial fluxes through faces i and i+1 (zero flux at rho = 0
            // happens automatically since w(0) = 0; Neumann at rho = R)
            if i + 1 < n_rho {
                let wf = w((i + 1) as f64 * h) * dsig / h;
                let q = idx(i + 1, j);
                a[(p, p)] += wf;
                a[(q, q)] += wf;
                a[(p, q)] -= wf;
                a[(q, p)] -= wf;
            }
            // angular fluxes: conductance (cosh/sinh) * h / dsig, periodic
            let cf = rho_c.cosh() / rho_c.sinh() * h / dsig;
            let q = idx(i, (j + 1) % n_sigma);
            a[(p, p)] += cf;
            a[(q, q)] += cf;
            a[(p, q)] -= cf;
            a[(q, p)] -= cf;
        }
    }
    let mut sym = DenseMatrix::zeros(n);
    for p in 0..n {
        for q in 0..n {
            if a[(p, q)] != 0.0 {
                sym[(p, q)] = a[(p, q)] / (mass[p] * mass[q]).sqrt();
            }
        }
    }
    symmetric_eigvals(&sym, count)
}
