//! Neumann spectra of truncated cusps.
//!
//! A cusp is a flat torus cross-section shrinking like `exp(-rho)` in both
//! directions; per torus mode mu the radial problem is
//!
//!     -u'' + 2 u' + mu exp(2 rho) u = lambda u      on [0, rho_max]
//!
//! i.e. weight `exp(-2 rho)` and potential `mu exp(2 rho)`, Neumann at the
//! boundary rho = 0. States below the cutoff are confined by the growing
//! potential, so a zero value at the truncation depth (Dirichlet) stands in
//! for decay, with exponentially small error; the widening test in the suite
//! verifies this rather than assuming it.
//!
//! The mu = 0 sector of the untruncated cusp has exactly one point below the
//! essential spectrum: the constant function with eigenvalue 0. It is
//! reported exactly; the truncated mu = 0 problem only serves to confirm
//! that no other mu = 0 state exists below the essential floor.
//!
//! Far beyond the classical turning point the potential is clamped at a
//! large cap: states below the cutoff are double-exponentially small there,
//! so the clamp is invisible at the reported precision while keeping the
//! matrix norm (and hence eigensolver rounding) under control.

use super::{SpectraError, SpectrumEntry, SpectrumReport};
use crate::geometry::CuspModel;
use crate::numerics::{
    richardson, sl_discretize, tridiag_eigs, Endpoint, GridSpec, RadialOperator,
};
use crate::spectra::torus_modes_below;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CuspSpectrumParams {
    pub grid_cells: usize,
    /// clamp for the mode potential; error budget documented above
    pub potential_cap: f64,
}

impl Default for CuspSpectrumParams {
    fn default() -> Self {
        Self {
            grid_cells: 1024,
            potential_cap: 1e6,
        }
    }
}

const ESSENTIAL_FLOOR_N3: f64 = 1.0;

fn cusp_mode_eigenvalues(
    cusp: &CuspModel,
    mu: f64,
    params: &CuspSpectrumParams,
    cells: usize,
    count: usize,
) -> Result<Vec<f64>, SpectraError> {
    let cap = params.potential_cap;
    let weight = |rho: f64| (-2.0 * rho).exp();
    let potential = move |rho: f64| (mu * (2.0 * rho).exp()).min(cap);
    let op = RadialOperator {
        weight: &weight,
        potential: &potential,
        interval: (0.0, cusp.rho_max),
        left: Endpoint::Neumann,
        right: Endpoint::Dirichlet,
    };
    let grid = GridSpec::cells((0.0, cusp.rho_max), cells)?;
    Ok(tridiag_eigs(&sl_discretize(&op, &grid)?, count)?)
}

/// Assembled cusp spectrum up to `lambda_max`.
pub fn cusp_spectrum(
    cusp: &CuspModel,
    lambda_max: f64,
    params: &CuspSpectrumParams,
) -> Result<SpectrumReport, SpectraError> {
    let modes = torus_modes_below(&cusp.cross_section, lambda_max)?;
    // truncation precondition: the potential of every retained oscillating
    // mode must dominate the cutoff at the truncation depth
    if let Some((mu1, _, _)) = modes.iter().find(|(mu, _, _)| *mu > 1e-12) {
        let reach = (2.0 * cusp.rho_max).exp() * mu1;
        let need = 10.0 * lambda_max;
        if reach < need {
            return Err(SpectraError::TruncationTooShallow { reach, need });
        }
    }

    let mut report = SpectrumReport {
        entries: Vec::new(),
        grid_cells: params.grid_cells,
        lambda_max,
    };
    let count = params.grid_cells / 8;
    for (mu, mult, (p, q)) in modes {
        if mu <= 1e-12 {
            // constant mode of the untruncated cusp, exact
            report.entries.push(SpectrumEntry {
                lambda: 0.0,
                m: 0,
                k: 0,
                mult: 1,
                err: 0.0,
            });
            // any further states below the essential floor would be genuine;
            // the first truncated eigenvalue is the decay surrogate of the
            // constant itself and is skipped
            let coarse = cusp_mode_eigenvalues(cusp, 0.0, params, params.grid_cells, count)?;
            let fine = cusp_mode_eigenvalues(cusp, 0.0, params, params.grid_cells * 2, count)?;
            for (c, f) in coarse.iter().zip(fine.iter()).skip(1) {
                let (lambda, err) = richardson(*c, *f);
                if lambda <= lambda_max && lambda < ESSENTIAL_FLOOR_N3 {
                    report.entries.push(SpectrumEntry {
                        lambda,
                        m: 0,
                        k: 0,
                        mult: 1,
                        err,
                    });
                }
            }
        } else {
            let coarse = cusp_mode_eigenvalues(cusp, mu, params, params.grid_cells, count)?;
            let fine = cusp_mode_eigenvalues(cusp, mu, params, params.grid_cells * 2, count)?;
            for (c, f) in coarse.iter().zip(fine.iter()) {
                let (lambda, err) = richardson(*c, *f);
                if lambda <= lambda_max {
                    report.entries.push(SpectrumEntry {
                        lambda,
                        m: p,
                        k: q,
                        mult,
                        err,
                    });
                }
            }
        }
    }
    report.sort();
    Ok(report)
}
