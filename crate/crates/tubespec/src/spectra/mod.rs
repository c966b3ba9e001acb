//! Exact flat-torus spectra and semi-analytic Neumann spectra of tubes and
//! truncated cusps via holonomy-twisted separation of variables.
//!
//! Tube and cusp Laplacians separate into countably many radial
//! Sturm-Liouville problems indexed by boundary modes; every spectrum below a
//! cutoff is assembled from finitely many of them, with mode truncation
//! justified by potential floors.

mod cusp;
mod torus;
mod tube;

pub use cusp::{cusp_spectrum, CuspSpectrumParams};
pub use torus::{torus_lambda1_check, torus_modes_below, torus_spectrum, TorusFloorReport};
pub use tube::{
    tube_lambda1,
    check_tube_lambda1, tube_mode_spectrum, tube_modes, tube_neumann_spectrum, TubeLambda1Report,
    TubeMode, TubeSpectrumParams,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("degenerate lattice")]
    DegenerateLattice,
    #[error("count must be at least 1")]
    ZeroCount,
    #[error("grid too coarse: {cells} cells cannot resolve {requested} eigenvalues")]
    GridTooCoarse { cells: usize, requested: usize },
    #[error("cusp truncation too shallow: exp(2 rho_max) * mu = {reach:.3e} < 10 * lambda_max = {need:.3e}")]
    TruncationTooShallow { reach: f64, need: f64 },
    #[error("boundary torus injectivity radius {inj:.4} below the thick threshold {eps:.4}; floor inapplicable")]
    ThinLattice { inj: f64, eps: f64 },
    #[error(transparent)]
    Numerics(#[from] crate::numerics::NumericsError),
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}

/// One point of an assembled spectrum: the eigenvalue, the labels of the
/// boundary mode it came from, its multiplicity and a Richardson error bar
/// (zero for exactly enumerated spectra).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub lambda: f64,
    pub m: i64,
    pub k: i64,
    pub mult: u32,
    pub err: f64,
}

/// Ascending eigenvalues with mode labels and grid metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub entries: Vec<SpectrumEntry>,
    /// radial cells of the coarse grid (0 for exact enumerations)
    pub grid_cells: usize,
    pub lambda_max: f64,
}

impl SpectrumReport {
    pub fn lambda(&self, index: usize) -> Option<f64> {
        let mut i = 0;
        for e in &self.entries {
            i += e.mult as usize;
            if index < i {
                return Some(e.lambda);
            }
        }
        None
    }

    /// Smallest eigenvalue strictly above the given threshold.
    pub fn first_above(&self, threshold: f64) -> Option<&SpectrumEntry> {
        self.entries.iter().find(|e| e.lambda > threshold)
    }

    pub fn sort(&mut self) {
        self.entries.sort_by(|a, b| {
            (a.lambda, a.m, a.k)
                .partial_cmp(&(b.lambda, b.m, b.k))
                .unwrap()
        });
    }
}
