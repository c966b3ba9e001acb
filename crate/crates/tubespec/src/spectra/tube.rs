//! Neumann spectra of hyperbolic tubes by separation of variables.
//!
//! Functions on the solid torus decompose over boundary characters
//! `exp(i (m sigma + omega s))` that respect the holonomy: going once around
//! the core advances s by the core length and rotates sigma by the twist, so
//! `omega = (2 pi k - m * twist) / l` for integers (m, k). Each mode leaves a
//! radial Sturm-Liouville problem with weight `sinh(rho) cosh(rho)` and
//! potential `m^2/sinh^2(rho) + omega^2/cosh^2(rho)` on [0, R], Neumann at
//! the boundary, and a regularity condition at the core (Neumann for m = 0,
//! Dirichlet for m != 0, matching the local behavior u ~ rho^|m|).

use super::{SpectraError, SpectrumEntry, SpectrumReport};
use crate::geometry::{tube_boundary_volume, tube_volume, ManifoldParams, MargulisTube};
use crate::numerics::{
    richardson, sl_discretize, tridiag_eigs, Endpoint, GridSpec, RadialOperator,
};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Boundary character of a tube: angular frequency m, deck index k, and the
/// longitudinal frequency omega they determine.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct TubeMode {
    pub m: i64,
    pub k: i64,
    pub omega: f64,
}

impl TubeMode {
    pub fn new(tube: &MargulisTube, m: i64, k: i64) -> Self {
        Self {
            m,
            k,
            omega: (TAU * k as f64 - m as f64 * tube.twist) / tube.core_length,
        }
    }

    /// Multiplicity in the real spectrum: (m, k) and (-m, -k) give the same
    /// radial problem.
    pub fn multiplicity(&self) -> u32 {
        if self.m == 0 && self.k == 0 {
            1
        } else {
            2
        }
    }

    /// Smallest possible value of the mode potential on (0, R]: both terms
    /// decrease in rho, so the floor sits at the boundary.
    pub fn potential_floor(&self, tube: &MargulisTube) -> f64 {
        let sh = tube.radius.sinh();
        let ch = tube.radius.cosh();
        (self.m as f64 / sh).powi(2) + (self.omega / ch).powi(2)
    }
}

/// Grid and truncation parameters for tube spectra.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TubeSpectrumParams {
    /// radial cells of the coarse grid; the fine grid doubles this
    pub grid_cells: usize,
}

impl Default for TubeSpectrumParams {
    fn default() -> Self {
        Self { grid_cells: 1024 }
    }
}

/// Canonical representatives of all modes whose potential floor does not
/// exceed `lambda_max`; modes above the floor cannot contribute eigenvalues
/// that small. Representatives are (m = 0, k >= 0) and (m >= 1, any k), each
/// standing for the conjugate pair.
pub fn tube_modes(tube: &MargulisTube, lambda_max: f64) -> Vec<TubeMode> {
    assert!(lambda_max > 0.0);
    let sh = tube.radius.sinh();
    let ch = tube.radius.cosh();
    let mut modes = Vec::new();
    let m_max = (sh * lambda_max.sqrt()).floor() as i64;
    for m in 0..=m_max {
        let rem = lambda_max - (m as f64 / sh).powi(2);
        if rem < 0.0 {
            continue;
        }
        // |omega| <= cosh(R) sqrt(rem)  <=>  |2 pi k - m twist| <= l cosh(R) sqrt(rem)
        let band = tube.core_length * ch * rem.sqrt();
        let center = m as f64 * tube.twist;
        let k_lo = ((center - band) / TAU).ceil() as i64;
        let k_hi = ((center + band) / TAU).floor() as i64;
        for k in k_lo..=k_hi {
            if m == 0 && k < 0 {
                continue;
            }
            modes.push(TubeMode::new(tube, m, k));
        }
    }
    modes.sort_by(|a, b| (a.m, a.k).cmp(&(b.m, b.k)));
    modes
}

/// Radial eigenvalues of one mode with Richardson error bars, ascending.
pub fn tube_mode_spectrum(
    tube: &MargulisTube,
    mode: &TubeMode,
    params: &TubeSpectrumParams,
    count: usize,
) -> Result<Vec<(f64, f64)>, SpectraError> {
    if count > params.grid_cells / 8 {
        return Err(SpectraError::GridTooCoarse {
            cells: params.grid_cells,
            requested: count,
        });
    }
    let coarse = mode_eigenvalues(tube, mode, params.grid_cells, count)?;
    let fine = mode_eigenvalues(tube, mode, params.grid_cells * 2, count)?;
    Ok(coarse
        .iter()
        .zip(fine.iter())
        .map(|(&c, &f)| richardson(c, f))
        .collect())
}

fn mode_eigenvalues(
    tube: &MargulisTube,
    mode: &TubeMode,
    cells: usize,
    count: usize,
) -> Result<Vec<f64>, SpectraError> {
    let m2 = (mode.m as f64).powi(2);
    let w2 = mode.omega.powi(2);
    let weight = |rho: f64| rho.sinh() * rho.cosh();
    let potential = move |rho: f64| m2 / rho.sinh().powi(2) + w2 / rho.cosh().powi(2);
    let op = RadialOperator {
        weight: &weight,
        potential: &potential,
        interval: (0.0, tube.radius),
        left: if mode.m == 0 {
            Endpoint::Neumann
        } else {
            Endpoint::Dirichlet
        },
        right: Endpoint::Neumann,
    };
    let grid = GridSpec::cells((0.0, tube.radius), cells)?;
    Ok(tridiag_eigs(&sl_discretize(&op, &grid)?, count)?)
}

/// Assembled Neumann spectrum of the tube up to `lambda_max`: sorted merge of
/// the per-mode radial spectra over all admissible modes.
pub fn tube_neumann_spectrum(
    tube: &MargulisTube,
    lambda_max: f64,
    params: &TubeSpectrumParams,
) -> Result<SpectrumReport, SpectraError> {
    let mut report = SpectrumReport {
        entries: Vec::new(),
        grid_cells: params.grid_cells,
        lambda_max,
    };
    for mode in tube_modes(tube, lambda_max) {
        let coarse = mode_eigenvalues(tube, &mode, params.grid_cells, params.grid_cells / 8)?;
        let fine = mode_eigenvalues(tube, &mode, params.grid_cells * 2, params.grid_cells / 8)?;
        for (c, f) in coarse.iter().zip(fine.iter()) {
            let (lambda, err) = richardson(*c, *f);
            if lambda <= lambda_max {
                report.entries.push(SpectrumEntry {
                    lambda,
                    m: mode.m,
                    k: mode.k,
                    mult: mode.multiplicity(),
                    err,
                });
            }
        }
    }
    report.sort();
    Ok(report)
}

/// First nonzero Neumann eigenvalue of a tube together with the scale-free
/// ratio it is certified against.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TubeLambda1Report {
    pub lambda1: f64,
    pub err: f64,
    /// mode carrying lambda_1
    pub mode: (i64, i64),
    pub boundary_volume: f64,
    pub volume: f64,
    /// lambda_1 * vol(boundary)^2 / log vol; the per-case minimal bound
    /// constant
    pub ratio: f64,
    /// distance between the tube radius and the extension cutoff; the
    /// check applies when this is at least 3
    pub r_minus_theta: f64,
    pub applicable: bool,
}

/// First nonzero eigenvalue by branch and bound over potential floors: a
/// mode whose floor exceeds the best eigenvalue found so far cannot carry a
/// smaller one, so only a handful of low-floor modes are ever solved.
pub fn tube_lambda1(
    tube: &MargulisTube,
    params: &TubeSpectrumParams,
) -> Result<(f64, f64, TubeMode), SpectraError> {
    let base_mode = TubeMode::new(tube, 0, 0);
    let base = tube_mode_spectrum(tube, &base_mode, params, 2)?;
    let mut best = (base[1].0, base[1].1, base_mode);
    let mut candidates = tube_modes(tube, best.0);
    candidates.sort_by(|a, b| {
        a.potential_floor(tube)
            .partial_cmp(&b.potential_floor(tube))
            .unwrap()
    });
    for mode in candidates {
        if mode.m == 0 && mode.k == 0 {
            continue;
        }
        if mode.potential_floor(tube) >= best.0 {
            break;
        }
        let eigs = tube_mode_spectrum(tube, &mode, params, 1)?;
        if eigs[0].0 < best.0 {
            best = (eigs[0].0, eigs[0].1, mode);
        }
    }
    Ok(best)
}

/// Certify the first nonzero eigenvalue against the boundary-area bound.
pub fn check_tube_lambda1(
    tube: &MargulisTube,
    manifold: &ManifoldParams,
    params: &TubeSpectrumParams,
) -> Result<TubeLambda1Report, SpectraError> {
    let vol_bdry = tube_boundary_volume(tube);
    let vol = tube_volume(tube);
    let r_minus_theta = vol_bdry.ln() - manifold.constants.q1 - 1.0;
    let (lambda1, err, mode) = tube_lambda1(tube, params)?;
    Ok(TubeLambda1Report {
        lambda1,
        err,
        mode: (mode.m, mode.k),
        boundary_volume: vol_bdry,
        volume: vol,
        ratio: lambda1 * vol_bdry * vol_bdry / vol.ln(),
        r_minus_theta,
        applicable: r_minus_theta >= 3.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ManifoldParams;

    fn params() -> ManifoldParams {
        ManifoldParams::default()
    }

    fn small_tube() -> MargulisTube {
        MargulisTube::new(0.1, 0.0, 2.0, &params()).unwrap()
    }

    #[test]
    fn constant_mode_always_enumerated() {
        let t = small_tube();
        let modes = tube_modes(&t, 0.05);
        assert!(modes.iter().any(|md| md.m == 0 && md.k == 0));
    }

    #[test]
    fn deck_index_range_matches_truncation_rule() {
        let p = params();
        let t = MargulisTube::new(0.005, 0.0, 5.0, &p).unwrap();
        let modes = tube_modes(&t, 1.0);
        // |2 pi k / l| <= cosh(R) forces k = 0 here
        let k_bound =
            (t.core_length * t.radius.cosh() * 1.0f64.sqrt() / TAU).floor() as i64;
        assert_eq!(k_bound, 0);
        assert!(modes.iter().all(|md| md.k == 0));
        // angular modes go all the way to sinh(R)
        let m_max = modes.iter().map(|md| md.m).max().unwrap();
        assert_eq!(m_max, (t.radius.sinh()).floor() as i64);
    }

    #[test]
    fn constant_mode_ground_state_is_zero() {
        let t = small_tube();
        let sp = tube_mode_spectrum(
            &t,
            &TubeMode::new(&t, 0, 0),
            &TubeSpectrumParams { grid_cells: 512 },
            3,
        )
        .unwrap();
        assert!(sp[0].0.abs() < 1e-9, "lambda0 = {}", sp[0].0);
        assert!(sp[1].0 > 0.01);
    }

    #[test]
    fn eigenvalues_increase_with_angular_frequency() {
        let t = small_tube();
        let grid = TubeSpectrumParams { grid_cells: 256 };
        let mut prev = tube_mode_spectrum(&t, &TubeMode::new(&t, 0, 0), &grid, 3).unwrap();
        for m in 1..=3 {
            let cur = tube_mode_spectrum(&t, &TubeMode::new(&t, m, 0), &grid, 3).unwrap();
            // potential grows pointwise with m^2, so every eigenvalue climbs
            for (lo, hi) in prev.iter().zip(cur.iter()) {
                assert!(hi.0 > lo.0 - 1e-12, "m={m}");
            }
            prev = cur;
        }
    }

    #[test]
    fn grid_too_coarse_is_flagged() {
        let t = small_tube();
        let r = tube_mode_spectrum(
            &t,
            &TubeMode::new(&t, 0, 0),
            &TubeSpectrumParams { grid_cells: 64 },
            20,
        );
        assert!(matches!(r, Err(SpectraError::GridTooCoarse { .. })));
    }

    #[test]
    fn assembled_spectrum_starts_at_zero_with_multiplicity_one() {
        let t = small_tube();
        let rep = tube_neumann_spectrum(&t, 0.4, &TubeSpectrumParams { grid_cells: 256 }).unwrap();
        assert!(rep.entries[0].lambda.abs() < 1e-9);
        assert_eq!(rep.entries[0].mult, 1);
        assert_eq!((rep.entries[0].m, rep.entries[0].k), (0, 0));
        // ascending
        for w in rep.entries.windows(2) {
            assert!(w[0].lambda <= w[1].lambda);
        }
    }

    #[test]
    fn spectrum_invariant_under_full_twist_shift() {
        let p = params();
        let t1 = MargulisTube::new(0.1, 0.7, 2.0, &p).unwrap();
        let t2 = MargulisTube::new(0.1, 0.7 + TAU, 2.0, &p).unwrap();
        let g = TubeSpectrumParams { grid_cells: 256 };
        let s1 = tube_neumann_spectrum(&t1, 0.6, &g).unwrap();
        let s2 = tube_neumann_spectrum(&t2, 0.6, &g).unwrap();
        assert_eq!(s1.entries.len(), s2.entries.len());
        for (a, b) in s1.entries.iter().zip(s2.entries.iter()) {
            // deck relabeling k -> k + m matches the mode sets
            assert!((a.lambda - b.lambda).abs() < 1e-9 * (1.0 + a.lambda));
            assert_eq!(a.mult, b.mult);
            assert_eq!(a.m, b.m);
            assert_eq!(b.k, a.k + a.m);
        }
    }

    #[test]
    fn widening_the_mode_cutoff_adds_no_low_eigenvalues() {
        let t = small_tube();
        let g = TubeSpectrumParams { grid_cells: 256 };
        let narrow = tube_neumann_spectrum(&t, 0.3, &g).unwrap();
        let wide = tube_neumann_spectrum(&t, 0.9, &g).unwrap();
        let below: Vec<_> = wide.entries.iter().filter(|e| e.lambda <= 0.3).collect();
        assert_eq!(narrow.entries.len(), below.len());
        for (a, b) in narrow.entries.iter().zip(below) {
            assert!((a.lambda - b.lambda).abs() < 1e-12 * (1.0 + a.lambda));
        }
    }

    #[test]
    fn lambda1_vanishes_with_core_length_at_fixed_boundary_area() {
        // fix the boundary area, shrink the core: the boundary torus becomes
        // thin in the longitudinal direction and lambda_1 collapses
        let p = params();
        let area = 30.0;
        let g = TubeSpectrumParams { grid_cells: 256 };
        let mut last = f64::INFINITY;
        for l in [0.02, 0.005, 0.002] {
            // solve 2 pi l sinh R cosh R = area for R
            let r = 0.5 * ((area / (PI * l)).asinh());
            let t = MargulisTube::new(l, 0.0, r, &p).unwrap();
            assert!((tube_boundary_volume(&t) - area).abs() < 1e-9 * area);
            let rep = check_tube_lambda1(&t, &p, &g).unwrap();
            assert!(rep.lambda1 < last, "l={l} lambda1={}", rep.lambda1);
            last = rep.lambda1;
        }
        assert!(last < 5e-3, "lambda1 did not collapse: {last}");
    }

    #[test]
    fn lambda1_check_reports_applicability() {
        let p = params();
        // standard-family tube: l cosh R = a eps, deep enough
        let t = MargulisTube::widest(1e-3, 0.0, 1.0, &p).unwrap();
        let rep = check_tube_lambda1(&t, &p, &TubeSpectrumParams { grid_cells: 256 }).unwrap();
        assert!(rep.applicable);
        assert!(rep.lambda1 > 0.0);
        assert!(rep.ratio > 0.0);
        // small tube: boundary area too small for the cutoff hypothesis
        let small = small_tube();
        let rep2 =
            check_tube_lambda1(&small, &p, &TubeSpectrumParams { grid_cells: 256 }).unwrap();
        assert!(!rep2.applicable);
    }
}
