//! Boundary-extension operator for tubes and the thin-part integral
//! inequalities.
//!
//! A function on the boundary torus of a tube, decomposed into holonomy
//! modes, extends to the solid tube by transporting each oscillating mode
//! inward unchanged down to a cutoff depth `theta`, ramping it linearly to
//! zero over one unit, and dropping it below; the constant part extends as a
//! constant. The cutoff is pinned to the boundary area:
//! `theta = R - log vol(boundary) + q1 + 1`, which keeps the extension's
//! squared norm pinched between a quarter and a half of the boundary squared
//! norm and its Rayleigh quotient within a log-volume factor of the boundary
//! Rayleigh quotient.
//!
//! Functions are finite mode expansions with per-mode radial profiles, so
//! every integral in this module is a one-dimensional quadrature against the
//! radial area density. Conditional inequalities report "inapplicable"
//! rather than pass/fail when their hypotheses do not hold.

use crate::geometry::{
    tube_boundary_volume, tube_volume, CuspModel, ManifoldParams, MargulisTube, Shell,
};
use crate::numerics::simpson;
use crate::report::MarginCase;
use crate::spectra::TubeMode;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExtensionError {
    #[error("cutoff hypothesis fails: R - theta = {0:.4} < 3")]
    CutoffTooClose(f64),
    #[error("boundary torus too thin: injectivity radius {inj:.4} < {eps:.4}")]
    ThinBoundary { inj: f64, eps: f64 },
    #[error("collar slice {index} has vanishing mass")]
    ZeroMassSlice { index: usize },
    #[error("collar data needs at least 3 uniform samples")]
    BadCollarData,
}

/// Real-valued function on a tube's boundary torus: a mean plus canonical
/// oscillating modes, each standing for itself and its conjugate.
/// Canonical labels are (m > 0, any k) and (m = 0, k > 0).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TubeBoundaryFunction {
    pub mean: f64,
    pub modes: Vec<BoundaryMode>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryMode {
    pub mode: TubeMode,
    /// complex amplitude of the canonical representative
    pub re: f64,
    pub im: f64,
}

impl BoundaryMode {
    /// squared-norm weight of the conjugate pair
    pub fn pair_sq(&self) -> f64 {
        2.0 * (self.re * self.re + self.im * self.im)
    }
}

impl TubeBoundaryFunction {
    pub fn constant(c: f64) -> Self {
        Self {
            mean: c,
            modes: Vec::new(),
        }
    }

    /// mean-square sum of the oscillating part (per unit boundary area)
    fn oscillating_sq(&self) -> f64 {
        self.modes.iter().map(BoundaryMode::pair_sq).sum()
    }

    /// Rayleigh quotient on the boundary torus.
    pub fn boundary_rayleigh(&self, tube: &MargulisTube) -> f64 {
        let denom = self.mean * self.mean + self.oscillating_sq();
        if denom == 0.0 {
            return 0.0;
        }
        let num: f64 = self
            .modes
            .iter()
            .map(|bm| bm.pair_sq() * bm.mode.potential_floor(tube))
            .sum();
        num / denom
    }

    /// linear combination `alpha * self + beta * other` (mode lists are
    /// merged by label)
    pub fn combine(&self, alpha: f64, other: &Self, beta: f64) -> Self {
        let mut modes: std::collections::BTreeMap<(i64, i64), BoundaryMode> = Default::default();
        for (scale, f) in [(alpha, self), (beta, other)] {
            for bm in &f.modes {
                let e = modes.entry((bm.mode.m, bm.mode.k)).or_insert(BoundaryMode {
                    mode: bm.mode,
                    re: 0.0,
                    im: 0.0,
                });
                e.re += scale * bm.re;
                e.im += scale * bm.im;
            }
        }
        Self {
            mean: alpha * self.mean + beta * other.mean,
            modes: modes.into_values().collect(),
        }
    }
}

/// The assembled extension: cutoff geometry plus per-mode amplitudes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionPlan {
    pub theta: f64,
    pub radius: f64,
    pub boundary_area: f64,
    pub constant_part: f64,
    pub modes: Vec<BoundaryMode>,
}

impl ExtensionPlan {
    /// radial cutoff profile multiplying every oscillating mode
    pub fn cut_profile(&self, rho: f64) -> f64 {
        if rho >= self.theta + 1.0 {
            1.0
        } else if rho >= self.theta {
            rho - self.theta
        } else {
            0.0
        }
    }

    pub fn cut_profile_deriv(&self, rho: f64) -> f64 {
        if rho > self.theta && rho < self.theta + 1.0 {
            1.0
        } else {
            0.0
        }
    }

    /// radial profile of one mode (amplitude magnitude times the cutoff)
    pub fn mode_profile(&self, index: usize, rho: f64) -> (f64, f64) {
        let bm = &self.modes[index];
        let phi = self.cut_profile(rho);
        (bm.re * phi, bm.im * phi)
    }
}

/// Integral data of an extension.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionReport {
    /// squared norm of the extension over the tube
    pub sq_norm: f64,
    /// squared norm of the boundary function
    pub boundary_sq_norm: f64,
    /// Dirichlet energy of the extension
    pub dirichlet: f64,
    /// boundary Rayleigh quotient d
    pub rayleigh_boundary: f64,
    /// Rayleigh quotient of the extension (0 for constants)
    pub rayleigh_extension: f64,
    /// sq_norm / boundary_sq_norm, pinched in [1/4, 1/2]
    pub sq_norm_ratio: f64,
    /// integral of the extension over the tube
    pub mean_value: f64,
    pub mean_zero: bool,
}

const QUAD_POINTS: usize = 512;

fn tube_weight(rho: f64) -> f64 {
    rho.sinh() * rho.cosh()
}

/// Extend a boundary function into the tube.
pub fn extend(
    tube: &MargulisTube,
    f: &TubeBoundaryFunction,
    params: &ManifoldParams,
) -> Result<(ExtensionPlan, ExtensionReport), ExtensionError> {
    let area = tube_boundary_volume(tube);
    let r = tube.radius;
    let theta = r - area.ln() + params.constants.q1 + 1.0;
    if r - theta < 3.0 {
        return Err(ExtensionError::CutoffTooClose(r - theta));
    }
    let lat = crate::geometry::TorusLattice::tube_boundary(tube);
    let inj = lat.shortest_vector() / 2.0;
    if inj < params.epsilon {
        return Err(ExtensionError::ThinBoundary {
            inj,
            eps: params.epsilon,
        });
    }

    let plan = ExtensionPlan {
        theta,
        radius: r,
        boundary_area: area,
        constant_part: f.mean,
        modes: f.modes.clone(),
    };

    let wr = tube_weight(r);
    let vol = tube_volume(tube);
    let osc_sq = f.oscillating_sq();
    let boundary_sq_norm = area * (f.mean * f.mean + osc_sq);

    // per-mode radial integrals against the area density w(rho)/w(R)
    let phi2_int = simpson(
        |rho| plan.cut_profile(rho).powi(2) * tube_weight(rho) / wr,
        theta,
        theta + 1.0,
        QUAD_POINTS,
    ) + simpson(
        |rho| tube_weight(rho) / wr,
        theta + 1.0,
        r,
        QUAD_POINTS,
    );
    let ramp_int = simpson(|rho| tube_weight(rho) / wr, theta, theta + 1.0, QUAD_POINTS);

    let sq_norm = f.mean * f.mean * vol + area * osc_sq * phi2_int;
    let mut dirichlet = 0.0;
    for bm in &f.modes {
        let m2 = (bm.mode.m as f64).powi(2);
        let w2 = bm.mode.omega.powi(2);
        let tangential = simpson(
            |rho| {
                plan.cut_profile(rho).powi(2)
                    * (m2 / rho.sinh().powi(2) + w2 / rho.cosh().powi(2))
                    * tube_weight(rho)
                    / wr
            },
            theta,
            r,
            2 * QUAD_POINTS,
        );
        dirichlet += area * bm.pair_sq() * (ramp_int + tangential);
    }

    let report = ExtensionReport {
        sq_norm,
        boundary_sq_norm,
        dirichlet,
        rayleigh_boundary: f.boundary_rayleigh(tube),
        rayleigh_extension: if sq_norm > 0.0 { dirichlet / sq_norm } else { 0.0 },
        sq_norm_ratio: if boundary_sq_norm > 0.0 {
            sq_norm / boundary_sq_norm
        } else {
            0.0
        },
        // oscillating modes integrate to zero over every slice
        mean_value: f.mean * vol,
        mean_zero: f.mean == 0.0,
    };
    Ok((plan, report))
}

/// Squared mass of the extension on the radial slice at `rho`, via the
/// homothety scaling of slice integrals.
pub fn mass_profile(plan: &ExtensionPlan, rho: f64) -> f64 {
    let scale = plan.boundary_area * tube_weight(rho) / tube_weight(plan.radius);
    let osc: f64 = plan.modes.iter().map(BoundaryMode::pair_sq).sum();
    scale * (plan.constant_part.powi(2) + plan.cut_profile(rho).powi(2) * osc)
}

/// Thin domain against whose area density radial integrals are formed.
pub enum ThinDomain<'a> {
    Tube(&'a MargulisTube),
    Cusp(&'a CuspModel),
}

impl ThinDomain<'_> {
    pub fn interval(&self) -> (f64, f64) {
        match self {
            ThinDomain::Tube(t) => (0.0, t.radius),
            ThinDomain::Cusp(c) => (0.0, c.rho_max),
        }
    }

    /// area of the slice at radial position rho
    pub fn slice_area(&self, rho: f64) -> f64 {
        match self {
            ThinDomain::Tube(t) => {
                2.0 * std::f64::consts::PI * t.core_length * tube_weight(rho)
            }
            ThinDomain::Cusp(c) => c.cross_section.area() * (-2.0 * rho).exp(),
        }
    }

    /// radial position of the boundary
    pub fn boundary_rho(&self) -> f64 {
        match self {
            ThinDomain::Tube(t) => t.radius,
            ThinDomain::Cusp(_) => 0.0,
        }
    }
}

/// One mode component of a radially separable test function: a radial
/// profile (with derivative) and the tangential multiplier of its boundary
/// mode. `pair_weight` is 2 for a conjugate pair, 1 for a real mode.
pub struct RadialComponent<'a> {
    pub pair_weight: f64,
    pub profile: &'a dyn Fn(f64) -> f64,
    pub profile_deriv: &'a dyn Fn(f64) -> f64,
    pub tangential: &'a dyn Fn(f64) -> f64,
}

/// Check the thin-part Poincare inequality: whenever the squared norm
/// dominates the boundary trace, four times the Dirichlet energy dominates
/// the squared norm (dimension 3). Returns the margin
/// `4 * energy - sq_norm`, flagged inapplicable if the trace hypothesis
/// fails.
pub fn lemma22_check(
    domain: &ThinDomain,
    components: &[RadialComponent],
    id: &str,
) -> MarginCase {
    let (a, b) = domain.interval();
    let brho = domain.boundary_rho();
    let mut sq = 0.0;
    let mut trace = 0.0;
    let mut energy = 0.0;
    for comp in components {
        sq += comp.pair_weight
            * simpson(
                |rho| (comp.profile)(rho).powi(2) * domain.slice_area(rho),
                a,
                b,
                4 * QUAD_POINTS,
            );
        trace += comp.pair_weight * (comp.profile)(brho).powi(2) * domain.slice_area(brho);
        energy += comp.pair_weight
            * simpson(
                |rho| {
                    ((comp.profile_deriv)(rho).powi(2)
                        + (comp.tangential)(rho) * (comp.profile)(rho).powi(2))
                        * domain.slice_area(rho)
                },
                a,
                b,
                4 * QUAD_POINTS,
            );
    }
    MarginCase {
        id: id.to_string(),
        hypothesis_ok: sq >= trace,
        margin: 4.0 * energy - sq,
        tolerance: 1e-8,
    }
}

/// Check the shell Rayleigh bound: a radial function on a shell of height
/// k >= 2 whose mass on the starting unit band dominates three times the
/// mass on the final unit band has Rayleigh quotient at least 1/3.
pub fn shell_rayleigh_check(
    shell: &Shell,
    profile: &dyn Fn(f64) -> f64,
    profile_deriv: &dyn Fn(f64) -> f64,
    id: &str,
) -> MarginCase {
    let k = shell.height;
    let f2a = |t: f64| profile(t).powi(2) * shell.slice_area(t);
    let lhs = simpson(f2a, 0.0, 1.0, QUAD_POINTS);
    let rhs = simpson(f2a, k - 1.0, k, QUAD_POINTS);
    let sq = simpson(f2a, 0.0, k, 4 * QUAD_POINTS);
    let energy = simpson(
        |t| profile_deriv(t).powi(2) * shell.slice_area(t),
        0.0,
        k,
        4 * QUAD_POINTS,
    );
    MarginCase {
        id: id.to_string(),
        hypothesis_ok: lhs >= 3.0 * rhs && sq > 0.0,
        margin: if sq > 0.0 { energy / sq - 1.0 / 3.0 } else { 0.0 },
        tolerance: 1e-8,
    }
}

/// Collar data for the slice renormalization: per-slice mode coefficients of
/// a function on `V x [0, delta]`, sampled on a uniform grid, with exact
/// derivative curves and per-slice tangential eigenvalues.
#[derive(Debug, Clone)]
pub struct CollarData {
    /// uniform sample points of [0, delta], at least 3
    pub s: Vec<f64>,
    /// slice area at each sample
    pub area: Vec<f64>,
    pub modes: Vec<CollarMode>,
}

#[derive(Debug, Clone)]
pub struct CollarMode {
    /// complex coefficient curve
    pub c: Vec<(f64, f64)>,
    /// its s-derivative
    pub dc: Vec<(f64, f64)>,
    /// tangential eigenvalue of the mode on each slice
    pub tangential: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SliceRenormReport {
    /// integral of the squared normal derivative of the renormalized
    /// function minus the same for the original; predicted <= 0
    pub normal_margin: f64,
    pub normal_sq_renormalized: f64,
    pub normal_sq_original: f64,
    pub tangential_sq_renormalized: f64,
    pub tangential_sq_original: f64,
    /// log-amplitude beta at each sample (mass matching)
    pub beta: Vec<f64>,
}

/// Replace a collar function by the product-form function with the same
/// per-slice mass (built from the outermost slice's profile), and compare
/// normal-derivative energies. The renormalized function never has more:
/// per slice this is exactly the Cauchy-Schwarz inequality, so the margin is
/// reported from the pointwise difference and stays nonpositive up to
/// rounding.
pub fn slice_renormalize(data: &CollarData) -> Result<SliceRenormReport, ExtensionError> {
    let n = data.s.len();
    if n < 3 || data.area.len() != n || data.modes.iter().any(|m| m.c.len() != n) {
        return Err(ExtensionError::BadCollarData);
    }
    let last = n - 1;
    // per-slice coefficient mass and its derivative
    let mut mass = vec![0.0; n];
    let mut dmass_half = vec![0.0; n]; // sum Re(conj(c) c') = S'/2
    let mut orig_normal = vec![0.0; n];
    for mode in &data.modes {
        for i in 0..n {
            let (re, im) = mode.c[i];
            let (dre, dim) = mode.dc[i];
            mass[i] += re * re + im * im;
            dmass_half[i] += re * dre + im * dim;
            orig_normal[i] += dre * dre + dim * dim;
        }
    }
    for (i, &m) in mass.iter().enumerate() {
        if m <= 0.0 {
            return Err(ExtensionError::ZeroMassSlice { index: i });
        }
    }
    let beta: Vec<f64> = mass.iter().map(|&s| 0.5 * (s / mass[last]).ln()).collect();

    let h = data.s[1] - data.s[0];
    let integrate = |values: &[f64]| crate::numerics::trapezoid(values, h);

    let renorm_normal: Vec<f64> = (0..n)
        .map(|i| data.area[i] * dmass_half[i] * dmass_half[i] / mass[i])
        .collect();
    let orig_normal_w: Vec<f64> = (0..n).map(|i| data.area[i] * orig_normal[i]).collect();
    // pointwise difference is <= 0 by Cauchy-Schwarz; integrate it directly
    let diff: Vec<f64> = (0..n).map(|i| renorm_normal[i] - orig_normal_w[i]).collect();

    let mut tang_orig = vec![0.0; n];
    let mut tang_renorm = vec![0.0; n];
    for mode in &data.modes {
        let (re_d, im_d) = mode.c[last];
        let last_sq = re_d * re_d + im_d * im_d;
        for i in 0..n {
            let (re, im) = mode.c[i];
            tang_orig[i] += data.area[i] * mode.tangential[i] * (re * re + im * im);
            tang_renorm[i] +=
                data.area[i] * mode.tangential[i] * (mass[i] / mass[last]) * last_sq;
        }
    }

    Ok(SliceRenormReport {
        normal_margin: integrate(&diff),
        normal_sq_renormalized: integrate(&renorm_normal),
        normal_sq_original: integrate(&orig_normal_w),
        tangential_sq_renormalized: integrate(&tang_renorm),
        tangential_sq_original: integrate(&tang_orig),
        beta,
    })
}

/// Seeded generators for the sweep suites.
pub mod sampling {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Random boundary function with a handful of low modes, amplitudes
    /// decaying like the inverse cube of the label size. Mean-zero with
    /// probability one half.
    pub fn boundary_function(tube: &MargulisTube, seed: u64) -> TubeBoundaryFunction {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n_modes = rng.gen_range(1..=5);
        let mut modes: Vec<BoundaryMode> = Vec::new();
        while modes.len() < n_modes {
            let m = rng.gen_range(0..=3i64);
            let k = rng.gen_range(-2..=2i64);
            if (m == 0 && k <= 0) || modes.iter().any(|bm| (bm.mode.m, bm.mode.k) == (m, k)) {
                continue;
            }
            let decay = (1.0 + (m * m + k * k) as f64).powf(-1.5);
            let phase = rng.gen_range(0.0..std::f64::consts::TAU);
            let amp = rng.gen_range(0.2..1.0) * decay;
            modes.push(BoundaryMode {
                mode: TubeMode::new(tube, m, k),
                re: amp * phase.cos(),
                im: amp * phase.sin(),
            });
        }
        let mean = if rng.gen_bool(0.5) {
            0.0
        } else {
            rng.gen_range(-1.0..1.0)
        };
        TubeBoundaryFunction { mean, modes }
    }

    /// Coefficients of a smooth radial test profile: a low cosine series
    /// with a quartic boundary damper.
    #[derive(Debug, Clone)]
    pub struct ProfileSpec {
        pub coeffs: Vec<f64>,
        pub damp: f64,
        pub length: f64,
    }

    impl ProfileSpec {
        pub fn seeded(length: f64, seed: u64) -> Self {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Self {
                coeffs: (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect(),
                damp: rng.gen_range(0.55..0.95),
                length,
            }
        }

        pub fn value(&self, rho: f64) -> f64 {
            let x = rho / self.length;
            let series: f64 = self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, g)| g * (j as f64 * std::f64::consts::PI * x).cos())
                .sum();
            series * (1.0 - self.damp * x.powi(4))
        }

        pub fn deriv(&self, rho: f64) -> f64 {
            let x = rho / self.length;
            let series: f64 = self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, g)| g * (j as f64 * std::f64::consts::PI * x).cos())
                .sum();
            let dseries: f64 = self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, g)| {
                    -g * (j as f64 * std::f64::consts::PI)
                        * (j as f64 * std::f64::consts::PI * x).sin()
                })
                .sum();
            (dseries * (1.0 - self.damp * x.powi(4)) - series * 4.0 * self.damp * x.powi(3))
                / self.length
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::TorusLattice;

    fn params() -> ManifoldParams {
        ManifoldParams::default()
    }

    /// standard family tube: l cosh R = a eps, deep enough for the cutoff
    fn family_tube(l: f64) -> MargulisTube {
        MargulisTube::widest(l, 0.0, 1.0, &params()).unwrap()
    }

    #[test]
    fn constant_function_extends_to_constant() {
        let p = params();
        let t = family_tube(1e-3);
        let f = TubeBoundaryFunction::constant(2.0);
        let (plan, rep) = extend(&t, &f, &p).unwrap();
        assert_eq!(plan.constant_part, 2.0);
        let want_ratio = t.radius.tanh() / 2.0;
        assert!((rep.sq_norm_ratio - want_ratio).abs() < 1e-12);
        assert!(rep.sq_norm_ratio >= 0.25 && rep.sq_norm_ratio <= 0.5);
        assert_eq!(rep.dirichlet, 0.0);
        assert_eq!(rep.rayleigh_extension, 0.0);
        assert!(!rep.mean_zero);
    }

    #[test]
    fn zero_function_extends_to_zero() {
        let p = params();
        let t = family_tube(1e-3);
        let f = TubeBoundaryFunction::constant(0.0);
        let (_, rep) = extend(&t, &f, &p).unwrap();
        assert_eq!(rep.sq_norm, 0.0);
        assert_eq!(rep.dirichlet, 0.0);
        assert_eq!(rep.boundary_sq_norm, 0.0);
    }

    #[test]
    fn norm_pinching_over_seeded_functions() {
        let p = params();
        for (ti, l) in [1e-3, 1e-4].into_iter().enumerate() {
            let t = family_tube(l);
            for seed in 0..10u64 {
                let f = sampling::boundary_function(&t, seed + 100 * ti as u64);
                let (_, rep) = extend(&t, &f, &p).unwrap();
                assert!(
                    rep.sq_norm_ratio >= 0.25 - 1e-6 && rep.sq_norm_ratio <= 0.5 + 1e-6,
                    "ratio {} out of range (seed {seed})",
                    rep.sq_norm_ratio
                );
                // mean-zero preservation
                if f.mean == 0.0 {
                    assert!(rep.mean_value.abs() <= 1e-9 * rep.sq_norm.max(1.0));
                }
            }
        }
    }

    #[test]
    fn rejects_shallow_tube_and_thin_boundary() {
        let p = params();
        // shallow: R - theta < 3
        let t = MargulisTube::new(0.1, 0.0, 2.0, &p).unwrap();
        let f = TubeBoundaryFunction::constant(1.0);
        assert!(matches!(
            extend(&t, &f, &p),
            Err(ExtensionError::CutoffTooClose(_))
        ));
        // thin boundary: big twist shrinks the shortest lattice vector
        // (construct directly; the lattice check is what we exercise)
        let mut thin = family_tube(1e-4);
        thin.twist = 0.0;
        thin.core_length = 1e-6; // longitudinal length l cosh R becomes tiny
        let lat = TorusLattice::tube_boundary(&thin);
        assert!(lat.shortest_vector() / 2.0 < p.epsilon);
        assert!(matches!(
            extend(&thin, &f, &p),
            Err(ExtensionError::ThinBoundary { .. })
        ));
    }

    #[test]
    fn extension_is_linear_in_the_boundary_data() {
        let p = params();
        let t = family_tube(1e-3);
        let f = sampling::boundary_function(&t, 3);
        let g = sampling::boundary_function(&t, 4);
        let combo = f.combine(2.0, &g, -0.5);
        let (pf, _) = extend(&t, &f, &p).unwrap();
        let (pg, _) = extend(&t, &g, &p).unwrap();
        let (pc, _) = extend(&t, &combo, &p).unwrap();
        // compare per-mode radial profiles pointwise
        for i in 0..pc.modes.len() {
            let label = (pc.modes[i].mode.m, pc.modes[i].mode.k);
            let in_f = pf.modes.iter().position(|b| (b.mode.m, b.mode.k) == label);
            let in_g = pg.modes.iter().position(|b| (b.mode.m, b.mode.k) == label);
            for step in 0..=20 {
                let rho = t.radius * step as f64 / 20.0;
                let (cre, cim) = pc.mode_profile(i, rho);
                let (fre, fim) = in_f.map(|j| pf.mode_profile(j, rho)).unwrap_or((0.0, 0.0));
                let (gre, gim) = in_g.map(|j| pg.mode_profile(j, rho)).unwrap_or((0.0, 0.0));
                assert!((cre - (2.0 * fre - 0.5 * gre)).abs() < 1e-12);
                assert!((cim - (2.0 * fim - 0.5 * gim)).abs() < 1e-12);
            }
        }
        assert!((pc.constant_part - (2.0 * pf.constant_part - 0.5 * pg.constant_part)).abs() < 1e-12);
    }

    #[test]
    fn mass_profile_consistency_and_monotonicity() {
        let p = params();
        let t = family_tube(1e-3);
        let mut f = sampling::boundary_function(&t, 5);
        f.mean = 0.0;
        let (plan, rep) = extend(&t, &f, &p).unwrap();
        // boundary slice recovers the boundary squared norm
        assert!(
            (mass_profile(&plan, t.radius) - rep.boundary_sq_norm).abs()
                < 1e-9 * rep.boundary_sq_norm
        );
        // vanishes below the cutoff for mean-zero data
        assert_eq!(mass_profile(&plan, plan.theta * 0.5), 0.0);
        // integral over rho recovers the squared norm
        let total = simpson(|rho| mass_profile(&plan, rho), 0.0, t.radius, 4096);
        assert!((total - rep.sq_norm).abs() < 1e-6 * rep.sq_norm, "{total} vs {}", rep.sq_norm);
        // nondecreasing above theta + 1
        let mut prev = 0.0;
        for step in 0..=50 {
            let rho = plan.theta + 1.0 + (t.radius - plan.theta - 1.0) * step as f64 / 50.0;
            let m = mass_profile(&plan, rho);
            assert!(m >= prev - 1e-12);
            prev = m;
        }
    }

    #[test]
    fn rayleigh_bound_constant_over_family() {
        // extension Rayleigh quotient over d * log vol stays bounded across
        // the standard family when f is the first boundary eigenfunction
        let p = params();
        let mut cs = Vec::new();
        for l in [1e-2, 1e-3, 1e-4] {
            let t = family_tube(l);
            // first torus eigenfunction: the (1, 0) mode pair
            let f = TubeBoundaryFunction {
                mean: 0.0,
                modes: vec![BoundaryMode {
                    mode: TubeMode::new(&t, 1, 0),
                    re: 1.0,
                    im: 0.0,
                }],
            };
            let (_, rep) = extend(&t, &f, &p).unwrap();
            let d = rep.rayleigh_boundary;
            assert!(d > 0.0);
            let c = rep.rayleigh_extension / (d * tube_volume(&t).ln());
            cs.push(c);
        }
        let max = cs.iter().cloned().fold(0.0f64, f64::max);
        let min = cs.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(max / min < 10.0, "per-case constants {cs:?}");
    }

    #[test]
    fn lemma22_hat_profile_on_tube() {
        let t = family_tube(1e-3);
        let rcut = t.radius * 0.6;
        let profile = move |rho: f64| (1.0 - rho / rcut).max(0.0);
        let deriv = move |rho: f64| if rho < rcut { -1.0 / rcut } else { 0.0 };
        let tangential = |_: f64| 0.0;
        let case = lemma22_check(
            &ThinDomain::Tube(&t),
            &[RadialComponent {
                pair_weight: 1.0,
                profile: &profile,
                profile_deriv: &deriv,
                tangential: &tangential,
            }],
            "hat",
        );
        assert!(case.hypothesis_ok, "interior hat has tiny trace");
        assert!(case.margin >= 0.0, "margin {}", case.margin);
    }

    #[test]
    fn lemma22_constant_is_inapplicable_on_tube() {
        let t = family_tube(1e-3);
        let one = |_: f64| 1.0;
        let zero = |_: f64| 0.0;
        let case = lemma22_check(
            &ThinDomain::Tube(&t),
            &[RadialComponent {
                pair_weight: 1.0,
                profile: &one,
                profile_deriv: &zero,
                tangential: &zero,
            }],
            "const",
        );
        // tube volume is tanh(R)/2 < 1 of the boundary area
        assert!(!case.hypothesis_ok);
        assert_eq!(case.verdict(), crate::report::Verdict::Inapplicable);
    }

    #[test]
    fn lemma22_seeded_sweep_on_tube_and_cusp() {
        let t = family_tube(1e-3);
        let cusp = CuspModel::new(TorusLattice::square(3.0).unwrap(), 8.0).unwrap();
        let mut applicable = 0usize;
        let total = 40usize;
        for seed in 0..total as u64 {
            let on_tube = seed % 2 == 0;
            let length = if on_tube { t.radius } else { 8.0 };
            let spec = sampling::ProfileSpec::seeded(length, 1000 + seed);
            let value = |rho: f64| spec.value(rho);
            let dv = |rho: f64| spec.deriv(rho);
            let zero = |_: f64| 0.0;
            let comp = RadialComponent {
                pair_weight: 1.0,
                profile: &value,
                profile_deriv: &dv,
                tangential: &zero,
            };
            let case = if on_tube {
                lemma22_check(&ThinDomain::Tube(&t), &[comp], &format!("s{seed}"))
            } else {
                // cusp profiles must vanish at the boundary rho = 0 to have
                // small trace; flip the profile
                let flipped = |rho: f64| spec.value(8.0 - rho) - spec.value(8.0);
                let dflip = |rho: f64| -spec.deriv(8.0 - rho);
                lemma22_check(
                    &ThinDomain::Cusp(&cusp),
                    &[RadialComponent {
                        pair_weight: 1.0,
                        profile: &flipped,
                        profile_deriv: &dflip,
                        tangential: &zero,
                    }],
                    &format!("s{seed}"),
                )
            };
            if case.hypothesis_ok {
                applicable += 1;
                assert!(case.margin >= -1e-8, "seed {seed} margin {}", case.margin);
            }
        }
        assert!(
            applicable * 10 >= total * 8,
            "only {applicable}/{total} applicable"
        );
    }

    #[test]
    fn shell_check_interior_profile_passes() {
        let shell = Shell::new(
            1.0,
            crate::geometry::ShellGeometry::TubeSide { r_outer: 8.0 },
            4.0,
        )
        .unwrap();
        // supported in [0, 1]: the final-band mass vanishes
        let profile = |t: f64| if t < 1.0 { (1.0 - t).powi(2) } else { 0.0 };
        let deriv = |t: f64| if t < 1.0 { -2.0 * (1.0 - t) } else { 0.0 };
        let case = shell_rayleigh_check(&shell, &profile, &deriv, "interior");
        assert!(case.hypothesis_ok);
        assert!(case.margin >= 0.0, "margin {}", case.margin);
    }

    #[test]
    fn shell_check_constant_inapplicable() {
        let shell = Shell::new(2.0, crate::geometry::ShellGeometry::Cusp, 3.0).unwrap();
        let case = shell_rayleigh_check(&shell, &|_| 1.0, &|_| 0.0, "const");
        // slice mass grows like e^{2t}: the final band dominates
        assert!(!case.hypothesis_ok);
    }

    #[test]
    fn slice_renormalize_product_form_is_equality() {
        // f(x, s) = e^{beta(s)} g(x): the renormalization returns f itself
        let n = 201;
        let delta = 0.8;
        let s: Vec<f64> = (0..n).map(|i| delta * i as f64 / (n - 1) as f64).collect();
        let beta = |t: f64| 0.3 * t + 0.1 * (2.0 * t).sin();
        let dbeta = |t: f64| 0.3 + 0.2 * (2.0 * t).cos();
        let g = [(0.8, 0.1), (0.2, -0.4)];
        let modes = g
            .iter()
            .map(|&(re, im)| CollarMode {
                c: s.iter().map(|&t| (re * beta(t).exp(), im * beta(t).exp())).collect(),
                dc: s
                    .iter()
                    .map(|&t| {
                        (
                            re * dbeta(t) * beta(t).exp(),
                            im * dbeta(t) * beta(t).exp(),
                        )
                    })
                    .collect(),
                tangential: vec![1.0; n],
            })
            .collect();
        let data = CollarData {
            s,
            area: vec![1.0; n],
            modes,
        };
        let rep = slice_renormalize(&data).unwrap();
        assert!(rep.normal_margin.abs() < 1e-12, "margin {}", rep.normal_margin);
    }

    #[test]
    fn slice_renormalize_single_real_mode_is_equality() {
        let n = 101;
        let delta = 1.0;
        let s: Vec<f64> = (0..n).map(|i| delta * i as f64 / (n - 1) as f64).collect();
        let data = CollarData {
            area: s.iter().map(|&t| (2.0 * t).exp()).collect(),
            modes: vec![CollarMode {
                c: s.iter().map(|&t| (1.0 + 0.5 * t * t, 0.0)).collect(),
                dc: s.iter().map(|&t| (t, 0.0)).collect(),
                tangential: vec![0.5; n],
            }],
            s,
        };
        let rep = slice_renormalize(&data).unwrap();
        assert!(rep.normal_margin.abs() < 1e-12);
    }

    #[test]
    fn slice_renormalize_two_modes_never_gains_energy() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let n = 161;
        let delta = 1.0;
        let s: Vec<f64> = (0..n).map(|i| delta * i as f64 / (n - 1) as f64).collect();
        // curve c(t) = (a + b sin(w t), 0.3 a cos(w t)) with exact derivative
        let curve = |a: f64, b: f64, w: f64, t: f64| (a + b * (w * t).sin(), 0.3 * a * (w * t).cos());
        let dcurve =
            |a: f64, b: f64, w: f64, t: f64| (b * w * (w * t).cos(), -0.3 * a * w * (w * t).sin());
        for seed in 0..25u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut pars = || {
                (
                    rng.gen_range(0.2..1.0),
                    rng.gen_range(-0.5..0.5),
                    rng.gen_range(0.5..3.0),
                )
            };
            let (a1, b1, w1) = pars();
            let (a2, b2, w2) = pars();
            let data = CollarData {
                area: s.iter().map(|&t| 1.0 + t).collect(),
                modes: vec![
                    CollarMode {
                        c: s.iter().map(|&t| curve(a1, b1, w1, t)).collect(),
                        dc: s.iter().map(|&t| dcurve(a1, b1, w1, t)).collect(),
                        tangential: vec![1.0; n],
                    },
                    CollarMode {
                        c: s.iter().map(|&t| curve(a2, b2, w2, t)).collect(),
                        dc: s.iter().map(|&t| dcurve(a2, b2, w2, t)).collect(),
                        tangential: vec![2.0; n],
                    },
                ],
                s: s.clone(),
            };
            let rep = slice_renormalize(&data).unwrap();
            assert!(rep.normal_margin <= 1e-8, "seed {seed}: {}", rep.normal_margin);
        }
    }

    #[test]
    fn slice_renormalize_rejects_zero_mass() {
        let n = 5;
        let s: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        let data = CollarData {
            area: vec![1.0; n],
            modes: vec![CollarMode {
                c: vec![(0.0, 0.0); n],
                dc: vec![(0.0, 0.0); n],
                tangential: vec![0.0; n],
            }],
            s,
        };
        assert!(matches!(
            slice_renormalize(&data),
            Err(ExtensionError::ZeroMassSlice { .. })
        ));
    }
}
