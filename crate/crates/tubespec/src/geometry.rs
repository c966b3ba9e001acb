//! Value types and closed-form formulas for tubes, cusps, flat tori and
//! shells, plus the thin-part bookkeeping constants.
//!
//! A tube is a solid-torus neighborhood of a short closed geodesic in a
//! constant-curvature-(-1) 3-manifold, carrying the metric
//! `d rho^2 + cosh^2(rho) ds^2 + sinh^2(rho) d sigma^2` in cylindrical
//! coordinates around the core. All formulas below are exact consequences of
//! that line element.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("core length must satisfy 0 < l < 2*epsilon = {max:.6}, got {value}")]
    CoreLengthOutOfRange { value: f64, max: f64 },
    #[error("tube radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error("tube violates l*cosh(R) <= a*epsilon: {lhs:.6} > {rhs:.6}")]
    TooWide { lhs: f64, rhs: f64 },
    #[error("tube radius {radius:.4} below the minimal radius {min:.4} for core length {core_length:e}")]
    BelowMinRadius {
        radius: f64,
        min: f64,
        core_length: f64,
    },
    #[error("cusp truncation depth must be >= 5, got {0}")]
    ShallowCusp(f64),
    #[error("shell height must be >= 2, got {0}")]
    ShortShell(f64),
    #[error("shell must stay strictly inside the tube: outer radius {outer} < height {height}")]
    ShellLeavesTube { outer: f64, height: f64 },
    #[error("degenerate lattice basis")]
    DegenerateLattice,
    #[error("{0}")]
    BadParameter(String),
}

/// Named bag of the configurable positive constants that appear in the
/// inequality bounds. None of them is pinned by theory; the fitted values
/// are produced by the verification sweeps.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BoundConstants {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub q4: f64,
    /// shortest-geodesic comparability constant on boundary tori
    pub a: f64,
    /// slack in the minimal-radius bound
    pub nu: f64,
    /// flat-torus first-eigenvalue floor scale
    pub c2: f64,
}

/// Ambient parameters: dimension, curvature pinching, thin-part threshold
/// and the bound constants.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ManifoldParams {
    pub n: u32,
    /// curvature is pinched in [-b^2, -1]
    pub b: f64,
    /// injectivity-radius threshold separating thick from thin
    pub epsilon: f64,
    pub constants: BoundConstants,
    /// minimal tube radius accepted by constructors (adjustable; the
    /// extension machinery needs some room between core and boundary)
    pub min_radius: f64,
}

impl Default for ManifoldParams {
    fn default() -> Self {
        let a = 4.0;
        let epsilon = 0.1;
        Self {
            n: 3,
            b: 1.0,
            epsilon,
            constants: BoundConstants {
                q1: (std::f64::consts::PI * a * epsilon).ln(),
                q2: 1.0,
                q3: 1.0,
                q4: 1.0,
                a,
                nu: 2.0,
                c2: 1.0,
            },
            min_radius: 0.0,
        }
    }
}

impl ManifoldParams {
    pub fn validate(&self) -> Result<(), GeometryError> {
        if self.n < 3 {
            return Err(GeometryError::BadParameter(format!(
                "dimension must be >= 3, got {}",
                self.n
            )));
        }
        if !(self.b >= 1.0) {
            return Err(GeometryError::BadParameter(format!(
                "pinching bound must be >= 1, got {}",
                self.b
            )));
        }
        let c = &self.constants;
        for (name, v) in [
            ("epsilon", self.epsilon),
            ("q1", c.q1.exp()), // q1 itself may be negative; e^q1 > 0 always
            ("q2", c.q2),
            ("q3", c.q3),
            ("q4", c.q4),
            ("a", c.a),
            ("nu", c.nu),
            ("c2", c.c2),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(GeometryError::BadParameter(format!(
                    "constant {name} must be positive and finite"
                )));
            }
        }
        Ok(())
    }
}

/// Hyperbolic solid torus around a short core geodesic.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct MargulisTube {
    /// hyperbolic length of the core geodesic
    pub core_length: f64,
    /// rotation angle picked up along the core (radians)
    pub twist: f64,
    /// distance from the core to the boundary torus
    pub radius: f64,
    /// ambient dimension; spectral operations require 3
    pub n: u32,
}

impl MargulisTube {
    /// Construct a tube, enforcing the admissibility constraints:
    /// `0 < l < 2 eps`, `l cosh R <= a eps` and `R >= -log l - nu`.
    pub fn new(
        core_length: f64,
        twist: f64,
        radius: f64,
        params: &ManifoldParams,
    ) -> Result<Self, GeometryError> {
        params.validate()?;
        if !(core_length > 0.0) || core_length >= 2.0 * params.epsilon {
            return Err(GeometryError::CoreLengthOutOfRange {
                value: core_length,
                max: 2.0 * params.epsilon,
            });
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeometryError::BadRadius(radius));
        }
        let lhs = core_length * radius.cosh();
        let rhs = params.constants.a * params.epsilon;
        if lhs > rhs * (1.0 + 1e-12) {
            return Err(GeometryError::TooWide { lhs, rhs });
        }
        let min = min_radius_bound(core_length, params)?.max(params.min_radius);
        if radius < min - 1e-12 {
            return Err(GeometryError::BelowMinRadius {
                radius,
                min,
                core_length,
            });
        }
        Ok(Self {
            core_length,
            twist,
            radius,
            n: 3,
        })
    }

    /// Widest admissible tube for a given core length: `cosh R = a eps / l`,
    /// shrunk by `slack` (in (0,1]) to stay strictly inside the constraint.
    pub fn widest(core_length: f64, twist: f64, slack: f64, params: &ManifoldParams) -> Result<Self, GeometryError> {
        let target = params.constants.a * params.epsilon * slack / core_length;
        if target < 1.0 {
            return Err(GeometryError::BadRadius(target));
        }
        Self::new(core_length, twist, target.acosh(), params)
    }
}

/// Truncated cusp: flat cross-section torus at depth 0, truncated at
/// `rho_max`. Cross-section areas decay like `exp(-2 rho)`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CuspModel {
    pub cross_section: TorusLattice,
    pub rho_max: f64,
}

impl CuspModel {
    pub fn new(cross_section: TorusLattice, rho_max: f64) -> Result<Self, GeometryError> {
        if !(rho_max >= 5.0) || !rho_max.is_finite() {
            return Err(GeometryError::ShallowCusp(rho_max));
        }
        if cross_section.area() <= 0.0 {
            return Err(GeometryError::DegenerateLattice);
        }
        Ok(Self {
            cross_section,
            rho_max,
        })
    }
}

/// Region between two radial level sets in a tube or cusp, written as
/// `V x [0, k]` with the slice `V x {k}` closest to the boundary.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct Shell {
    /// area of the starting slice V x {0}
    pub base_area: f64,
    pub geometry: ShellGeometry,
    /// height k >= 2
    pub height: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShellGeometry {
    /// shell in a tube; `r_outer` is the radial position (distance from the
    /// core) of the slice V x {k}
    TubeSide { r_outer: f64 },
    Cusp,
}

impl Shell {
    pub fn new(base_area: f64, geometry: ShellGeometry, height: f64) -> Result<Self, GeometryError> {
        if !(height >= 2.0) {
            return Err(GeometryError::ShortShell(height));
        }
        if !(base_area > 0.0) {
            return Err(GeometryError::BadParameter("base_area must be positive".into()));
        }
        if let ShellGeometry::TubeSide { r_outer } = geometry {
            if r_outer <= height {
                return Err(GeometryError::ShellLeavesTube {
                    outer: r_outer,
                    height,
                });
            }
        }
        Ok(Self {
            base_area,
            geometry,
            height,
        })
    }

    /// Area of the slice V x {t} relative to the base slice.
    pub fn slice_area(&self, t: f64) -> f64 {
        match self.geometry {
            ShellGeometry::TubeSide { r_outer } => {
                let rho = r_outer - self.height + t;
                let rho0 = r_outer - self.height;
                self.base_area * (rho.sinh() * rho.cosh()) / (rho0.sinh() * rho0.cosh())
            }
            ShellGeometry::Cusp => self.base_area * (2.0 * t).exp(),
        }
    }

    /// Logarithmic derivative of the slice area at height t; at least 2 for
    /// both geometries.
    pub fn slice_density(&self, t: f64) -> f64 {
        match self.geometry {
            ShellGeometry::TubeSide { r_outer } => {
                let rho = r_outer - self.height + t;
                (rho.cosh().powi(2) + rho.sinh().powi(2)) / (rho.sinh() * rho.cosh())
            }
            ShellGeometry::Cusp => 2.0,
        }
    }
}

/// Rank-2 lattice generating a flat torus; `basis` rows are the generators.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct TorusLattice {
    pub basis: [[f64; 2]; 2],
}

impl TorusLattice {
    pub fn new(u: [f64; 2], v: [f64; 2]) -> Result<Self, GeometryError> {
        let lat = Self { basis: [u, v] };
        let norm = (u[0].hypot(u[1])).max(v[0].hypot(v[1]));
        if !(lat.det().abs() > 1e-12 * norm * norm) || !lat.det().is_finite() {
            return Err(GeometryError::DegenerateLattice);
        }
        Ok(lat)
    }

    /// Square torus of the given side length.
    pub fn square(side: f64) -> Result<Self, GeometryError> {
        Self::new([side, 0.0], [0.0, side])
    }

    /// Boundary torus of a tube: meridian of length 2 pi sinh(R) and
    /// longitudinal translation of length l cosh(R), offset by the twist
    /// along the meridian direction.
    pub fn tube_boundary(tube: &MargulisTube) -> Self {
        let meridian = 2.0 * std::f64::consts::PI * tube.radius.sinh();
        Self {
            basis: [
                [meridian, 0.0],
                [
                    tube.twist * tube.radius.sinh(),
                    tube.core_length * tube.radius.cosh(),
                ],
            ],
        }
    }

    fn det(&self) -> f64 {
        self.basis[0][0] * self.basis[1][1] - self.basis[0][1] * self.basis[1][0]
    }

    pub fn area(&self) -> f64 {
        self.det().abs()
    }

    /// Dual basis: rows d1, d2 with <d_i, b_j> = delta_ij.
    pub fn dual_basis(&self) -> [[f64; 2]; 2] {
        let d = self.det();
        [
            [self.basis[1][1] / d, -self.basis[1][0] / d],
            [-self.basis[0][1] / d, self.basis[0][0] / d],
        ]
    }

    /// Length of the shortest nonzero lattice vector (Lagrange-Gauss
    /// reduction).
    pub fn shortest_vector(&self) -> f64 {
        let mut u = self.basis[0];
        let mut v = self.basis[1];
        let norm2 = |w: [f64; 2]| w[0] * w[0] + w[1] * w[1];
        if norm2(u) > norm2(v) {
            std::mem::swap(&mut u, &mut v);
        }
        loop {
            let m = ((u[0] * v[0] + u[1] * v[1]) / norm2(u)).round();
            let w = [v[0] - m * u[0], v[1] - m * u[1]];
            if norm2(w) >= norm2(u) {
                return norm2(u).sqrt();
            }
            v = u;
            u = w;
        }
    }
}

/// Boundary area of a tube: `2 pi l sinh(R) cosh(R)`.
pub fn tube_boundary_volume(t: &MargulisTube) -> f64 {
    2.0 * std::f64::consts::PI * t.core_length * t.radius.sinh() * t.radius.cosh()
}

/// Volume of a tube: `pi l sinh^2(R)`, the radial integral of the boundary
/// density `2 pi l sinh(rho) cosh(rho)`.
pub fn tube_volume(t: &MargulisTube) -> f64 {
    std::f64::consts::PI * t.core_length * t.radius.sinh().powi(2)
}

/// Lower bound for the radius of any admissible tube with the given boundary
/// area: `log vol - q1` with `q1 = log(pi a eps)`.
pub fn radius_lower_bound(boundary_area: f64, params: &ManifoldParams) -> f64 {
    boundary_area.ln() - params.constants.q1
}

/// Minimal radius of a tube with core length `l`: `-log l - nu`.
pub fn min_radius_bound(core_length: f64, params: &ManifoldParams) -> Result<f64, GeometryError> {
    if !(core_length > 0.0) || core_length >= 2.0 * params.epsilon {
        return Err(GeometryError::CoreLengthOutOfRange {
            value: core_length,
            max: 2.0 * params.epsilon,
        });
    }
    Ok(-core_length.ln() - params.constants.nu)
}

/// Bottom of the essential spectrum of a finite-volume noncompact manifold
/// with curvature at most -1: `(n-1)^2 / 4`.
pub fn essential_spectrum_floor(n: u32) -> f64 {
    assert!(n >= 3, "dimension must be at least 3");
    ((n - 1) as f64).powi(2) / 4.0
}

/// Threshold below which the thick-part comparison controls eigenvalues:
/// `(n-2)^2 / 12`.
pub fn theorem_threshold(n: u32) -> f64 {
    assert!(n >= 3, "dimension must be at least 3");
    ((n - 2) as f64).powi(2) / 12.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ManifoldParams {
        ManifoldParams::default()
    }

    #[test]
    fn boundary_volume_closed_form() {
        let p = params();
        let t = MargulisTube::new(0.1, 0.0, 2.0, &p).unwrap();
        let got = tube_boundary_volume(&t);
        let want = 2.0 * std::f64::consts::PI * 0.1 * 2.0f64.sinh() * 2.0f64.cosh();
        assert!((got - want).abs() < 1e-12);
        assert!((got - 8.57338).abs() < 5e-5, "got {got}");
    }

    #[test]
    fn boundary_volume_linear_in_core_length() {
        let p = params();
        let t1 = MargulisTube::new(0.05, 0.0, 2.0, &p).unwrap();
        let t2 = MargulisTube::new(0.1, 0.0, 2.0, &p).unwrap();
        let ratio = tube_boundary_volume(&t2) / tube_boundary_volume(&t1);
        assert!((ratio - 2.0).abs() < 1e-12);
    }

    #[test]
    fn tube_volume_closed_form() {
        let p = params();
        let t = MargulisTube::new(0.1, 0.0, 2.0, &p).unwrap();
        let got = tube_volume(&t);
        assert!((got - std::f64::consts::PI * 0.1 * 2.0f64.sinh().powi(2)).abs() < 1e-12);
        assert!((got - 4.1325).abs() < 5e-4, "got {got}");
    }

    #[test]
    fn volume_ratio_is_half_tanh() {
        let p = params();
        for (l, r) in [(0.1, 1.0), (0.1, 2.0), (0.01, 4.0)] {
            let t = MargulisTube::new(l, 0.0, r, &p).unwrap();
            let ratio = tube_volume(&t) / tube_boundary_volume(&t);
            assert!((ratio - r.tanh() / 2.0).abs() < 1e-14);
        }
        // limit as R grows: 1/2
        assert!((8.0f64.tanh() / 2.0 - 0.5).abs() < 1e-6);
    }

    #[test]
    fn radius_lower_bound_inverts_at_equality() {
        let p = params();
        let pae = std::f64::consts::PI * p.constants.a * p.epsilon;
        assert!((radius_lower_bound(pae * 3.0f64.exp(), &p) - 3.0).abs() < 1e-12);
        assert!(radius_lower_bound(pae, &p).abs() < 1e-12);
    }

    #[test]
    fn radius_lower_bound_holds_on_admissible_tubes() {
        let p = params();
        // sweep over valid tubes: any tube with l cosh R <= a eps satisfies
        // R >= log vol(boundary) - q1
        for i in 1..40 {
            let l = 0.002 * i as f64;
            for j in 1..30 {
                let rmax = (p.constants.a * p.epsilon / l).acosh();
                let rmin = min_radius_bound(l, &p).unwrap().max(0.1);
                if rmin >= rmax {
                    continue;
                }
                let r = rmin + (rmax - rmin) * j as f64 / 30.0;
                let t = match MargulisTube::new(l, 0.0, r, &p) {
                    Ok(t) => t,
                    Err(_) => continue,
                };
                let bound = radius_lower_bound(tube_boundary_volume(&t), &p);
                assert!(
                    t.radius >= bound - 1e-9,
                    "l={l} R={r} bound={bound}"
                );
            }
        }
    }

    #[test]
    fn min_radius_bound_arithmetic() {
        let mut p = params();
        p.constants.nu = 1.0;
        let b = min_radius_bound((-5.0f64).exp(), &p).unwrap();
        assert!((b - 4.0).abs() < 1e-12);
        // equality point: l = e^-nu gives bound 0
        p.constants.nu = 2.0;
        let b0 = min_radius_bound((-2.0f64).exp(), &p).unwrap();
        assert!(b0.abs() < 1e-12);
        // halving l raises the bound by log 2
        let b1 = min_radius_bound(0.1, &p).unwrap();
        let b2 = min_radius_bound(0.05, &p).unwrap();
        assert!((b2 - b1 - 2.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn constructor_rejects_out_of_range_tubes() {
        let p = params();
        // too long a core
        assert!(matches!(
            MargulisTube::new(0.3, 0.0, 1.0, &p),
            Err(GeometryError::CoreLengthOutOfRange { .. })
        ));
        // too wide: cosh R > a eps / l
        assert!(matches!(
            MargulisTube::new(0.1, 0.0, 3.0, &p),
            Err(GeometryError::TooWide { .. })
        ));
        // radius below the minimal bound: l = e^-8, R must be >= 6
        assert!(matches!(
            MargulisTube::new((-8.0f64).exp(), 0.0, 2.0, &p),
            Err(GeometryError::BelowMinRadius { .. })
        ));
    }

    #[test]
    fn essential_floor_and_threshold() {
        assert_eq!(essential_spectrum_floor(3), 1.0);
        assert!((theorem_threshold(3) - 1.0 / 12.0).abs() < 1e-15);
        assert_eq!(essential_spectrum_floor(4), 2.25);
        assert!((theorem_threshold(4) - 1.0 / 3.0).abs() < 1e-15);
        // ratio tends to 3 for large n
        let n = 2000;
        let ratio = essential_spectrum_floor(n) / theorem_threshold(n);
        assert!((ratio - 3.0).abs() < 0.01);
    }

    #[test]
    fn lattice_shortest_vector_and_dual() {
        let sq = TorusLattice::square(2.0 * std::f64::consts::PI).unwrap();
        assert!((sq.shortest_vector() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        let d = sq.dual_basis();
        assert!((d[0][0] - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-15);
        // sheared lattice reduces to the same shortest vector
        let sheared = TorusLattice::new([1.0, 0.0], [7.3, 0.9]).unwrap();
        assert!((sheared.shortest_vector() - 0.9f64.hypot(0.3)).abs() < 1e-12);
        assert!(TorusLattice::new([1.0, 0.0], [2.0, 0.0]).is_err());
    }

    #[test]
    fn shell_validation_and_densities() {
        let s = Shell::new(1.0, ShellGeometry::TubeSide { r_outer: 6.0 }, 3.0).unwrap();
        assert!(s.slice_density(0.0) >= 2.0);
        assert!(s.slice_density(3.0) >= 2.0);
        assert!((s.slice_area(0.0) - 1.0).abs() < 1e-15);
        let c = Shell::new(2.0, ShellGeometry::Cusp, 2.0).unwrap();
        assert!((c.slice_density(1.0) - 2.0).abs() < 1e-15);
        assert!((c.slice_area(1.0) - 2.0 * (2.0f64).exp()).abs() < 1e-12);
        assert!(Shell::new(1.0, ShellGeometry::Cusp, 1.5).is_err());
        assert!(Shell::new(1.0, ShellGeometry::TubeSide { r_outer: 2.0 }, 3.0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = params();
        let t = MargulisTube::new(0.1, 1.2, 2.0, &p).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        let back: MargulisTube = serde_json::from_str(&s).unwrap();
        assert_eq!(t, back);
        let lat = TorusLattice::square(1.0).unwrap();
        let s = serde_json::to_string(&lat).unwrap();
        assert_eq!(lat, serde_json::from_str::<TorusLattice>(&s).unwrap());
        let sp = serde_json::to_string(&p).unwrap();
        assert_eq!(p, serde_json::from_str::<ManifoldParams>(&sp).unwrap());
    }
}
