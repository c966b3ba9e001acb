//! Spectral geometry of hyperbolic tubes, cusps and flat tori at desk scale.
//!
//! The crate computes Neumann Laplace spectra of model geometries
//! (solid-torus tubes, truncated cusps, flat boundary tori, glued radial
//! models), builds the explicit boundary-extension operator for tubes, and
//! certifies a family of spectral inequalities with explicit numerical
//! margins. Everything is deterministic and reproducible: fixed seeds,
//! dense solvers, Richardson-extrapolated eigenvalues with error bars.

pub mod extension;
pub mod geometry;
pub mod graphspec;
pub mod jacobi;
pub mod model1d;
pub mod numerics;
pub mod oracles;
pub mod report;
pub mod spectra;
pub mod verify;

pub use numerics::NumericsError;
