//! Finite-volume discretization of weighted Sturm-Liouville problems
//!
//!     -(1/w) (w u')' + V u = lambda u      on [a, b]
//!
//! on a cell-centered grid. The generalized eigenproblem A u = lambda B u
//! (B = diagonal cell masses) is reduced to standard symmetric tridiagonal
//! form by the similarity transform with sqrt(w h) per cell, so the weight is
//! never evaluated at a singular endpoint (e.g. w(0) = 0 for radial problems)
//! and zero-flux (Neumann) conditions are encoded by the missing boundary
//! flux. Dirichlet conditions use a zero ghost value at the boundary face.

use super::{NumericsError, SymTridiag};

/// Endpoint condition for the 1-D problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    /// zero flux through the boundary face
    Neumann,
    /// zero value at the boundary face (ghost reflection)
    Dirichlet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    CellCentered,
    NodeCentered,
}

/// Uniform grid specification for an interval.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub interval: (f64, f64),
    pub count: usize,
    pub placement: Placement,
}

impl GridSpec {
    pub fn cells(interval: (f64, f64), count: usize) -> Result<Self, NumericsError> {
        let (a, b) = interval;
        if !(a < b) || count < 8 || !a.is_finite() || !b.is_finite() {
            return Err(NumericsError::BadGrid { a, b, count });
        }
        Ok(Self {
            interval,
            count,
            placement: Placement::CellCentered,
        })
    }

    pub fn spacing(&self) -> f64 {
        (self.interval.1 - self.interval.0) / self.count as f64
    }

    /// Grid with doubled resolution, for Richardson pairs.
    pub fn doubled(&self) -> Self {
        Self {
            interval: self.interval,
            count: self.count * 2,
            placement: self.placement,
        }
    }
}

/// A weighted 1-D Sturm-Liouville problem: weight, potential, interval and
/// endpoint conditions. The weight must be positive on the open interval;
/// it may vanish at the endpoints.
pub struct RadialOperator<'a> {
    pub weight: &'a dyn Fn(f64) -> f64,
    pub potential: &'a dyn Fn(f64) -> f64,
    pub interval: (f64, f64),
    pub left: Endpoint,
    pub right: Endpoint,
}

/// Discretized problem: the symmetric tridiagonal matrix together with the
/// grid metadata needed to interpret its eigenvectors as cell values.
#[derive(Debug, Clone)]
pub struct SlProblem {
    pub matrix: SymTridiag,
    /// cell centers
    pub centers: Vec<f64>,
    /// cell masses w(x_i) * h; the B matrix of the generalized problem
    pub cell_mass: Vec<f64>,
    pub spacing: f64,
}

impl SlProblem {
    /// Convert an eigenvector of the symmetrized matrix back to cell values
    /// of u, normalized to unit weighted L2 norm.
    pub fn to_cell_values(&self, symvec: &[f64]) -> Vec<f64> {
        let mut u: Vec<f64> = symvec
            .iter()
            .zip(&self.cell_mass)
            .map(|(y, m)| y / m.sqrt())
            .collect();
        let norm: f64 = u
            .iter()
            .zip(&self.cell_mass)
            .map(|(v, m)| v * v * m)
            .sum::<f64>()
            .sqrt();
        for v in u.iter_mut() {
            *v /= norm;
        }
        u
    }

    /// Weighted L2 inner product of two cell-value vectors.
    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        u.iter()
            .zip(v)
            .zip(&self.cell_mass)
            .map(|((a, b), m)| a * b * m)
            .sum()
    }

    /// Dirichlet energy of a cell-value vector (face-difference form),
    /// consistent with the discrete operator.
    pub fn dirichlet_energy(&self, u: &[f64], weight: &dyn Fn(f64) -> f64) -> f64 {
        let h = self.spacing;
        let a0 = self.centers[0] - 0.5 * h;
        let mut sum = 0.0;
        for i in 0..u.len() - 1 {
            let face = a0 + (i + 1) as f64 * h;
            let du = (u[i + 1] - u[i]) / h;
            sum += weight(face) * du * du * h;
        }
        sum
    }
}

/// Build the discretized problem with its metadata.
pub fn sl_problem(op: &RadialOperator, grid: &GridSpec) -> Result<SlProblem, NumericsError> {
    let (a, b) = op.interval;
    if grid.interval != op.interval {
        return Err(NumericsError::BadGrid {
            a: grid.interval.0,
            b: grid.interval.1,
            count: grid.count,
        });
    }
    let n = grid.count;
    let h = grid.spacing();
    let centers: Vec<f64> = (0..n).map(|i| a + (i as f64 + 0.5) * h).collect();
    let faces: Vec<f64> = (0..=n).map(|i| a + i as f64 * h).collect();

    let mut w_cell = Vec::with_capacity(n);
    for &x in &centers {
        let w = (op.weight)(x);
        if !(w > 0.0) || !w.is_finite() {
            return Err(NumericsError::NonPositiveWeight {
                position: x,
                value: w,
            });
        }
        w_cell.push(w);
    }
    let w_face: Vec<f64> = faces.iter().map(|&x| (op.weight)(x)).collect();
    if w_face[1..n].iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
        let i = (1..n).find(|&i| !(w_face[i] > 0.0)).unwrap();
        return Err(NumericsError::NonPositiveWeight {
            position: faces[i],
            value: w_face[i],
        });
    }
    // boundary faces may carry w = 0 but not negative/non-finite values
    if !(w_face[0] >= 0.0) || !(w_face[n] >= 0.0) {
        return Err(NumericsError::NonPositiveWeight {
            position: if w_face[0] < 0.0 { a } else { b },
            value: w_face[0].min(w_face[n]),
        });
    }

    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n - 1];
    for i in 0..n {
        let mass = w_cell[i] * h;
        let mut flux = 0.0;
        if i > 0 {
            flux += w_face[i] / h;
        } else if op.left == Endpoint::Dirichlet {
            flux += 2.0 * w_face[0] / h;
        }
        if i + 1 < n {
            flux += w_face[i + 1] / h;
        } else if op.right == Endpoint::Dirichlet {
            flux += 2.0 * w_face[n] / h;
        }
        let v = (op.potential)(centers[i]);
        if !v.is_finite() {
            return Err(NumericsError::NonFinite);
        }
        diag[i] = flux / mass + v;
        if i + 1 < n {
            off[i] = -w_face[i + 1] / (h * h * (w_cell[i] * w_cell[i + 1]).sqrt());
        }
    }
    Ok(SlProblem {
        matrix: SymTridiag::new(diag, off)?,
        centers,
        cell_mass: w_cell.iter().map(|w| w * h).collect(),
        spacing: h,
    })
}

/// Discretize the Sturm-Liouville problem, returning the symmetric
/// tridiagonal matrix whose eigenvalues approximate the spectrum.
pub fn sl_discretize(op: &RadialOperator, grid: &GridSpec) -> Result<SymTridiag, NumericsError> {
    Ok(sl_problem(op, grid)?.matrix)
}
