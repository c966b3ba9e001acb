//! Glued radial models: a tube, a fat collar and optionally a cusp joined
//! along their boundary slices, reduced to a weighted 1-D Neumann problem
//! for the radial (lowest-mode) sector.
//!
//! A model is an ordered list of segments with a continuous positive weight:
//! thin segments carry the exact tube (`2 pi l sinh cosh`) or cusp
//! (`A exp(-2 rho)`) radial densities, the collar carries a smooth positive
//! bump blended in log space so the weight stays positive and C^1 across
//! junctions. Thin segments sit at the ends, oriented with their deep end
//! outward; the collar is the thick region.
//!
//! The spectral pair of interest is the Neumann spectrum of the whole model
//! against the spectrum of the thick region alone with Neumann cuts at the
//! junction faces; the comparison margins of the verification suite are
//! formed from these.

use crate::numerics::{richardson, simpson, tridiag_eigenvector, tridiag_eigs, SymTridiag};
use crate::report::MarginCase;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model needs at least one segment")]
    Empty,
    #[error("at most one collar (thick region) is supported, got {0}")]
    MultipleCollars(usize),
    #[error("thin segments must be adjacent to the collar at the ends")]
    BadLayout,
    #[error("weight jumps by {jump:e} at junction {position} (tolerance 1e-9 relative)")]
    DiscontinuousWeight { position: f64, jump: f64 },
    #[error("segment {index} under-resolved: {cells} cells < 64")]
    UnderResolved { index: usize, cells: usize },
    #[error("segment parameter out of range: {0}")]
    BadSegment(String),
    #[error("operation needs a thick region")]
    NoThickRegion,
    #[error(transparent)]
    Numerics(#[from] crate::numerics::NumericsError),
}

/// Building blocks of a radial model.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SegmentKind {
    /// solid-torus radial weight `2 pi l sinh(x) cosh(x)`, core at the deep
    /// end
    Tube { core_length: f64, radius: f64 },
    /// thick connector; `width` may be omitted in favor of the model default
    Collar {
        width: Option<f64>,
        #[serde(default)]
        profile: CollarProfile,
    },
    /// truncated cusp: boundary area `area` shrinking like exp(-2 x) toward
    /// the deep end, truncated at depth `depth`
    Cusp { area: f64, depth: f64 },
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum CollarProfile {
    /// log-cubic Hermite blend matching the neighbors' values and
    /// logarithmic slopes
    #[default]
    Blend,
    /// constant weight (continuity with both neighbors is required)
    Constant,
}

/// Serializable model description (the config-file schema).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelSpec {
    pub segments: Vec<SegmentKind>,
    /// default collar width, used by collars without an explicit one
    #[serde(default = "default_collar_width")]
    pub collar_width: f64,
    /// base radial cells per unit... no: cells for the coarse grid pass
    #[serde(default = "default_grid")]
    pub grid: usize,
}

fn default_collar_width() -> f64 {
    96.0
}

fn default_grid() -> usize {
    1024
}

/// One resolved segment of an assembled model.
#[derive(Debug, Clone)]
pub struct Segment {
    pub kind: SegmentKind,
    /// global coordinate of the left end
    pub start: f64,
    pub length: f64,
    pub thick: bool,
    weight: SegWeight,
}

#[derive(Debug, Clone)]
enum SegWeight {
    /// local x measured from `start`
    TubeUp { scale: f64 },
    TubeDown { scale: f64, radius: f64 },
    CuspDown { area: f64 },
    CuspUp { area: f64, depth: f64 },
    Const { value: f64 },
    /// C^1 log-weight plateau: a quadratic up-ramp matching the left
    /// neighbor's value and log-slope, a flat top, and a down-ramp matching
    /// the right neighbor. The flat top keeps the collar's mass spread over
    /// its whole width (rather than piling it into a narrow peak), and the
    /// ramps reproduce the exponential growth of the adjacent thin weights
    /// next to the junctions.
    LogPlateau {
        a0: f64,
        m0: f64,
        a1: f64,
        m1: f64,
        r0: f64,
        r1: f64,
        peak: f64,
        width: f64,
    },
}

impl Segment {
    /// weight at local coordinate x in [0, length]
    pub fn weight(&self, x: f64) -> f64 {
        match &self.weight {
            SegWeight::TubeUp { scale } => scale * x.sinh() * x.cosh(),
            SegWeight::TubeDown { scale, radius } => {
                let r = radius - x;
                scale * r.sinh() * r.cosh()
            }
            SegWeight::CuspDown { area } => area * (-2.0 * x).exp(),
            SegWeight::CuspUp { area, depth } => area * (-2.0 * (depth - x)).exp(),
            SegWeight::Const { value } => *value,
            SegWeight::LogPlateau {
                a0,
                m0,
                a1,
                m1,
                r0,
                r1,
                peak,
                width,
            } => {
                let g = if x < *r0 {
                    a0 + m0 * (x - x * x / (2.0 * r0))
                } else if x > width - r1 {
                    let t = x - width;
                    a1 + m1 * (t + t * t / (2.0 * r1))
                } else {
                    *peak
                };
                g.exp()
            }
        }
    }

    pub fn volume(&self) -> f64 {
        match &self.weight {
            SegWeight::TubeUp { scale } | SegWeight::TubeDown { scale, .. } => {
                let r = match &self.weight {
                    SegWeight::TubeUp { .. } => self.length,
                    SegWeight::TubeDown { radius, .. } => *radius,
                    _ => unreachable!(),
                };
                scale * r.sinh().powi(2) / 2.0
            }
            SegWeight::CuspDown { area } | SegWeight::CuspUp { area, .. } => {
                area / 2.0 * (1.0 - (-2.0 * self.length).exp())
            }
            SegWeight::Const { value } => value * self.length,
            SegWeight::LogPlateau { .. } => {
                simpson(|x| self.weight(x), 0.0, self.length, 4096)
            }
        }
    }
}

/// Resolve the plateau geometry for a blended collar: base ramps of a few
/// units, the shorter-topped side lengthened so both ramps meet the same
/// plateau level.
fn resolve_plateau(
    left: Option<(f64, f64)>,
    right: Option<(f64, f64)>,
    width: f64,
) -> Result<SegWeight, ModelError> {
    let r_base = (width / 4.0).min(4.0);
    match (left, right) {
        (None, None) => Ok(SegWeight::Const { value: 1.0 }),
        (Some((v0, m0)), None) => {
            let a0 = v0.ln();
            Ok(SegWeight::LogPlateau {
                a0,
                m0,
                a1: 0.0,
                m1: 0.0,
                r0: r_base,
                r1: 0.0,
                peak: a0 + m0 * r_base / 2.0,
                width,
            })
        }
        (None, Some((v1, m1))) => {
            let a1 = v1.ln();
            Ok(SegWeight::LogPlateau {
                a0: 0.0,
                m0: 0.0,
                a1,
                m1,
                r0: 0.0,
                r1: r_base,
                peak: a1 - m1 * r_base / 2.0,
                width,
            })
        }
        (Some((v0, m0)), Some((v1, m1))) => {
            assert!(m0 > 0.0 && m1 < 0.0, "thin neighbors grow toward the collar");
            let a0 = v0.ln();
            let a1 = v1.ln();
            let mut r0 = r_base;
            let mut r1 = r_base;
            let d = (a1 - m1 * r_base / 2.0) - (a0 + m0 * r_base / 2.0);
            if d > 0.0 {
                r0 += 2.0 * d / m0;
            } else {
                r1 += 2.0 * d / m1;
            }
            if r0 + r1 > width {
                return Err(ModelError::BadSegment(format!(
                    "collar of width {width} too narrow to blend between junction \
                     values {v0:.3e} and {v1:.3e} (needs {:.1})",
                    r0 + r1
                )));
            }
            let peak = a0 + m0 * r0 / 2.0;
            debug_assert!((peak - (a1 - m1 * r1 / 2.0)).abs() < 1e-9 * (1.0 + peak.abs()));
            Ok(SegWeight::LogPlateau {
                a0,
                m0,
                a1,
                m1,
                r0,
                r1,
                peak,
                width,
            })
        }
    }
}

/// Assembled radial model.
#[derive(Debug, Clone)]
pub struct RadialManifold {
    pub segments: Vec<Segment>,
    pub total_length: f64,
}

/// junction value and logarithmic slope a thin segment presents to its
/// collar neighbor (slopes oriented in the global +x direction)
fn junction_data(kind: &SegmentKind, at_right_end: bool) -> Result<(f64, f64), ModelError> {
    match kind {
        SegmentKind::Tube { core_length, radius } => {
            if !(*core_length > 0.0) || !(*radius > 0.0) {
                return Err(ModelError::BadSegment(format!("{kind:?}")));
            }
            let v = 2.0 * std::f64::consts::PI * core_length * radius.sinh() * radius.cosh();
            let slope = 2.0 / (2.0 * radius).tanh();
            // at the tube's boundary the weight grows toward the boundary:
            // slope +2coth(2R) if the tube sits on the left, mirrored if on
            // the right
            Ok((v, if at_right_end { slope } else { -slope }))
        }
        SegmentKind::Cusp { area, depth } => {
            if !(*area > 0.0) || !(*depth >= 5.0) {
                return Err(ModelError::BadSegment(format!("{kind:?}")));
            }
            // weight falls moving into the cusp
            Ok((*area, if at_right_end { 2.0 } else { -2.0 }))
        }
        SegmentKind::Collar { .. } => unreachable!("collars have no junction data"),
    }
}

/// Assemble segments into a model, resolving collar blends and checking
/// weight continuity.
pub fn assemble(spec: &ModelSpec) -> Result<RadialManifold, ModelError> {
    let kinds = &spec.segments;
    if kinds.is_empty() {
        return Err(ModelError::Empty);
    }
    let collar_count = kinds
        .iter()
        .filter(|k| matches!(k, SegmentKind::Collar { .. }))
        .count();
    if collar_count > 1 {
        return Err(ModelError::MultipleCollars(collar_count));
    }
    if kinds.len() > 3 {
        return Err(ModelError::BadLayout);
    }
    if kinds.len() > 1 && collar_count == 0 {
        return Err(ModelError::BadLayout);
    }
    if let Some(pos) = kinds
        .iter()
        .position(|k| matches!(k, SegmentKind::Collar { .. }))
    {
        // thin segments only at the ends around the collar
        if kinds.len() == 3 && pos != 1 {
            return Err(ModelError::BadLayout);
        }
    }

    let mut segments = Vec::new();
    let mut cursor = 0.0;
    for (i, kind) in kinds.iter().enumerate() {
        let is_first = i == 0;
        let is_last = i + 1 == kinds.len();
        let seg = match kind {
            SegmentKind::Tube { core_length, radius } => {
                junction_data(kind, true)?;
                Segment {
                    kind: kind.clone(),
                    start: cursor,
                    length: *radius,
                    thick: false,
                    weight: if is_first {
                        SegWeight::TubeUp {
                            scale: 2.0 * std::f64::consts::PI * core_length,
                        }
                    } else if is_last {
                        SegWeight::TubeDown {
                            scale: 2.0 * std::f64::consts::PI * core_length,
                            radius: *radius,
                        }
                    } else {
                        return Err(ModelError::BadLayout);
                    },
                }
            }
            SegmentKind::Cusp { area, depth } => {
                junction_data(kind, true)?;
                Segment {
                    kind: kind.clone(),
                    start: cursor,
                    length: *depth,
                    thick: false,
                    weight: if is_last {
                        SegWeight::CuspDown { area: *area }
                    } else if is_first {
                        SegWeight::CuspUp {
                            area: *area,
                            depth: *depth,
                        }
                    } else {
                        return Err(ModelError::BadLayout);
                    },
                }
            }
            SegmentKind::Collar { width, profile } => {
                let w = width.unwrap_or(spec.collar_width);
                if !(w > 0.0) {
                    return Err(ModelError::BadSegment("collar width must be positive".into()));
                }
                let left = (i > 0).then(|| junction_data(&kinds[i - 1], true)).transpose()?;
                let right = (i + 1 < kinds.len())
                    .then(|| junction_data(&kinds[i + 1], false))
                    .transpose()?;
                let weight = match profile {
                    CollarProfile::Constant => {
                        let value = left.or(right).map(|(v, _)| v).unwrap_or(1.0);
                        if let Some((rv, _)) = right {
                            if (rv - value).abs() > 1e-9 * value.abs().max(rv.abs()) {
                                return Err(ModelError::DiscontinuousWeight {
                                    position: cursor + w,
                                    jump: rv - value,
                                });
                            }
                        }
                        SegWeight::Const { value }
                    }
                    CollarProfile::Blend => resolve_plateau(left, right, w)?,
                };
                Segment {
                    kind: kind.clone(),
                    start: cursor,
                    length: w,
                    thick: true,
                    weight,
                }
            }
        };
        cursor += seg.length;
        segments.push(seg);
    }

    // continuity check at every junction
    for w in segments.windows(2) {
        let a = w[0].weight(w[0].length);
        let b = w[1].weight(0.0);
        let scale = a.abs().max(b.abs()).max(1e-300);
        if ((a - b) / scale).abs() > 1e-9 {
            return Err(ModelError::DiscontinuousWeight {
                position: w[1].start,
                jump: b - a,
            });
        }
    }

    Ok(RadialManifold {
        total_length: cursor,
        segments,
    })
}

impl RadialManifold {
    pub fn weight_at(&self, x: f64) -> f64 {
        let seg = self
            .segments
            .iter()
            .rev()
            .find(|s| x >= s.start - 1e-12)
            .expect("coordinate inside the model");
        seg.weight((x - seg.start).clamp(0.0, seg.length))
    }

    pub fn volume(&self) -> f64 {
        self.segments.iter().map(Segment::volume).sum()
    }

    pub fn thin_volume(&self) -> f64 {
        self.segments
            .iter()
            .filter(|s| !s.thick)
            .map(Segment::volume)
            .sum()
    }

    pub fn thick_volume(&self) -> f64 {
        self.segments
            .iter()
            .filter(|s| s.thick)
            .map(Segment::volume)
            .sum()
    }

    pub fn thick_span(&self) -> Option<(f64, f64)> {
        self.segments
            .iter()
            .find(|s| s.thick)
            .map(|s| (s.start, s.start + s.length))
    }

    pub fn collar_width(&self) -> Option<f64> {
        self.segments.iter().find(|s| s.thick).map(|s| s.length)
    }
}

/// Finite-volume discretization of the glued weight with junction-aligned
/// faces.
#[derive(Debug, Clone)]
pub struct GluedDiscretization {
    pub matrix: SymTridiag,
    pub centers: Vec<f64>,
    pub masses: Vec<f64>,
    pub widths: Vec<f64>,
    /// half-open cell range of the thick region
    pub thick_cells: Option<(usize, usize)>,
}

impl GluedDiscretization {
    /// Neumann sub-problem on a half-open cell range.
    pub fn restricted_matrix(&self, range: (usize, usize)) -> SymTridiag {
        let (lo, hi) = range;
        let mut diag = self.matrix.diag[lo..hi].to_vec();
        let off = self.matrix.offdiag[lo..hi - 1].to_vec();
        // remove the flux through the cut faces (the similarity transform
        // keeps them in the diagonal as offdiag * sqrt(mass ratio))
        if lo > 0 {
            diag[0] += self.matrix.offdiag[lo - 1] * (self.masses[lo - 1] / self.masses[lo]).sqrt();
        }
        if hi < self.matrix.dim() {
            let last = hi - lo - 1;
            diag[last] += self.matrix.offdiag[hi - 1] * (self.masses[hi] / self.masses[hi - 1]).sqrt();
        }
        SymTridiag::new(diag, off).expect("valid sub-problem")
    }

    /// weighted squared mass of cell values over a coordinate window
    pub fn window_mass(&self, u: &[f64], window: (f64, f64)) -> f64 {
        self.centers
            .iter()
            .zip(u)
            .zip(&self.masses)
            .filter(|((x, _), _)| **x >= window.0 && **x <= window.1)
            .map(|((_, v), m)| v * v * m)
            .sum()
    }

    /// Rayleigh quotient of cell values against the discrete operator.
    pub fn rayleigh(&self, u: &[f64]) -> f64 {
        let y: Vec<f64> = u
            .iter()
            .zip(&self.masses)
            .map(|(v, m)| v * m.sqrt())
            .collect();
        let t = &self.matrix;
        let mut num = 0.0;
        for i in 0..t.dim() {
            let mut tv = t.diag[i] * y[i];
            if i > 0 {
                tv += t.offdiag[i - 1] * y[i - 1];
            }
            if i + 1 < t.dim() {
                tv += t.offdiag[i] * y[i + 1];
            }
            num += y[i] * tv;
        }
        let den: f64 = y.iter().map(|v| v * v).sum();
        num / den
    }

    /// convert a symmetrized eigenvector into weighted-unit-norm cell values
    pub fn to_cell_values(&self, symvec: &[f64]) -> Vec<f64> {
        let mut u: Vec<f64> = symvec
            .iter()
            .zip(&self.masses)
            .map(|(y, m)| y / m.sqrt())
            .collect();
        let norm = self
            .centers
            .iter()
            .zip(&u)
            .zip(&self.masses)
            .map(|((_, v), m)| v * v * m)
            .sum::<f64>()
            .sqrt();
        for v in u.iter_mut() {
            *v /= norm;
        }
        u
    }
}

/// Discretize a model at a given base resolution (total cells split over
/// segments proportionally to length, at least 64 each).
pub fn discretize(m: &RadialManifold, base_cells: usize) -> Result<GluedDiscretization, ModelError> {
    let total = m.total_length;
    let mut centers = Vec::new();
    let mut widths = Vec::new();
    let mut weights = Vec::new();
    let mut thick_cells = None;
    for (i, seg) in m.segments.iter().enumerate() {
        let n = ((base_cells as f64 * seg.length / total).round() as usize).max(64);
        if n < 64 {
            return Err(ModelError::UnderResolved { index: i, cells: n });
        }
        let h = seg.length / n as f64;
        let first = centers.len();
        for c in 0..n {
            let x = (c as f64 + 0.5) * h;
            centers.push(seg.start + x);
            widths.push(h);
            weights.push(seg.weight(x));
        }
        if seg.thick {
            thick_cells = Some((first, centers.len()));
        }
    }
    let n = centers.len();
    let masses: Vec<f64> = weights.iter().zip(&widths).map(|(w, h)| w * h).collect();
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n - 1];
    for i in 0..n - 1 {
        let face = 0.5 * (centers[i] + widths[i] / 2.0 + centers[i + 1] - widths[i + 1] / 2.0);
        let wf = m.weight_at(face);
        let d = centers[i + 1] - centers[i];
        let flux = wf / d;
        diag[i] += flux / masses[i];
        diag[i + 1] += flux / masses[i + 1];
        off[i] = -flux / (masses[i] * masses[i + 1]).sqrt();
    }
    Ok(GluedDiscretization {
        matrix: SymTridiag::new(diag, off)?,
        centers,
        masses,
        widths,
        thick_cells,
    })
}

/// Neumann spectra of the model and of its thick restriction, with
/// Richardson error bars.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadialSpectrumPair {
    pub full: Vec<(f64, f64)>,
    pub thick: Vec<(f64, f64)>,
}

pub fn radial_spectrum(
    m: &RadialManifold,
    count: usize,
    base_cells: usize,
) -> Result<RadialSpectrumPair, ModelError> {
    let coarse = discretize(m, base_cells)?;
    let fine = discretize(m, base_cells * 2)?;
    let full_c = tridiag_eigs(&coarse.matrix, count.min(coarse.matrix.dim()))?;
    let full_f = tridiag_eigs(&fine.matrix, count.min(fine.matrix.dim()))?;
    let full = full_c
        .iter()
        .zip(&full_f)
        .map(|(&c, &f)| richardson(c, f))
        .collect();
    let thick = match (coarse.thick_cells, fine.thick_cells) {
        (Some(rc), Some(rf)) => {
            let tc = coarse.restricted_matrix(rc);
            let tf = fine.restricted_matrix(rf);
            let ec = tridiag_eigs(&tc, count.min(tc.dim()))?;
            let ef = tridiag_eigs(&tf, count.min(tf.dim()))?;
            ec.iter().zip(&ef).map(|(&c, &f)| richardson(c, f)).collect()
        }
        _ => Vec::new(),
    };
    Ok(RadialSpectrumPair { full, thick })
}

/// Margin rows of the lower-bound theorem in the radial sector: for every
/// eigenvalue of the model below 1/12, it must be at least
/// `min(thick eigenvalue / 3, 1/12)` up to the grid error bar.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Thm1Row {
    pub k: usize,
    pub lambda_full: f64,
    pub lambda_thick: f64,
    pub margin: f64,
    pub err: f64,
}

/// absolute eigensolver rounding allowance folded into margin error bars
const ROUNDING_FLOOR: f64 = 1e-10;

pub fn verify_thm1(
    m: &RadialManifold,
    k_max: usize,
    base_cells: usize,
) -> Result<Vec<Thm1Row>, ModelError> {
    let threshold = crate::geometry::theorem_threshold(3);
    let pair = radial_spectrum(m, k_max + 1, base_cells)?;
    if pair.thick.is_empty() {
        return Err(ModelError::NoThickRegion);
    }
    let mut rows = Vec::new();
    for k in 0..pair.full.len().min(pair.thick.len()) {
        let (lf, ef) = pair.full[k];
        let (lt, et) = pair.thick[k];
        if lf >= threshold {
            continue;
        }
        rows.push(Thm1Row {
            k,
            lambda_full: lf,
            lambda_thick: lt,
            margin: lf - (lt / 3.0).min(threshold),
            err: ef + et / 3.0 + ROUNDING_FLOOR,
        });
    }
    Ok(rows)
}

/// Mass-localization check: a radial function whose Rayleigh quotient is
/// below 1/12 keeps at least a third of its squared mass in the thick
/// region.
pub fn lemma24_check(
    m: &RadialManifold,
    u: &[f64],
    disc: &GluedDiscretization,
    id: &str,
) -> Result<MarginCase, ModelError> {
    disc.thick_cells.ok_or(ModelError::NoThickRegion)?;
    let span = m.thick_span().ok_or(ModelError::NoThickRegion)?;
    let total: f64 = disc
        .centers
        .iter()
        .zip(u)
        .zip(&disc.masses)
        .map(|((_, v), mass)| v * v * mass)
        .sum();
    let thick_mass = disc.window_mass(u, span);
    let rq = disc.rayleigh(u);
    Ok(MarginCase {
        id: id.to_string(),
        hypothesis_ok: rq < crate::geometry::theorem_threshold(3),
        margin: thick_mass - total / 3.0,
        tolerance: 1e-8,
    })
}

/// Boundary-band control: an eigenfunction of the thick region with
/// Rayleigh quotient at most `1/(3c)` keeps at most `1/c` of its squared
/// mass in the unit bands at the thick region's thin-adjacent boundaries
/// (collar width at least `3c` required).
pub fn cor35_check(
    m: &RadialManifold,
    u_thick: &[f64],
    disc: &GluedDiscretization,
    c: f64,
    id: &str,
) -> Result<MarginCase, ModelError> {
    let (lo, hi) = disc.thick_cells.ok_or(ModelError::NoThickRegion)?;
    let (span_lo, span_hi) = m.thick_span().ok_or(ModelError::NoThickRegion)?;
    let width = span_hi - span_lo;
    if width < 3.0 * c {
        return Err(ModelError::BadSegment(format!(
            "collar width {width} below 3c = {}",
            3.0 * c
        )));
    }
    let thick_slice = &disc.masses[lo..hi];
    let centers = &disc.centers[lo..hi];
    assert_eq!(u_thick.len(), hi - lo);
    let total: f64 = u_thick
        .iter()
        .zip(thick_slice)
        .map(|(v, mass)| v * v * mass)
        .sum();
    // unit bands at the boundaries adjacent to thin segments
    let first_thick = m.segments.iter().position(|s| s.thick).unwrap();
    let mut band_mass = 0.0;
    if first_thick > 0 {
        band_mass += mass_in(centers, u_thick, thick_slice, (span_lo, span_lo + 1.0));
    }
    if first_thick + 1 < m.segments.len() {
        band_mass += mass_in(centers, u_thick, thick_slice, (span_hi - 1.0, span_hi));
    }
    // Rayleigh quotient of u on the thick sub-problem
    let sub = disc.restricted_matrix((lo, hi));
    let y: Vec<f64> = u_thick
        .iter()
        .zip(thick_slice)
        .map(|(v, mass)| v * mass.sqrt())
        .collect();
    let mut num = 0.0;
    for i in 0..sub.dim() {
        let mut tv = sub.diag[i] * y[i];
        if i > 0 {
            tv += sub.offdiag[i - 1] * y[i - 1];
        }
        if i + 1 < sub.dim() {
            tv += sub.offdiag[i] * y[i + 1];
        }
        num += y[i] * tv;
    }
    let rq = num / y.iter().map(|v| v * v).sum::<f64>();
    Ok(MarginCase {
        id: id.to_string(),
        hypothesis_ok: rq <= 1.0 / (3.0 * c),
        margin: total / c - band_mass,
        tolerance: 1e-8,
    })
}

fn mass_in(centers: &[f64], u: &[f64], masses: &[f64], window: (f64, f64)) -> f64 {
    centers
        .iter()
        .zip(u)
        .zip(masses)
        .filter(|((x, _), _)| **x >= window.0 && **x <= window.1)
        .map(|((_, v), m)| v * v * m)
        .sum()
}

/// Ratio rows of the upper-bound comparison: for thick eigenvalues below
/// 1/96, the model eigenvalue over the thick eigenvalue, to be enveloped by
/// `3 + q * log(thin volume)` with a family-fitted q.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Thm2Row {
    pub k: usize,
    pub lambda_full: f64,
    pub lambda_thick: f64,
    pub ratio: f64,
    pub log_thin_volume: f64,
}

pub fn verify_thm2(
    m: &RadialManifold,
    k_max: usize,
    base_cells: usize,
) -> Result<Vec<Thm2Row>, ModelError> {
    let pair = radial_spectrum(m, k_max + 1, base_cells)?;
    if pair.thick.is_empty() {
        return Err(ModelError::NoThickRegion);
    }
    let log_thin = m.thin_volume().max(1e-300).ln();
    let mut rows = Vec::new();
    for k in 1..pair.full.len().min(pair.thick.len()) {
        let (lt, _) = pair.thick[k];
        if lt >= 1.0 / 96.0 {
            continue;
        }
        let (lf, _) = pair.full[k];
        rows.push(Thm2Row {
            k,
            lambda_full: lf,
            lambda_thick: lt,
            ratio: lf / lt,
            log_thin_volume: log_thin,
        });
    }
    Ok(rows)
}

/// Eigenfunction of the full model for eigenvalue index `k`, as cell values.
pub fn full_eigenfunction(
    disc: &GluedDiscretization,
    k: usize,
) -> Result<(f64, Vec<f64>), ModelError> {
    let eigs = tridiag_eigs(&disc.matrix, k + 1)?;
    let v = tridiag_eigenvector(&disc.matrix, eigs[k])?;
    Ok((eigs[k], disc.to_cell_values(&v)))
}

/// Eigenfunction of the thick restriction, values on the thick cells only.
pub fn thick_eigenfunction(
    disc: &GluedDiscretization,
    k: usize,
) -> Result<(f64, Vec<f64>), ModelError> {
    let range = disc.thick_cells.ok_or(ModelError::NoThickRegion)?;
    let sub = disc.restricted_matrix(range);
    let eigs = tridiag_eigs(&sub, k + 1)?;
    let y = tridiag_eigenvector(&sub, eigs[k])?;
    let masses = &disc.masses[range.0..range.1];
    let mut u: Vec<f64> = y
        .iter()
        .zip(masses)
        .map(|(v, mass)| v / mass.sqrt())
        .collect();
    let norm = u
        .iter()
        .zip(masses)
        .map(|(v, mass)| v * v * mass)
        .sum::<f64>()
        .sqrt();
    for v in u.iter_mut() {
        *v /= norm;
    }
    Ok((eigs[k], u))
}
