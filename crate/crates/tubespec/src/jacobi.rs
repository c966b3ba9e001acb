//! Radial curvature comparison: shape-operator (matrix Riccati) flow along a
//! unit-speed geodesic, determinant growth, and the volume-growth and
//! log-derivative margins it certifies.
//!
//! Curvature profiles are diagonal in a parallel frame, with one
//! distinguished axis carrying the even (cosh-type) initial condition and the
//! remaining n-2 axes the odd (sinh-type) one. The shape operator then stays
//! diagonal and each entry obeys the scalar Riccati equation
//! `a' + a^2 + kappa(t) = 0`.
//!
//! The odd-axis entries behave like 1/t near the start, so the flow is
//! seeded at t0 = 1e-3 with the constant-curvature closed form matched to
//! kappa(0) and integrated with step sizes graded like t/32 until the
//! singularity is far behind; errors made there are damped like (t0/t)^2 by
//! the contracting flow.

use crate::numerics::{rk4_step, simpson, NumericsError};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JacobiError {
    #[error("curvature sample {value} at t = {t} leaves the pinching range [{lo}, -1]")]
    OutOfPinchingRange { t: f64, value: f64, lo: f64 },
    #[error("horizon must satisfy 0 < T <= 10 to avoid overflow of sinh-scale growth, got {0}")]
    BadHorizon(f64),
    #[error("need at least 1024 steps, got {0}")]
    TooFewSteps(usize),
    #[error("dimension must be at least 3, got {0}")]
    BadDimension(u32),
    #[error("shape operator blew up at t = {t} (focal point guard)")]
    FocalPoint { t: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// One diagonal entry of the curvature operator as a function of t.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum CurvatureCurve {
    Constant(f64),
    /// `base - sum_j amp_j * (1 + sin(freq_j t + phase_j)) / 2`, clamped
    /// nowhere: the construction keeps values inside the pinching range.
    Waves {
        base: f64,
        terms: Vec<WaveTerm>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WaveTerm {
    pub amplitude: f64,
    pub frequency: f64,
    pub phase: f64,
}

impl CurvatureCurve {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            CurvatureCurve::Constant(c) => *c,
            CurvatureCurve::Waves { base, terms } => {
                let mut v = *base;
                for w in terms {
                    v -= w.amplitude * (1.0 + (w.frequency * t + w.phase).sin()) / 2.0;
                }
                v
            }
        }
    }
}

/// Diagonal curvature operator along a geodesic, with eigenvalue curves
/// pinched in [-b^2, -1]. Axis 0 carries the even initial condition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurvatureProfile {
    pub n: u32,
    pub b: f64,
    pub axes: Vec<CurvatureCurve>,
}

impl CurvatureProfile {
    pub fn constant(n: u32, kappa: f64) -> Result<Self, JacobiError> {
        let b = (-kappa).sqrt().max(1.0);
        Self::new(
            n,
            b,
            (0..n - 1).map(|_| CurvatureCurve::Constant(kappa)).collect(),
        )
    }

    pub fn new(n: u32, b: f64, axes: Vec<CurvatureCurve>) -> Result<Self, JacobiError> {
        if n < 3 {
            return Err(JacobiError::BadDimension(n));
        }
        assert_eq!(axes.len(), (n - 1) as usize);
        let profile = Self { n, b, axes };
        profile.validate_samples(10.0, 4096)?;
        Ok(profile)
    }

    /// Seeded random profile with eigenvalues in [-b^2, -1]: each axis is a
    /// small sum of waves whose amplitudes sum to at most b^2 - 1.
    pub fn seeded_pinched(n: u32, b: f64, seed: u64) -> Result<Self, JacobiError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let span = b * b - 1.0;
        let axes = (0..n - 1)
            .map(|_| {
                let k = rng.gen_range(1..=3);
                let mut budget = span;
                let terms = (0..k)
                    .map(|_| {
                        let amplitude = rng.gen_range(0.0..=budget * 0.9);
                        budget -= amplitude;
                        WaveTerm {
                            amplitude,
                            frequency: rng.gen_range(0.3..4.0),
                            phase: rng.gen_range(0.0..std::f64::consts::TAU),
                        }
                    })
                    .collect();
                CurvatureCurve::Waves { base: -1.0, terms }
            })
            .collect();
        Self::new(n, b, axes)
    }

    pub fn kappa(&self, axis: usize, t: f64) -> f64 {
        self.axes[axis].eval(t)
    }

    fn validate_samples(&self, horizon: f64, samples: usize) -> Result<(), JacobiError> {
        let lo = -self.b * self.b;
        for axis in &self.axes {
            for i in 0..=samples {
                let t = horizon * i as f64 / samples as f64;
                let v = axis.eval(t);
                if !(v <= -1.0 + 1e-12 && v >= lo - 1e-12) {
                    return Err(JacobiError::OutOfPinchingRange { t, value: v, lo });
                }
            }
        }
        Ok(())
    }
}

/// Sampled flow data: shape-operator diagonal, determinant growth and its
/// running integral.
#[derive(Debug, Clone)]
pub struct JacobiTrace {
    pub n: u32,
    pub t: Vec<f64>,
    /// shape-operator diagonal per sample (axis 0 = even axis)
    pub shape: Vec<Vec<f64>>,
    /// determinant of the transverse Jacobi matrix
    pub j: Vec<f64>,
    /// j'/j = trace of the shape operator
    pub logderiv: Vec<f64>,
    /// running integral of j from 0
    pub cumulative_j: Vec<f64>,
}

const START_TIME: f64 = 1e-3;
const GRADING_END: f64 = 0.25;
const GRADING_FACTOR: f64 = 32.0;
const BLOWUP_GUARD: f64 = 1e8;

/// Closed-form determinant for constant curvature -c^2: the even axis grows
/// like cosh(ct), each odd axis like sinh(ct)/c.
fn constant_curvature_j(n: u32, c: &[f64], t: f64) -> f64 {
    let mut j = (c[0] * t).cosh();
    for &ci in &c[1..] {
        j *= (ci * t).sinh() / ci;
    }
    let _ = n;
    j
}

/// Integrate the diagonal Riccati flow `a' = -a^2 - kappa(t)` for the given
/// profile up to the horizon, tracking `log j` (whose derivative is the trace)
/// and the running integral of j.
pub fn integrate_riccati(
    profile: &CurvatureProfile,
    horizon: f64,
    steps: usize,
) -> Result<JacobiTrace, JacobiError> {
    if !(horizon > START_TIME * 2.0 && horizon <= 10.0) {
        return Err(JacobiError::BadHorizon(horizon));
    }
    if steps < 1024 {
        return Err(JacobiError::TooFewSteps(steps));
    }
    let m = (profile.n - 1) as usize;
    let c0: Vec<f64> = (0..m).map(|i| (-profile.kappa(i, 0.0)).sqrt()).collect();

    // state: [a_0 .. a_{m-1}, log j, integral of j]
    let deriv = |t: f64, y: &[f64], dy: &mut [f64]| {
        let mut trace = 0.0;
        for i in 0..m {
            let a = y[i];
            dy[i] = -a * a - profile.kappa(i, t);
            trace += a;
        }
        dy[m] = trace;
        dy[m + 1] = y[m].exp();
    };

    let t0 = START_TIME;
    let mut y = vec![0.0; m + 2];
    y[0] = c0[0] * (c0[0] * t0).tanh();
    for i in 1..m {
        y[i] = c0[i] / (c0[i] * t0).tanh();
    }
    y[m] = constant_curvature_j(profile.n, &c0, t0).ln();
    y[m + 1] = simpson(|s| constant_curvature_j(profile.n, &c0, s), 0.0, t0, 64);

    let mut trace = JacobiTrace {
        n: profile.n,
        t: vec![t0],
        shape: vec![y[..m].to_vec()],
        j: vec![y[m].exp()],
        logderiv: vec![y[..m].iter().sum()],
        cumulative_j: vec![y[m + 1]],
    };

    let record = |t: f64, y: &[f64], trace: &mut JacobiTrace| -> Result<(), JacobiError> {
        if y.iter().any(|v| !v.is_finite()) || y[..m].iter().any(|v| v.abs() > BLOWUP_GUARD) {
            return Err(JacobiError::FocalPoint { t });
        }
        trace.t.push(t);
        trace.shape.push(y[..m].to_vec());
        trace.j.push(y[m].exp());
        trace.logderiv.push(y[..m].iter().sum());
        trace.cumulative_j.push(y[m + 1]);
        Ok(())
    };

    // graded phase: step sizes proportional to t tame the 1/t transient
    let grading_end = GRADING_END.min(horizon / 2.0);
    let mut t = t0;
    while t < grading_end {
        let h = (t / GRADING_FACTOR).min(grading_end - t);
        y = rk4_step(&deriv, t, &y, h);
        t += h;
        record(t, &y, &mut trace)?;
    }
    // uniform phase with the requested resolution
    let h = (horizon - t) / steps as f64;
    for s in 0..steps {
        let ts = t + s as f64 * h;
        y = rk4_step(&deriv, ts, &y, h);
        record(t + (s + 1) as f64 * h, &y, &mut trace)?;
    }
    Ok(trace)
}

/// Reference determinant growth in constant curvature -1:
/// `sinh^{n-2}(t) cosh(t)`.
pub fn hyperbolic_jacobian(n: u32, t: f64) -> f64 {
    assert!(n >= 3 && t >= 0.0);
    t.sinh().powi(n as i32 - 2) * t.cosh()
}

/// Reference determinant decay inside a horoball quotient: `exp(-(n-1) t)`.
pub fn cusp_jacobian(n: u32, t: f64) -> f64 {
    assert!(n >= 3 && t >= 0.0);
    (-(f64::from(n) - 1.0) * t).exp()
}

/// Minimum over the trace of `j(R) - (n-1) * integral_0^R j`; nonnegative for
/// curvature at most -1.
pub fn volume_growth_margin(trace: &JacobiTrace) -> f64 {
    let n1 = f64::from(trace.n) - 1.0;
    trace
        .j
        .iter()
        .zip(&trace.cumulative_j)
        .map(|(j, cj)| j - n1 * cj)
        .fold(f64::INFINITY, f64::min)
}

/// Minimum over the trace of `j'/j - ((n-2) coth t + tanh t)`, the
/// log-derivative comparison against constant curvature -1; nonnegative for
/// curvature at most -1.
pub fn logderiv_compare(trace: &JacobiTrace) -> f64 {
    let n2 = f64::from(trace.n) - 2.0;
    trace
        .t
        .iter()
        .zip(&trace.logderiv)
        .filter(|(t, _)| **t >= 1e-3)
        .map(|(t, ld)| ld - (n2 / t.tanh() + t.tanh()))
        .fold(f64::INFINITY, f64::min)
}

/// Largest pointwise residual of the Riccati equation `a' + a^2 + kappa`
/// recomputed from the stored samples by centered five-point differentiation.
/// Only meaningful on the uniform part of the grid away from the 1/t
/// transient, hence the `t_min` cutoff.
pub fn riccati_residual_max(trace: &JacobiTrace, profile: &CurvatureProfile, t_min: f64) -> f64 {
    let m = (profile.n - 1) as usize;
    let nt = trace.t.len();
    let mut worst = 0.0f64;
    for idx in 2..nt - 2 {
        let t = trace.t[idx];
        if t < t_min {
            continue;
        }
        // require locally uniform spacing for the stencil
        let h = trace.t[idx + 1] - trace.t[idx];
        let uniform = (trace.t[idx - 1] - trace.t[idx - 2] - h).abs() < 1e-9 * h
            && (trace.t[idx] - trace.t[idx - 1] - h).abs() < 1e-9 * h
            && (trace.t[idx + 2] - trace.t[idx + 1] - h).abs() < 1e-9 * h;
        if !uniform {
            continue;
        }
        for axis in 0..m {
            let am2 = trace.shape[idx - 2][axis];
            let am1 = trace.shape[idx - 1][axis];
            let ap1 = trace.shape[idx + 1][axis];
            let ap2 = trace.shape[idx + 2][axis];
            let da = (am2 - 8.0 * am1 + 8.0 * ap1 - ap2) / (12.0 * h);
            let a = trace.shape[idx][axis];
            let res = (da + a * a + profile.kappa(axis, t)).abs();
            worst = worst.max(res);
        }
    }
    worst
}

/// CSV dump of a trace with the two comparison margins, one row per sample.
pub fn write_trace_csv<W: std::io::Write>(
    trace: &JacobiTrace,
    mut out: W,
) -> std::io::Result<()> {
    let n1 = f64::from(trace.n) - 1.0;
    let n2 = f64::from(trace.n) - 2.0;
    writeln!(out, "t,j,jbar,logderiv_margin,growth_margin")?;
    for i in 0..trace.t.len() {
        let t = trace.t[i];
        let jbar = hyperbolic_jacobian(trace.n, t);
        let ld_margin = trace.logderiv[i] - (n2 / t.tanh() + t.tanh());
        let growth_margin = trace.j[i] - n1 * trace.cumulative_j[i];
        writeln!(
            out,
            "{},{},{},{},{}",
            t, trace.j[i], jbar, ld_margin, growth_margin
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_minus_one_matches_closed_form() {
        for n in [3u32, 4] {
            let p = CurvatureProfile::constant(n, -1.0).unwrap();
            let trace = integrate_riccati(&p, 5.0, 2048).unwrap();
            for (idx, &t) in trace.t.iter().enumerate() {
                let want = hyperbolic_jacobian(n, t);
                let rel = (trace.j[idx] - want).abs() / want.max(1e-300);
                assert!(rel < 1e-6, "n={n} t={t} rel={rel}");
                // shape operator: even axis tanh, odd axes coth
                let a = &trace.shape[idx];
                assert!((a[0] - t.tanh()).abs() < 1e-6, "t={t}");
                for ai in &a[1..] {
                    assert!((ai - 1.0 / t.tanh()).abs() < 1e-6 * (1.0 / t.tanh()), "t={t}");
                }
            }
        }
    }

    #[test]
    fn constant_minus_four_matches_scaled_closed_form() {
        // J_even = cosh(2t), J_odd = sinh(2t)/2, so j = cosh(2t) sinh(2t) / 2
        let p = CurvatureProfile::constant(3, -4.0).unwrap();
        let trace = integrate_riccati(&p, 5.0, 2048).unwrap();
        for (idx, &t) in trace.t.iter().enumerate() {
            let want = (2.0 * t).cosh() * (2.0 * t).sinh() / 2.0;
            let rel = (trace.j[idx] - want).abs() / want.max(1e-300);
            assert!(rel < 1e-6, "t={t} rel={rel}");
        }
    }

    #[test]
    fn determinant_normalized_like_t_to_n_minus_2_at_start() {
        for n in [3u32, 4, 5] {
            let p = CurvatureProfile::constant(n, -1.0).unwrap();
            let trace = integrate_riccati(&p, 5.0, 1024).unwrap();
            let t = trace.t[0];
            let ratio = trace.j[0] / t.powi(n as i32 - 2);
            assert!((ratio - 1.0).abs() < 1e-5, "n={n} ratio={ratio}");
        }
    }

    #[test]
    fn growth_margin_nonnegative_and_matches_closed_form() {
        let p = CurvatureProfile::constant(3, -1.0).unwrap();
        let trace = integrate_riccati(&p, 5.0, 2048).unwrap();
        let margin = volume_growth_margin(&trace);
        assert!(margin >= -1e-8, "margin {margin}");
        // closed form of the margin near the start: sinh(t) e^{-t}, so the
        // grid minimum sits at the first sample
        let want = trace.t[0].sinh() * (-trace.t[0]).exp();
        assert!((margin - want).abs() < 1e-6);
    }

    #[test]
    fn logderiv_margin_zero_for_constant_minus_one() {
        let p = CurvatureProfile::constant(3, -1.0).unwrap();
        let trace = integrate_riccati(&p, 5.0, 2048).unwrap();
        let margin = logderiv_compare(&trace);
        assert!(margin.abs() < 1e-6, "margin {margin}");
    }

    #[test]
    fn logderiv_margin_strictly_positive_for_stronger_pinching() {
        let p = CurvatureProfile::constant(3, -4.0).unwrap();
        let trace = integrate_riccati(&p, 5.0, 2048).unwrap();
        // closed form: coth is decreasing in t, scaled curve dominates
        for (idx, &t) in trace.t.iter().enumerate() {
            if t < 0.1 {
                continue;
            }
            let margin = trace.logderiv[idx] - (1.0 / t.tanh() + t.tanh());
            assert!(margin > 0.0, "t={t} margin={margin}");
        }
    }

    #[test]
    fn pointwise_stronger_curvature_dominates_logderivative() {
        let weak = CurvatureProfile::constant(3, -1.0).unwrap();
        let strong = CurvatureProfile::constant(3, -2.25).unwrap();
        let tw = integrate_riccati(&weak, 4.0, 1024).unwrap();
        let ts = integrate_riccati(&strong, 4.0, 1024).unwrap();
        assert_eq!(tw.t.len(), ts.t.len());
        for i in 0..tw.t.len() {
            assert!(ts.logderiv[i] >= tw.logderiv[i] - 1e-8);
        }
    }

    #[test]
    fn seeded_profiles_stay_pinched_and_satisfy_margins() {
        for seed in 0..10u64 {
            let p = CurvatureProfile::seeded_pinched(3, 3.0, seed).unwrap();
            let trace = integrate_riccati(&p, 4.0, 1024).unwrap();
            assert!(volume_growth_margin(&trace) >= -1e-8, "seed {seed}");
            assert!(logderiv_compare(&trace) >= -1e-8, "seed {seed}");
        }
    }

    #[test]
    fn riccati_residual_small_on_uniform_grid() {
        let p = CurvatureProfile::seeded_pinched(3, 2.0, 7).unwrap();
        let trace = integrate_riccati(&p, 5.0, 4096).unwrap();
        let res = riccati_residual_max(&trace, &p, 0.3);
        assert!(res < 1e-6, "residual {res}");
    }

    #[test]
    fn cusp_jacobian_balance_identity() {
        // exact: (n-1) * integral_T^inf e^{-(n-1)s} ds = e^{-(n-1)T}
        for n in [3u32, 4, 6] {
            for tt in [0.0, 0.7, 2.0] {
                let tail = simpson(|s| cusp_jacobian(n, s), tt, tt + 60.0, 20000);
                let lhs = cusp_jacobian(n, tt);
                assert!(
                    (lhs - (f64::from(n) - 1.0) * tail).abs() < 1e-9,
                    "n={n} T={tt}"
                );
            }
        }
        assert!((cusp_jacobian(3, 0.0) - 1.0).abs() < 1e-15);
        assert!((cusp_jacobian(3, 1.0) - (-2.0f64).exp()).abs() < 1e-15);
        assert!((hyperbolic_jacobian(3, 1.0) - 1.0f64.sinh() * 1.0f64.cosh()).abs() < 1e-15);
        assert!(hyperbolic_jacobian(5, 0.0) == 0.0);
    }

    #[test]
    fn horizon_and_step_guards() {
        let p = CurvatureProfile::constant(3, -1.0).unwrap();
        assert!(matches!(
            integrate_riccati(&p, 12.0, 2048),
            Err(JacobiError::BadHorizon(_))
        ));
        assert!(matches!(
            integrate_riccati(&p, 5.0, 128),
            Err(JacobiError::TooFewSteps(_))
        ));
    }

    #[test]
    fn out_of_range_profile_rejected() {
        let r = CurvatureProfile::new(
            3,
            1.0,
            vec![
                CurvatureCurve::Constant(-0.5),
                CurvatureCurve::Constant(-1.0),
            ],
        );
        assert!(matches!(r, Err(JacobiError::OutOfPinchingRange { .. })));
    }

    #[test]
    fn trace_csv_has_expected_header() {
        let p = CurvatureProfile::constant(3, -1.0).unwrap();
        let trace = integrate_riccati(&p, 4.0, 1024).unwrap();
        let mut buf = Vec::new();
        write_trace_csv(&trace, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "t,j,jbar,logderiv_margin,growth_margin"
        );
        assert_eq!(text.lines().count(), trace.t.len() + 1);
    }
}
