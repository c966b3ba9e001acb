//! The verification suite: every certified inequality of the library run at
//! pinned tolerances over pinned families, with one outcome per criterion.
//!
//! The suite is deterministic for a fixed seed; the CLI `verify-all`
//! subcommand and the acceptance test target both run exactly this code.

use crate::extension::{
    extend, lemma22_check, sampling, shell_rayleigh_check, slice_renormalize, CollarData,
    CollarMode, RadialComponent, ThinDomain,
};
use crate::geometry::{
    tube_volume, ManifoldParams, MargulisTube, Shell, ShellGeometry,
    TorusLattice,
};
use crate::graphspec::{
    cheeger_check, connected_graphs_up_to_iso, graph_spectrum, random_connected_graph,
};
use crate::jacobi::{
    hyperbolic_jacobian, integrate_riccati, logderiv_compare, volume_growth_margin,
    CurvatureProfile,
};
use crate::model1d::{
    assemble, cor35_check, discretize, thick_eigenfunction, verify_thm1, verify_thm2,
    CollarProfile, ModelSpec, SegmentKind,
};
use crate::numerics::{richardson, sl_discretize, tridiag_eigs, Endpoint, GridSpec, RadialOperator};
use crate::oracles::{LeftStart, RightCondition, ShootingOracle};
use crate::report::fit_constant;
use crate::spectra::{check_tube_lambda1, torus_spectrum, TubeSpectrumParams};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Outcome of one criterion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub number: u32,
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    pub inapplicable: usize,
    /// notable findings: fitted constants, witnesses, extremal margins
    pub notes: Vec<String>,
    pub fitted: BTreeMap<String, f64>,
}

impl CriterionOutcome {
    fn new(number: u32, name: &str) -> Self {
        Self {
            number,
            name: name.to_string(),
            passed: true,
            cases: 0,
            failures: 0,
            inapplicable: 0,
            notes: Vec::new(),
            fitted: BTreeMap::new(),
        }
    }

    fn check(&mut self, ok: bool, context: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            self.passed = false;
            if self.notes.len() < 16 {
                self.notes.push(format!("FAIL {}", context()));
            }
        }
    }

    pub fn summary_line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut extras = String::new();
        if self.inapplicable > 0 {
            extras.push_str(&format!(", {} inapplicable", self.inapplicable));
        }
        for (k, v) in &self.fitted {
            extras.push_str(&format!(", {k}={v:.6}"));
        }
        format!(
            "{status} criterion {:2}: {} ({} cases, {} failures{extras})",
            self.number, self.name, self.cases, self.failures
        )
    }
}

/// Full suite report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub outcomes: Vec<CriterionOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

fn params() -> ManifoldParams {
    ManifoldParams::default()
}

/// widest admissible tube for a core length (boundary shortest vector is
/// then pinned at a*eps)
fn family_tube(core_length: f64) -> MargulisTube {
    MargulisTube::widest(core_length, 0.0, 1.0, &params()).expect("family tube is admissible")
}

/// 1. Exact graph identities and the degree-volume Cheeger inequality over
///    the exhaustive small range plus seeded random graphs; the vertex-count
///    discrepancy witness is recorded.
pub fn criterion1_graph_identities(seed: u64) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(1, "graph spectrum identities and Cheeger floor");
    let check_graph = |out: &mut CriterionOutcome, g: &crate::graphspec::WeightedGraph, label: &str| {
        let n = g.vertex_count() as f64;
        let spec = graph_spectrum(g);
        let sum: f64 = spec.iter().sum();
        out.check((sum - n).abs() <= 1e-8, || format!("{label}: eigenvalue sum {sum} != {n}"));
        out.check(spec[spec.len() - 1] >= 1.0 - 1e-9, || {
            format!("{label}: top eigenvalue {} < 1", spec[spec.len() - 1])
        });
        let rep = cheeger_check(g).expect("small graph");
        out.check(rep.margin_volume >= -1e-12, || {
            format!("{label}: lambda1 {} < h_vol^2/2", rep.lambda1)
        });
    };

    let mut exhaustive_six = 0usize;
    for n in 2..=6usize {
        let graphs = connected_graphs_up_to_iso(n);
        if n == 6 {
            exhaustive_six = graphs.len();
        }
        for (i, g) in graphs.iter().enumerate() {
            check_graph(&mut out, g, &format!("n{n}#{i}"));
        }
    }
    out.check(exhaustive_six == 112, || {
        format!("expected 112 connected graphs on 6 vertices, enumerated {exhaustive_six}")
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..500 {
        let n = rng.gen_range(4..=12);
        let p = rng.gen_range(0.05..0.5);
        let g = random_connected_graph(n, p, seed.wrapping_add(1000 + i));
        check_graph(&mut out, &g, &format!("rand#{i}"));
    }

    // the K4 vertex-count discrepancy witness
    let k4 = crate::graphspec::WeightedGraph::new(
        4,
        vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
    )
    .unwrap();
    let rep = cheeger_check(&k4).unwrap();
    out.check(rep.margin_vertex < 0.0, || {
        "K4 should witness the vertex-count Cheeger discrepancy".to_string()
    });
    out.notes.push(format!(
        "K4 witness: lambda1 = {:.6} < h_vertex^2/2 = {:.6} (vertex-count form fails); \
         degree-volume margin = {:.6} >= 0",
        rep.lambda1,
        rep.h_vertex * rep.h_vertex / 2.0,
        rep.margin_volume
    ));
    out
}

/// 2. Flat square torus of side 2 pi: lambda_1 = 1 with multiplicity 4.
pub fn criterion2_flat_torus() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(2, "flat torus exact spectrum");
    let lat = TorusLattice::square(2.0 * std::f64::consts::PI).unwrap();
    let rep = torus_spectrum(&lat, 6).unwrap();
    out.check(rep.entries[0].lambda == 0.0 && rep.entries[0].mult == 1, || {
        "lambda_0 must be 0 with multiplicity 1".to_string()
    });
    out.check((rep.entries[1].lambda - 1.0).abs() <= 1e-12, || {
        format!("lambda_1 = {} != 1", rep.entries[1].lambda)
    });
    out.check(rep.entries[1].mult == 4, || {
        format!("multiplicity {} != 4", rep.entries[1].mult)
    });
    out
}

/// 3. Curvature comparison: constant curvature reproduces the closed form;
///    seeded pinched profiles keep both margins nonnegative.
pub fn criterion3_jacobi(seed: u64) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(3, "curvature comparison margins");
    for n in [3u32, 4] {
        let p = CurvatureProfile::constant(n, -1.0).unwrap();
        let trace = integrate_riccati(&p, 5.0, 2048).unwrap();
        let mut worst = 0.0f64;
        for (i, &t) in trace.t.iter().enumerate() {
            let want = hyperbolic_jacobian(n, t);
            worst = worst.max((trace.j[i] - want).abs() / want.max(1e-300));
        }
        out.check(worst <= 1e-6, || {
            format!("n={n}: constant-curvature determinant off by {worst:e}")
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_growth = f64::INFINITY;
    let mut min_logderiv = f64::INFINITY;
    for i in 0..100 {
        let b = rng.gen_range(1.2..3.0f64);
        let profile = CurvatureProfile::seeded_pinched(3, b, seed.wrapping_add(31 + i)).unwrap();
        let trace = integrate_riccati(&profile, 4.0, 1024).unwrap();
        let g = volume_growth_margin(&trace);
        let l = logderiv_compare(&trace);
        min_growth = min_growth.min(g);
        min_logderiv = min_logderiv.min(l);
        out.check(g >= -1e-8, || format!("profile {i}: growth margin {g:e}"));
        out.check(l >= -1e-8, || format!("profile {i}: log-derivative margin {l:e}"));
    }
    out.notes.push(format!(
        "minimal margins over 100 profiles: growth {min_growth:.3e}, log-derivative {min_logderiv:.3e}"
    ));
    out
}

/// 4. The matrix discretization and the shooting oracle agree on the radial
///    spectrum of tubes with radii 2, 5 and 8.
pub fn criterion4_shooting_equivalence() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(4, "radial solver vs shooting oracle");
    let p = params();
    for r in [2.0f64, 5.0, 8.0] {
        let l = 0.9 * p.constants.a * p.epsilon / r.cosh();
        let tube = MargulisTube::new(l, 0.0, r, &p).unwrap();
        let w = |rho: f64| rho.sinh() * rho.cosh();
        let v = |_: f64| 0.0;
        let oracle = ShootingOracle {
            weight: &w,
            potential: &v,
            interval: (0.0, tube.radius),
            left: LeftStart::RegularOrigin { m: 0 },
            right: RightCondition::Neumann,
            steps: 20000,
        };
        let shot = oracle.eigenvalues(6);
        let op = RadialOperator {
            weight: &w,
            potential: &v,
            interval: (0.0, tube.radius),
            left: Endpoint::Neumann,
            right: Endpoint::Neumann,
        };
        let coarse = tridiag_eigs(
            &sl_discretize(&op, &GridSpec::cells((0.0, tube.radius), 1024).unwrap()).unwrap(),
            6,
        )
        .unwrap();
        let fine = tridiag_eigs(
            &sl_discretize(&op, &GridSpec::cells((0.0, tube.radius), 2048).unwrap()).unwrap(),
            6,
        )
        .unwrap();
        for k in 1..=5 {
            let (matrix, _) = richardson(coarse[k], fine[k]);
            let diff = (matrix - shot[k]).abs();
            out.check(diff <= 1e-6, || {
                format!("R={r} k={k}: matrix {matrix} vs shooting {} (diff {diff:e})", shot[k])
            });
        }
    }
    out
}

/// 5. Extension operator over 10 tubes x 50 seeded boundary functions:
///    squared-norm pinching, mean preservation, and a stable fitted Rayleigh
///    constant.
pub fn criterion5_extension(seed: u64) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(5, "extension norm pinching and Rayleigh bound");
    let p = params();
    let mut fit_family = Vec::new();
    for ti in 0..10 {
        let l = 10f64.powf(-2.0 - 3.0 * ti as f64 / 9.0);
        let tube = family_tube(l);
        for fi in 0..50u64 {
            let f = sampling::boundary_function(&tube, seed ^ (ti as u64 * 977 + fi));
            let (_, rep) = extend(&tube, &f, &p).expect("family tube admits the extension");
            out.check(
                rep.sq_norm_ratio >= 0.25 - 1e-6 && rep.sq_norm_ratio <= 0.5 + 1e-6,
                || format!("tube {ti} fn {fi}: norm ratio {}", rep.sq_norm_ratio),
            );
            if f.mean == 0.0 {
                out.check(rep.mean_value.abs() <= 1e-9 * rep.sq_norm.max(1.0), || {
                    format!("tube {ti} fn {fi}: mean {} not preserved", rep.mean_value)
                });
            }
            if rep.rayleigh_boundary > 0.0 {
                fit_family.push((
                    rep.rayleigh_extension,
                    0.0,
                    rep.rayleigh_boundary * tube_volume(&tube).ln(),
                ));
            }
        }
    }
    let fit = fit_constant(&fit_family);
    out.fitted.insert("q2".into(), fit.fitted);
    out.fitted.insert("q2_stability".into(), fit.stability);
    out.check(fit.stability < 10.0, || {
        format!("q2 stability {} >= 10", fit.stability)
    });
    out
}

/// 6. First-eigenvalue bound of tubes over the standard family, with a
///    stable fitted constant.
pub fn criterion6_tube_lambda1() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(6, "tube first-eigenvalue log-volume bound");
    let p = params();
    let mut family = Vec::new();
    for exp in 2..=5 {
        let tube = family_tube(10f64.powi(-exp));
        let rep = check_tube_lambda1(&tube, &p, &TubeSpectrumParams { grid_cells: 1024 })
            .expect("family tube spectrum");
        out.check(rep.applicable, || format!("l=1e-{exp}: cutoff hypothesis failed"));
        out.check(rep.lambda1 > 0.0, || format!("l=1e-{exp}: lambda1 not positive"));
        family.push((rep.ratio, 0.0, 1.0));
        out.notes
            .push(format!("l=1e-{exp}: lambda1={:.3e} ratio={:.4}", rep.lambda1, rep.ratio));
    }
    let fit = fit_constant(&family);
    out.fitted.insert("q3".into(), fit.fitted);
    out.fitted.insert("q3_stability".into(), fit.stability);
    out.check(fit.stability < 10.0, || {
        format!("q3 stability {} >= 10", fit.stability)
    });
    out
}

/// 7. Conditional thin-part inequalities over seeded random suites: the
///    trace-Poincare bound, the shell Rayleigh bound and the collar
///    renormalization, with a non-vacuity requirement on the generators.
pub fn criterion7_conditional_inequalities(seed: u64) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(7, "thin-part conditional inequalities");

    // trace-Poincare on tubes and cusps
    let tube = family_tube(1e-3);
    let cusp = crate::geometry::CuspModel::new(TorusLattice::square(3.0).unwrap(), 8.0).unwrap();
    let mut applicable = 0usize;
    for i in 0..100u64 {
        let on_tube = i % 2 == 0;
        let length = if on_tube { tube.radius } else { cusp.rho_max };
        let spec = sampling::ProfileSpec::seeded(length, seed ^ (0xA000 + i));
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0xB000 + i));
        let m = rng.gen_range(0..=2) as f64;
        let case = if on_tube {
            let value = |rho: f64| spec.value(rho);
            let deriv = |rho: f64| spec.deriv(rho);
            let tangential = move |rho: f64| m * m / rho.sinh().powi(2).max(1e-280);
            lemma22_check(
                &ThinDomain::Tube(&tube),
                &[RadialComponent {
                    pair_weight: if m == 0.0 { 1.0 } else { 2.0 },
                    profile: &value,
                    profile_deriv: &deriv,
                    tangential: &tangential,
                }],
                &format!("l22-{i}"),
            )
        } else {
            // profiles vanishing at the cusp boundary rho = 0
            let value = |rho: f64| spec.value(cusp.rho_max - rho) - spec.value(cusp.rho_max);
            let deriv = |rho: f64| -spec.deriv(cusp.rho_max - rho);
            let mu = m * 4.0 * std::f64::consts::PI.powi(2) / cusp.cross_section.area();
            let tangential = move |rho: f64| mu * (2.0 * rho).exp();
            lemma22_check(
                &ThinDomain::Cusp(&cusp),
                &[RadialComponent {
                    pair_weight: if m == 0.0 { 1.0 } else { 2.0 },
                    profile: &value,
                    profile_deriv: &deriv,
                    tangential: &tangential,
                }],
                &format!("l22-{i}"),
            )
        };
        if case.hypothesis_ok {
            applicable += 1;
            out.check(case.margin >= -1e-8, || {
                format!("{}: margin {:e}", case.id, case.margin)
            });
        } else {
            out.inapplicable += 1;
        }
    }
    out.check(applicable >= 80, || {
        format!("trace-Poincare generator too vacuous: {applicable}/100 applicable")
    });

    // shell Rayleigh bound
    let mut applicable = 0usize;
    for i in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0xC000 + i));
        let k = rng.gen_range(2.0..10.0);
        let shell = if rng.gen_bool(0.5) {
            Shell::new(
                1.0,
                ShellGeometry::TubeSide {
                    r_outer: k + rng.gen_range(1.0..4.0),
                },
                k,
            )
            .unwrap()
        } else {
            Shell::new(rng.gen_range(0.5..4.0), ShellGeometry::Cusp, k).unwrap()
        };
        let spec = sampling::ProfileSpec::seeded(k, seed ^ (0xD000 + i));
        let spec2 = spec.clone();
        let alpha = rng.gen_range(1.2..3.0);
        // exponential damping toward the heavy outer band keeps the
        // hypothesis satisfiable
        let value = move |t: f64| spec.value(t) * (-alpha * t).exp();
        let deriv =
            move |t: f64| (spec2.deriv(t) - alpha * spec2.value(t)) * (-alpha * t).exp();
        let case = shell_rayleigh_check(&shell, &value, &deriv, &format!("shell-{i}"));
        if case.hypothesis_ok {
            applicable += 1;
            out.check(case.margin >= -1e-8, || {
                format!("{}: margin {:e}", case.id, case.margin)
            });
        } else {
            out.inapplicable += 1;
        }
    }
    out.check(applicable >= 80, || {
        format!("shell generator too vacuous: {applicable}/100 applicable")
    });

    // collar renormalization
    let n = 161;
    for i in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0xE000 + i));
        let delta = rng.gen_range(0.3..1.0);
        let s: Vec<f64> = (0..n).map(|j| delta * j as f64 / (n - 1) as f64).collect();
        let mode = |rng: &mut ChaCha8Rng| {
            let a = rng.gen_range(0.3..1.0);
            let b = rng.gen_range(-0.4..0.4);
            let w = rng.gen_range(0.5..4.0);
            let phase = rng.gen_range(0.0..std::f64::consts::TAU);
            CollarMode {
                c: s.iter()
                    .map(|&t| (a + b * (w * t + phase).sin(), 0.4 * a * (w * t).cos()))
                    .collect(),
                dc: s
                    .iter()
                    .map(|&t| (b * w * (w * t + phase).cos(), -0.4 * a * w * (w * t).sin()))
                    .collect(),
                tangential: vec![rng.gen_range(0.5..4.0); n],
            }
        };
        let data = CollarData {
            area: s.iter().map(|&t| (2.0 * t).exp()).collect(),
            modes: vec![mode(&mut rng), mode(&mut rng)],
            s,
        };
        let rep = slice_renormalize(&data).expect("positive slice masses");
        out.check(rep.normal_margin <= 1e-8, || {
            format!("collar-{i}: normal margin {:e}", rep.normal_margin)
        });
    }
    out
}

/// The shared 20-config glued-model family of the radial-sector theorems.
pub fn model_family() -> Vec<(String, ModelSpec)> {
    let mut configs = Vec::new();
    for (i, exp) in [2.0f64, 3.0, 4.0, 5.0, 6.0].iter().enumerate() {
        let l = 10f64.powf(-exp);
        let radius = (0.4 / l).acosh();
        for (j, width) in [32.0, 96.0].iter().enumerate() {
            for (with_cusp, tag) in [(false, "tc"), (true, "tcc")] {
                let mut segments = vec![
                    SegmentKind::Tube {
                        core_length: l,
                        radius,
                    },
                    SegmentKind::Collar {
                        width: Some(*width),
                        profile: CollarProfile::Blend,
                    },
                ];
                if with_cusp {
                    segments.push(SegmentKind::Cusp {
                        area: 1.5 + i as f64 * 0.5,
                        depth: 6.0 + j as f64,
                    });
                }
                configs.push((
                    format!("{tag}-l1e-{exp:.0}-w{width:.0}"),
                    ModelSpec {
                        segments,
                        collar_width: *width,
                        grid: 1024,
                    },
                ));
            }
        }
    }
    configs
}

/// 8. Lower-bound margins over the glued-model family.
pub fn criterion8_thm1_margins() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(8, "radial lower-bound margins over glued models");
    for (id, spec) in model_family() {
        let m = assemble(&spec).expect("family config assembles");
        let rows = verify_thm1(&m, 8, 1024).expect("family spectra");
        for row in rows {
            out.check(row.margin >= -row.err, || {
                format!("{id} k={}: margin {:e} below -err {:e}", row.k, row.margin, row.err)
            });
            if row.k >= 1 {
                out.check(row.err <= 1e-4 * row.lambda_full.max(1e-12), || {
                    format!(
                        "{id} k={}: error bar {:e} above 1e-4 relative ({:e})",
                        row.k, row.err, row.lambda_full
                    )
                });
            }
        }
    }
    out
}

/// 9. Upper-bound ratios over the same family, with a fitted envelope
///    constant.
pub fn criterion9_thm2_ratios() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(9, "radial upper-bound ratio envelope");
    let mut family = Vec::new();
    let mut max_ratio = 0.0f64;
    for (id, spec) in model_family() {
        let m = assemble(&spec).expect("family config assembles");
        let rows = verify_thm2(&m, 8, 1024).expect("family spectra");
        for row in &rows {
            family.push((row.ratio, 3.0, row.log_thin_volume.max(0.1)));
            max_ratio = max_ratio.max(row.ratio);
        }
        if rows.is_empty() {
            out.notes.push(format!("{id}: no admissible thick eigenvalues (valid)"));
        }
    }
    out.check(!family.is_empty(), || {
        "family produced no admissible ratios".to_string()
    });
    let fit = fit_constant(&family);
    out.cases += family.len();
    out.fitted.insert("q4".into(), fit.fitted);
    out.fitted.insert("q4_stability".into(), fit.stability);
    out.notes.push(format!("max ratio {max_ratio:.4} over {} rows", family.len()));
    out.check(fit.stability < 10.0, || {
        format!("q4 stability {} >= 10", fit.stability)
    });
    for (i, &(ratio, offset, scale)) in family.iter().enumerate() {
        out.check(ratio <= offset + fit.fitted * scale + 1e-12, || {
            format!("row {i}: ratio {ratio} above fitted envelope")
        });
    }
    out
}

/// 10. Boundary-band control of thick eigenfunctions on width-96 collars.
pub fn criterion10_collar_band() -> CriterionOutcome {
    let mut out = CriterionOutcome::new(10, "thick eigenfunction boundary-band mass");
    let wide: Vec<(String, ModelSpec)> = model_family()
        .into_iter()
        .filter(|(id, _)| id.contains("w96"))
        .collect();
    assert_eq!(wide.len(), 10);
    for (id, spec) in wide {
        let m = assemble(&spec).expect("family config assembles");
        let disc = discretize(&m, 1024).expect("grid");
        for k in 1..=3 {
            let (lambda, u) = thick_eigenfunction(&disc, k).expect("thick eigenfunction");
            let case = cor35_check(&m, &u, &disc, 32.0, &format!("{id}-k{k}")).expect("width 96");
            if case.hypothesis_ok {
                out.check(case.margin >= -1e-8, || {
                    format!("{}: lambda {:.4e} margin {:e}", case.id, lambda, case.margin)
                });
            } else {
                out.inapplicable += 1;
            }
        }
    }
    out.check(out.cases > 0, || "no admissible thick eigenfunctions".to_string());
    out
}

/// 11. Determinism: running the suite twice with the same seed produces
///     byte-identical serialized reports.
pub fn criterion11_determinism(seed: u64) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(11, "byte-identical reruns");
    // a representative fast slice of the suite: seeded margins and fits
    let run = |seed: u64| -> Vec<u8> {
        let mut chunks: Vec<u8> = Vec::new();
        let o3 = criterion3_jacobi(seed);
        chunks.extend(serde_json::to_vec(&o3).unwrap());
        let o5 = criterion5_extension(seed);
        chunks.extend(serde_json::to_vec(&o5).unwrap());
        let o7 = criterion7_conditional_inequalities(seed);
        chunks.extend(serde_json::to_vec(&o7).unwrap());
        chunks
    };
    let a = run(seed);
    let b = run(seed);
    out.check(a == b, || "serialized reports differ between reruns".to_string());
    out
}

/// Run the full suite.
pub fn run_suite(seed: u64) -> SuiteReport {
    let outcomes = vec![
        criterion1_graph_identities(seed),
        criterion2_flat_torus(),
        criterion3_jacobi(seed),
        criterion4_shooting_equivalence(),
        criterion5_extension(seed),
        criterion6_tube_lambda1(),
        criterion7_conditional_inequalities(seed),
        criterion8_thm1_margins(),
        criterion9_thm2_ratios(),
        criterion10_collar_band(),
        criterion11_determinism(seed),
    ];
    SuiteReport { seed, outcomes }
}
