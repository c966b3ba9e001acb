//! Shared verdict and margin-report plumbing.
//!
//! Conditional inequalities get a first-class "inapplicable" verdict when
//! their hypotheses fail: a vacuous case is never counted as evidence, and
//! never counted as a failure either.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

/// One margin check: the inequality holds when `margin >= -tolerance`,
/// provided the hypothesis held at all.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MarginCase {
    pub id: String,
    pub hypothesis_ok: bool,
    pub margin: f64,
    pub tolerance: f64,
}

impl MarginCase {
    pub fn verdict(&self) -> Verdict {
        if !self.hypothesis_ok {
            Verdict::Inapplicable
        } else if self.margin >= -self.tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Tallied verdicts of a margin table.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
}

pub fn tally(cases: &[MarginCase]) -> VerdictCounts {
    let mut counts = VerdictCounts::default();
    for c in cases {
        match c.verdict() {
            Verdict::Pass => counts.pass += 1,
            Verdict::Fail => counts.fail += 1,
            Verdict::Inapplicable => counts.inapplicable += 1,
        }
    }
    counts
}

/// CSV margins table: header `case_id,hypothesis_ok,margin,tolerance`,
/// LF line endings, '.' decimal separator.
pub fn write_margins_csv<W: std::io::Write>(
    cases: &[MarginCase],
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "case_id,hypothesis_ok,margin,tolerance")?;
    for c in cases {
        writeln!(
            out,
            "{},{},{},{}",
            c.id, c.hypothesis_ok, c.margin, c.tolerance
        )?;
    }
    Ok(())
}

/// Fit of a one-parameter bound `statistic <= offset + q * scale` over a
/// family: the minimal `q` making every member pass, with a stability
/// statistic (max/min ratio of the per-member minimal constants).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FittedConstant {
    pub fitted: f64,
    /// per-member minimal constants
    pub per_case: Vec<f64>,
    /// max/min over positive per-member constants; 1.0 when the bound is
    /// slack for every member (all constants zero)
    pub stability: f64,
}

/// Fit the minimal constant for a family of (statistic, offset, scale)
/// triples, i.e. the smallest q with `stat_i <= offset_i + q * scale_i`
/// for every i. Scales must be positive.
pub fn fit_constant(family: &[(f64, f64, f64)]) -> FittedConstant {
    assert!(!family.is_empty(), "cannot fit over an empty family");
    let per_case: Vec<f64> = family
        .iter()
        .map(|&(stat, offset, scale)| {
            assert!(scale > 0.0, "bound scale must be positive");
            ((stat - offset) / scale).max(0.0)
        })
        .collect();
    let fitted = per_case.iter().cloned().fold(0.0f64, f64::max);
    let positive: Vec<f64> = per_case.iter().cloned().filter(|&c| c > 0.0).collect();
    let stability = if positive.is_empty() {
        1.0
    } else {
        let max = positive.iter().cloned().fold(0.0f64, f64::max);
        let min = positive.iter().cloned().fold(f64::INFINITY, f64::min);
        max / min
    };
    FittedConstant {
        fitted,
        per_case,
        stability,
    }
}
