//! Acceptance suite: every certified criterion at its pinned tolerance, one
//! pass/fail line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use tubespec::verify;

const SEED: u64 = 0x7E57_5EED;

fn assert_outcome(outcome: verify::CriterionOutcome) {
    println!("{}", outcome.summary_line());
    for note in &outcome.notes {
        println!("    {note}");
    }
    assert!(
        outcome.passed,
        "criterion {} failed: {} failures out of {} cases\n{}",
        outcome.number,
        outcome.failures,
        outcome.cases,
        outcome.notes.join("\n")
    );
}

#[test]
fn criterion_01_graph_identities() {
    assert_outcome(verify::criterion1_graph_identities(SEED));
}

#[test]
fn criterion_02_flat_torus() {
    assert_outcome(verify::criterion2_flat_torus());
}

#[test]
fn criterion_03_jacobi_comparison() {
    assert_outcome(verify::criterion3_jacobi(SEED));
}

#[test]
fn criterion_04_shooting_oracle_equivalence() {
    assert_outcome(verify::criterion4_shooting_equivalence());
}

#[test]
fn criterion_05_extension_operator() {
    assert_outcome(verify::criterion5_extension(SEED));
}

#[test]
fn criterion_06_tube_lambda1_bound() {
    assert_outcome(verify::criterion6_tube_lambda1());
}

#[test]
fn criterion_07_conditional_inequalities() {
    assert_outcome(verify::criterion7_conditional_inequalities(SEED));
}

#[test]
fn criterion_08_lower_bound_margins() {
    assert_outcome(verify::criterion8_thm1_margins());
}

#[test]
fn criterion_09_upper_bound_ratios() {
    assert_outcome(verify::criterion9_thm2_ratios());
}

#[test]
fn criterion_10_collar_band_mass() {
    assert_outcome(verify::criterion10_collar_band());
}

#[test]
fn criterion_11_determinism() {
    assert_outcome(verify::criterion11_determinism(SEED));
}
