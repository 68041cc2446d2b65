//! Acceptance suite: one test per verification criterion, in fixed order.
//!
//! Each test runs the corresponding named check from the library's
//! verification registry at its default tolerance, prints the evidence
//! lines, and asserts a pass. The harness output therefore carries one
//! pass/fail line per criterion (`criterion_NN_…`), and a failing
//! criterion's evidence is printed rather than hidden.

use hypeisen::checks::{run_check, CheckOutcome, CheckStatus};

fn run(name: &str) -> CheckOutcome {
    let outcome = run_check(name, None).expect("check is registered and tolerance is default");
    println!("check {}: {:?} (tolerance {:e})", outcome.name, outcome.status, outcome.tolerance);
    for line in &outcome.lines {
        println!("    {line}");
    }
    outcome
}

fn assert_passed(outcome: &CheckOutcome) {
    assert_eq!(
        outcome.status,
        CheckStatus::Passed,
        "check '{}' did not pass:\n{}",
        outcome.name,
        outcome.lines.join("\n")
    );
}

#[test]
fn criterion_01_special_function_identities() {
    assert_passed(&run("special-functions"));
}

#[test]
fn criterion_02_tail_decay_and_counting() {
    assert_passed(&run("tail-decay"));
}

#[test]
fn criterion_03_duality_against_geodesic_cycles() {
    assert_passed(&run("duality"));
}

#[test]
fn criterion_04_differential_functional_equations() {
    assert_passed(&run("functional-equations"));
}

#[test]
fn criterion_05_resolvent_boundary_limits() {
    assert_passed(&run("resolvent-limits"));
}

#[test]
fn criterion_06_infinite_geodesic_cusp_asymptotics() {
    assert_passed(&run("cusp-asymptotics"));
}

#[test]
fn criterion_07_degeneration_to_the_parabolic_family() {
    assert_passed(&run("degeneration"));
}

#[test]
fn criterion_08_collar_counting_and_exponent_windows() {
    assert_passed(&run("geometry-lemmas"));
}

#[test]
fn criterion_09_word_engine_exactness() {
    assert_passed(&run("word-engine"));
}

#[test]
fn criterion_10_threaded_determinism() {
    assert_passed(&run("determinism"));
}
