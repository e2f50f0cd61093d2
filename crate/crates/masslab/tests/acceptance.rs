//! Acceptance suite: one test per certified claim, each printing a
//! pass/fail line (run with `cargo test --test acceptance -- --nocapture`
//! to see them). The checks themselves live in `masslab::certify` and are
//! shared with the `masslab certify` command.

use masslab::certify::{self, CertifyContext, CheckResult};
use std::sync::LazyLock;

static CTX: LazyLock<CertifyContext> =
    LazyLock::new(|| CertifyContext::prepare(2024).expect("certification context"));

fn report(index: usize, check: CheckResult) {
    println!(
        "criterion {index:>2} [{}]: {}",
        check.key,
        if check.passed { "PASS" } else { "FAIL" }
    );
    for line in &check.details {
        println!("    {line}");
    }
    assert!(check.passed, "criterion {index} ({}) failed", check.key);
}

#[test]
fn criterion_01_ground_state_identities() {
    report(1, certify::check_ground_state_identities(&CTX));
}

#[test]
fn criterion_02_line_closed_form() {
    report(2, certify::check_line_closed_form(&CTX));
}

#[test]
fn criterion_03_cross_solver_threshold() {
    report(3, certify::check_cross_solver(&CTX));
}

#[test]
fn criterion_04_sharp_interpolation_constant() {
    report(4, certify::check_sharp_constant(&CTX));
}

#[test]
fn criterion_05_coulomb_solver() {
    report(5, certify::check_coulomb_solver(&CTX));
}

#[test]
fn criterion_06_sp_threshold_map() {
    report(6, certify::check_sp_threshold_map(&CTX));
}

#[test]
fn criterion_07_confined_threshold_map() {
    report(7, certify::check_confined_threshold_map(&CTX));
}

#[test]
fn criterion_08_confined_mass_curve() {
    report(8, certify::check_confined_mass_curve(&CTX));
}

#[test]
fn criterion_09_free_threshold_map() {
    report(9, certify::check_free_threshold_map(&CTX));
}

#[test]
fn criterion_10_decaying_existence() {
    report(10, certify::check_decaying_existence(&CTX));
}

#[test]
fn criterion_11_gradient_oracle() {
    report(11, certify::check_gradient_oracle(&CTX));
}

#[test]
fn criterion_12_determinism() {
    report(12, certify::check_determinism(&CTX));
}
