//! The acceptance suite: one test per numbered criterion. Each prints its
//! pass/fail line (visible with `--nocapture`, or in the failure output) and
//! asserts the outcome. The same checks back the `selftest` subcommand.

use johnsonlab::selftest::{run_criterion, DEFAULT_SEED};

fn check(index: usize) {
    let report = run_criterion(index, DEFAULT_SEED);
    println!("{report}");
    assert!(report.passed, "{report}");
}

#[test]
fn criterion_01_fox_magnus_bridge() {
    check(1);
}

#[test]
fn criterion_02_power_signatures() {
    check(2);
}

#[test]
fn criterion_03_series_cofinality() {
    check(3);
}

#[test]
fn criterion_04_perron_vs_zassenhaus() {
    check(4);
}

#[test]
fn criterion_05_tau1z_image() {
    check(5);
}

#[test]
fn criterion_06_tau1s_structure() {
    check(6);
}

#[test]
fn criterion_07_homomorphy_and_kernel() {
    check(7);
}

#[test]
fn criterion_08_johnson_range() {
    check(8);
}

#[test]
fn criterion_09_heegaard_reduction() {
    check(9);
}

#[test]
fn criterion_10_catalog_integrity() {
    check(10);
}
