//! Acceptance suite: each criterion runs at full scale, prints one
//! PASS/FAIL line (visible with `--nocapture`), and fails the build on any
//! inexactness.

use wbr_core::selftest;

fn check(number: usize) {
    let outcome = selftest::run(number, false);
    println!("{outcome}");
    assert!(outcome.passed, "{outcome}");
}

#[test]
fn criterion_01_worked_example_determinant() {
    check(1);
}

#[test]
fn criterion_02_route_equivalence() {
    check(2);
}

#[test]
fn criterion_03_base_ring_membership() {
    check(3);
}

#[test]
fn criterion_04_residue_identity() {
    check(4);
}

#[test]
fn criterion_05_principal_specialization() {
    check(5);
}

#[test]
fn criterion_06_dimension_identities() {
    check(6);
}

#[test]
fn criterion_07_central_scalar_independence() {
    check(7);
}

#[test]
fn criterion_08_quadratic_relation() {
    check(8);
}

#[test]
fn criterion_09_neighbor_norm_relation() {
    check(9);
}

#[test]
fn criterion_10_vanishing_crosscheck_grid() {
    check(10);
}

#[test]
fn criterion_11_rectangle_coefficient() {
    check(11);
}
