//! Acceptance criteria, one test each. Every test writes a PASS/FAIL line to
//! stderr directly so the line shows up even when output capture is on.

use std::io::Write;

use ghz_teleport::protocol::correction_for;
use ghz_teleport::verify::{CriterionOutcome, Verifier, CRITERIA};
use ghz_teleport::{LinearOperator, Outcome};

fn report(o: &CriterionOutcome) {
    let line = format!(
        "acceptance {:>2} {:<24} {} max_dev={:.3e} {}\n",
        o.id,
        o.name,
        if o.passed { "PASS" } else { "FAIL" },
        o.max_dev,
        o.detail
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn check(id: u8) {
    let o = Verifier::new().criterion(id).expect("criterion runs");
    assert_eq!(o.name, CRITERIA[id as usize - 1].1);
    report(&o);
    assert!(o.passed, "criterion {id} ({}) failed: {}", o.name, o.detail);
}

#[test]
fn c01_basis_orthonormality() {
    check(1);
}

#[test]
fn c02_ideal_teleportation_is_perfect() {
    check(2);
}

#[test]
fn c03_per_input_closed_forms() {
    check(3);
}

#[test]
fn c04_noiseless_average_fidelities() {
    check(4);
}

#[test]
fn c05_five_degree_systematic_error_values() {
    check(5);
}

#[test]
fn c06_fidelity_gap_maximum() {
    check(6);
}

#[test]
fn c07_ghz2_outcome_structure() {
    check(7);
}

#[test]
fn c08_linear_noise_slopes() {
    check(8);
}

#[test]
fn c09_qubit6_bit_flip_immunity() {
    check(9);
}

#[test]
fn c10_noisy_closed_forms() {
    check(10);
}

#[test]
fn c11_bit_flip_gap_optimum() {
    check(11);
}

#[test]
fn c12_determinism() {
    check(12);
}

// Drops the bit-flip correction on qubit 9 for every outcome that needs one.
fn broken_corrections(o: &Outcome) -> LinearOperator {
    let u = correction_for(o);
    let x9 = LinearOperator::identity(2).kron(&LinearOperator::pauli_x());
    if o.tau == 1 {
        x9.compose(&u)
    } else {
        u
    }
}

#[test]
fn perturbed_corrections_are_caught() {
    let o = Verifier::with_corrections(broken_corrections).criterion(2).unwrap();
    assert!(!o.passed, "{}", o.detail);
    assert!(o.max_dev > 1e-3);
}
