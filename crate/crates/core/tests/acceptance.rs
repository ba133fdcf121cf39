//! The ten acceptance criteria, one pass/fail line each. Tolerances are the
//! constants in `bendix::acceptance`.

use bendix::acceptance::{run, CriterionResult};

fn check(id: usize) {
    let r: CriterionResult = run(id);
    println!("{r}");
    assert!(r.passed, "{r}");
}

#[test]
fn criterion_01_flow_exactness() {
    check(1);
}

#[test]
fn criterion_02_involutivity() {
    check(2);
}

#[test]
fn criterion_03_action_angle() {
    check(3);
}

#[test]
fn criterion_04_reconstruction() {
    check(4);
}

#[test]
fn criterion_05_multiplicities() {
    check(5);
}

#[test]
fn criterion_06_dimensions() {
    check(6);
}

#[test]
fn criterion_07_duality() {
    check(7);
}

#[test]
fn criterion_08_hitchin() {
    check(8);
}

#[test]
fn criterion_09_necessity_sufficiency() {
    check(9);
}

#[test]
fn criterion_10_semistability() {
    check(10);
}
