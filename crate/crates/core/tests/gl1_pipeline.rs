use std::sync::Arc;
use std::time::Instant;

use gammaspec::dkspec::FinCommRing;
use gammaspec::gammaunits::{gl1_pipeline, Gl1Config};
use gammaspec::linalg::AbGroup;

fn run(ring: &str, expected: AbGroup) {
    let start = Instant::now();
    let r = gl1_pipeline(Arc::new(FinCommRing::parse(ring).unwrap()), Gl1Config::default()).unwrap();
    eprintln!("{ring}: {:?}", start.elapsed());
    assert_eq!(r.unit_group, expected);
    assert_eq!(r.gamma_completion, expected, "{ring}");
    assert!(r.passed(), "{ring}: {r:#?}");
}

#[test]
fn f5_units() {
    run("F5", AbGroup::cyclic(4));
}

#[test]
fn z2_units() {
    run("Z/2", AbGroup::zero());
}

#[test]
fn z4_units() {
    run("Z/4", AbGroup::cyclic(2));
}

#[test]
fn z6_units() {
    run("Z/6", AbGroup::cyclic(2));
}

#[test]
fn dual_numbers_units() {
    run("F2[x]/x^2", AbGroup::cyclic(2));
}
