mod common;

use surgery::catalog::{self, Construction};

fn check(c: Construction, seed: u64) {
    let failures = common::reidemeister_invariance(&c, 20, 4, seed);
    assert!(failures.is_empty(), "{:#?}", failures);
}

#[test]
fn trefoil() {
    check(catalog::trefoil(2).unwrap(), 1);
}

#[test]
fn torsion_knots() {
    check(catalog::torsion_knot(&[1], 3).unwrap(), 2);
    check(catalog::torsion_knot(&[-2], 4).unwrap(), 3);
}

#[test]
fn hopf_knots() {
    check(catalog::hopf_sum(1).unwrap(), 4);
    check(catalog::hopf_sum(2).unwrap(), 5);
}

#[test]
fn free_sum() {
    check(catalog::free_sum(&[2]).unwrap(), 6);
}
