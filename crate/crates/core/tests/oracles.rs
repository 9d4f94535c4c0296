mod common;

use common::{oracle_families, oracle_mismatch, parse};
use polygen::closedform::{kpoly, KPart};
use polygen::genfun::{build, dickson_d_printed, FamilyId};
use polygen::{MultiPoly, Rational};

fn check_group(names: &[&str]) {
    let fams: Vec<_> = oracle_families(2).into_iter().filter(|f| names.contains(&f.name())).collect();
    assert!(!fams.is_empty());
    let failures: Vec<String> = fams.iter().filter_map(|f| oracle_mismatch(f, 8)).collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn elementary_families_match_their_generating_functions() {
    check_group(&["cos-c", "sin-s", "chebyshev-t", "chebyshev-u", "nw", "nw-conj", "dickson-d", "dickson-e", "gould-hopper"]);
}

#[test]
fn tuple_families_match_their_generating_functions() {
    check_group(&["hermite-gen", "k1-kernel", "k2-kernel", "g-kernel", "m4", "m5"]);
}

#[test]
fn apostol_families_match_their_generating_functions() {
    check_group(&["apostol-bernoulli", "apostol-euler", "bc", "bs", "ec", "es", "r1"]);
}

#[test]
fn kernel_convolutions_match_their_generating_functions() {
    check_group(&["m1", "m2", "m3", "bform", "b1form"]);
}

#[test]
fn listed_k_values() {
    let k = |n, r| kpoly(KPart::K, n, r).unwrap().into_complex();
    assert_eq!(k(1, 2), parse("x + u1 + i*y"));
    assert_eq!(k(2, 3), parse("(x+u1)^2 + 2u2 - y^2 + 2i*y(x+u1)"));
}

#[test]
fn variant_dickson_gf_disagrees_with_classical_form() {
    let one = Rational::from_integer(1.into());
    let printed = dickson_d_printed(&one, 6).unwrap();
    let classical = build(&FamilyId::DicksonD { alpha: one }, 6).unwrap().into_real().unwrap();
    assert_eq!(printed.coeff(0), &MultiPoly::one());
    assert_eq!(classical.coeff(0), &MultiPoly::from_int(2));
    assert_eq!(classical.coeff(1), &MultiPoly::var(polygen::Var::X));
    assert_eq!(printed.coeff(1), &MultiPoly::var(polygen::Var::X).scale(&Rational::from_integer((-1).into())));
}
