use std::collections::BTreeMap;

use rug::Rational;

use super::*;
use crate::exact::rat;
use crate::ratfunc::rf;

fn sum(terms: &[(i64, &str)]) -> FormalSum {
    FormalSum::from_terms(terms.iter().map(|(c, a)| (Rational::from(*c), rf(a))))
}

fn g_generators() -> Vec<Automorphism> {
    vec![
        Automorphism::parse(&[
            ("a1", "a1"),
            ("a2", "a2"),
            ("a3", "-(1 - a1 + a1*a3)/(a1*(1 - a3 + a3*a2))"),
        ])
        .unwrap(),
        Automorphism::parse(&[("a1", "1/a1"), ("a2", "1/a3"), ("a3", "1/a2")]).unwrap(),
        Automorphism::parse(&[("a1", "a2"), ("a2", "a3"), ("a3", "a1")]).unwrap(),
    ]
}

fn gprime_generators() -> Vec<Automorphism> {
    vec![
        Automorphism::parse(&[
            ("y1", "1/y1"),
            ("y2", "z2"),
            ("y3", "z3"),
            ("z1", "z1"),
            ("z2", "y2"),
            ("z3", "y3"),
        ])
        .unwrap(),
        Automorphism::parse(&[
            ("y1", "y2"),
            ("y2", "y3"),
            ("y3", "y1"),
            ("z1", "z2"),
            ("z2", "z3"),
            ("z3", "z1"),
        ])
        .unwrap(),
    ]
}

#[test]
fn sum_operations() {
    assert!(sum(&[(1, "x")]).add(&sum(&[(-1, "x")])).is_empty());
    assert_eq!(sum(&[(1, "x"), (1, "y")]).scale(&rat(2, 1)), sum(&[(2, "x"), (2, "y")]));
    let merged = sum(&[(1, "x/(1 - x)"), (2, "(x^2)/(x - x^2)")]);
    assert_eq!(merged.len(), 1);
    assert_eq!(merged.coefficient_of(&rf("x/(1-x)")), rat(3, 1));
    let shift = Automorphism::parse(&[("t1", "t2"), ("t2", "t3"), ("t3", "t1")]).unwrap();
    assert_eq!(sum(&[(1, "t1")]).map_arguments(&shift).unwrap(), sum(&[(1, "t2")]));
    assert_eq!(sum(&[(2, "x"), (-1, "y")]).to_string(), "2[x] - [y]");
}

#[test]
fn cancelled_slot_is_reused() {
    let mut s = sum(&[(1, "x"), (-1, "x")]);
    assert!(s.is_empty());
    s.add_term(rat(5, 1), rf("x"));
    assert_eq!(s.len(), 1);
    assert_eq!(s.coefficient_of(&rf("x")), rat(5, 1));
}

#[test]
fn json_round_trip() {
    let s = FormalSum::from_terms([(rat(-3, 2), rf("x/(1 - y)")), (rat(1, 1), rf("1"))]);
    let text = s.to_json();
    assert_eq!(text, r#"[{"coeff":"-3/2","arg":"(-x)/(y - 1)"},{"coeff":"1","arg":"1"}]"#);
    assert_eq!(FormalSum::from_json(&text).unwrap(), s);
    assert!(FormalSum::from_json(r#"[{"coeff":"1/0","arg":"x"}]"#).is_err());
}

#[test]
fn specialization() {
    let five = sum(&[
        (1, "x"),
        (1, "y"),
        (1, "(1 - x)/(1 - x*y)"),
        (1, "1 - x*y"),
        (1, "(1 - y)/(1 - x*y)"),
    ]);
    let at: BTreeMap<String, Rational> = [("x".into(), rat(1, 2)), ("y".into(), rat(1, 3))].into();
    match five.specialize(&at, false).unwrap() {
        Specialization::Constants { sum, dropped } => {
            assert!(dropped.is_empty());
            assert_eq!(sum.len(), 5);
            assert_eq!(sum.coefficient_of(&rf("3/5")), rat(1, 1));
            assert_eq!(sum.coefficient_of(&rf("5/6")), rat(1, 1));
            assert_eq!(sum.coefficient_of(&rf("4/5")), rat(1, 1));
        }
        other => panic!("{other:?}"),
    }
    let at1: BTreeMap<String, Rational> = [("x".into(), rat(1, 1))].into();
    match sum(&[(1, "1/(1 - x)")]).specialize(&at1, false).unwrap() {
        Specialization::Degenerate(d) => assert_eq!(d[0].kind, Degeneracy::Pole),
        other => panic!("{other:?}"),
    }
    match sum(&[(1, "1/(1 - x)"), (-3, "1"), (2, "x + 1")]).specialize(&at1, true).unwrap() {
        Specialization::Constants { sum, dropped } => {
            assert_eq!(dropped.len(), 1);
            assert_eq!(sum.len(), 2);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn inversion_classes() {
    assert_eq!(sum(&[(1, "x"), (1, "1/x")]).count_distinct_up_to_inversion(), 1);
    assert_eq!(sum(&[(1, "x"), (1, "-x"), (3, "1"), (1, "(x-1)/(x-1)")]).count_distinct_up_to_inversion(), 2);
    let folded = sum(&[(1, "x"), (1, "1/x")]).fold_inversions(2);
    assert!(folded.is_empty());
    let folded = sum(&[(1, "x"), (1, "1/x")]).fold_inversions(3);
    assert_eq!(folded, sum(&[(2, "x")]));
}

#[test]
fn closure_of_identity_and_bound() {
    let id = Automorphism::identity(&["x"]);
    assert_eq!(group_closure(&[id], 10).unwrap().len(), 1);
    let g = g_generators();
    assert!(matches!(group_closure(&g, 100), Err(crate::Error::ClosureBound(100))));
}

#[test]
fn goncharov_symmetry_group_has_order_192() {
    let group = group_closure(&g_generators(), DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(group.len(), 192);
    assert!(group[0].is_identity());
}

#[test]
fn gprime_group_and_orbits() {
    let group = group_closure(&gprime_generators(), DEFAULT_CLOSURE_BOUND).unwrap();
    assert_eq!(group.len(), 96);
    let y1 = rf("y1");
    let triple = rf("(y1 - z3)/(1 - y1*z2)*(y2 - z1)/(1 - y2*z3)*(y3 - z2)/(1 - y3*z1)");
    assert_eq!(orbit(&y1, &group, false).unwrap().len(), 12);
    assert_eq!(orbit(&triple, &group, false).unwrap().len(), 32);
    assert_eq!(orbit(&y1, &group, true).unwrap().len(), 6);
    // Inversion only identifies triple-product images after y = A, z = B.
    assert_eq!(orbit(&triple, &group, true).unwrap().len(), 32);
    assert_eq!(orbit(&rf("1"), &group, false).unwrap().len(), 1);
}

#[test]
fn closure_is_a_group() {
    let group = group_closure(&gprime_generators(), DEFAULT_CLOSURE_BOUND).unwrap();
    let sample: Vec<&Automorphism> = group.iter().step_by(7).collect();
    for a in &sample {
        for b in &sample {
            let ab = a.compose(b).unwrap();
            assert!(group.iter().any(|g| g.equivalent(&ab)));
        }
        assert!(group.iter().any(|g| g.compose(a).unwrap().is_identity()));
    }
}

#[test]
fn composition_acts_in_order() {
    let sigma = Automorphism::parse(&[("x", "x + y"), ("y", "y")]).unwrap();
    let tau = Automorphism::parse(&[("x", "x*y"), ("y", "2*y")]).unwrap();
    let s = sum(&[(1, "x - y"), (2, "x/y")]);
    let left = s.map_arguments(&sigma.compose(&tau).unwrap()).unwrap();
    let right = s.map_arguments(&tau).unwrap().map_arguments(&sigma).unwrap();
    assert_eq!(left, right);
}
