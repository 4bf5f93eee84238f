use rug::Rational;

use super::*;
use crate::exact::rat;
use crate::numeric::{ClArg, PrecisionPolicy};
use crate::ratfunc::{rf, RatFunc};

#[test]
fn builder_class_counts() {
    assert_eq!(five_term("x", "y").class_count(), 5);
    assert_eq!(goncharov22("a1", "a2", "a3").class_count(), 22);
    assert_eq!(goncharov22_sym("t1", "t2", "t3").class_count(), 22);
    assert_eq!(f17("a", "b", "c", "t").sum.len(), 17);
    assert_eq!(relation34("a", "b", "c", "t", "u").sum.len(), 34);
    assert_eq!(three_term("x").class_count(), 3);
}

#[test]
fn registry_builds_and_validates() {
    for name in NAMES {
        let eq = build(name).unwrap();
        eq.validate().unwrap();
        assert_eq!(&eq.name, name);
    }
    assert_eq!(build("five_term").unwrap().name, "five-term");
    assert!(build("fourlog-n6").is_ok());
    assert!(build("fourlog-n7").is_err());
    assert!(matches!(build("nope"), Err(crate::Error::Unknown { .. })));
}

#[test]
fn json_round_trip() {
    let eq = goncharov22("a1", "a2", "a3");
    let back = EquationSpec::from_json(&eq.to_json()).unwrap();
    assert_eq!(back.sum, eq.sum);
    assert_eq!(back.variables, eq.variables);
    let four = fourlog(3);
    let back = EquationSpec::from_json(&four.to_json()).unwrap();
    assert_eq!(back.binding, Some(RootBinding { n: 3 }));
}

#[test]
fn theta_omega_weight_examples() {
    assert_eq!(theta([1, -1, 0]), [1, 1, -2]);
    assert_eq!(theta([-1, -2, 3]), [-1, -1, -1]);
    assert_eq!(omega([-1, -1, 4]).unwrap(), rat(-1, 5));
    assert!(omega([-1, -1, -1]).is_err());
    assert_eq!(weight_wt(1, 0), 2);
    assert_eq!(weight_wt(-2, 3), 2);
    assert_eq!(weight_wt(0, 1), 1);
}

#[test]
fn a_k_sets_match_listed() {
    let s = a_k_sets();
    let mut a1 = s.a1.clone();
    a1.sort();
    let mut want = vec![[1, 1, -2], [-1, -1, 2], [-1, -1, 1], [1, 1, -1], [0, 0, 1], [0, 0, -1]];
    want.sort();
    assert_eq!(a1, want);
    assert_eq!(s.delta, [-1, -1, -1]);
}

#[test]
fn structural_checks_pass() {
    for r in [
        check_group_orders().unwrap(),
        check_sym_matches_goncharov22().unwrap(),
        check_xi7_term_count().unwrap(),
        check_xi7_weights().unwrap(),
        check_xi7_multiplicities().unwrap(),
    ] {
        assert!(r.passed, "{}", r.to_json());
    }
}

#[test]
fn substitution_negative_control_fails() {
    // cr(t,0,1/c,b) in place of cr(t,0,1/c,a)
    let bad = rf("b*(c*t - 1)/(t - b)");
    let r = check_22_to_34_with([bad, rf("b*(c*t - 1)/(c*t - b*c)"), rf("(t - a)*b*c/(t - a*b*c)")]).unwrap();
    assert!(!r.passed);
}

#[test]
fn dilog_general_contains_five_term() {
    let policy = PrecisionPolicy::new(50).unwrap();
    let phi = rf("z*(1 - z)");
    let alpha = ClArg::Finite(crate::numeric::BigComplex::from_f64(0.3, 0.7, 60));
    let one = ClArg::Finite(crate::numeric::BigComplex::from_rational(&Rational::from(1), 60));
    let zero = ClArg::Finite(crate::numeric::BigComplex::zero(60));
    let v = verify_dilog_general(&phi, &alpha, &one, &zero, &ClArg::Infinity, 30, &policy).unwrap();
    assert!(v.passed, "{v:?}");
}

#[test]
fn five_term_numeric() {
    let policy = PrecisionPolicy::new(50).unwrap();
    let v = verify_numeric(&five_term("x", "y"), &NumericOptions::new(8, 7, 35), &policy).unwrap();
    assert!(v.passed, "{v:?}");
}

#[test]
fn preimages_of_a_quadratic() {
    let policy = PrecisionPolicy::new(40).unwrap();
    let pre = preimages(&rf("z^2"), &ClArg::Infinity, &policy).unwrap();
    assert_eq!(pre, vec![ClArg::Infinity, ClArg::Infinity]);
    let pre = preimages(&rf("1/(z - 2)"), &ClArg::Finite(crate::numeric::BigComplex::zero(50)), &policy).unwrap();
    assert_eq!(pre, vec![ClArg::Infinity]);
}

#[test]
fn three_term_normal_form_is_sound() {
    let triple = three_term("x").sum;
    assert!(checks::three_term_normal_form(&triple).is_empty());
    // Adding any multiple of an instance of the relation does not change the
    // normal form.
    let base = five_term("x", "y").sum;
    let g = rf("x*y/(1 - y)");
    let instance = FormalSum::from_terms([
        (rat(1, 1), g.clone()),
        (rat(1, 1), g.one_minus().inv().unwrap()),
        (rat(1, 1), RatFunc::one().sub(&g.inv().unwrap())),
    ]);
    let shifted = base.add(&instance.scale(&rat(-3, 2)));
    let diff = checks::three_term_normal_form(&shifted).sub(&checks::three_term_normal_form(&base));
    assert!(diff.fold_inversions(3).is_empty());
    assert!(!checks::three_term_normal_form(&base).is_empty());
}

fn fact(r: &CheckReport, k: &str) -> serde_json::Value {
    r.facts.get(k).cloned().unwrap_or_else(|| panic!("missing fact {k} in {}", r.to_json()))
}

#[test]
fn orbit_and_correspondence_checks_pass() {
    for r in [check_orbit_sizes().unwrap(), check_gprime_correspondence().unwrap()] {
        assert!(r.passed, "{}", r.to_json());
    }
}

#[test]
fn relation34_checks_pass() {
    let w = check_34_from_wojtkowiak().unwrap();
    assert!(w.passed, "{}", w.to_json());
    assert_eq!(fact(&w, "overall_sign"), -1);
    let s = check_22_to_34_substitution().unwrap();
    assert!(s.passed, "{}", s.to_json());
}

#[test]
fn q_equations_third_family_is_reciprocal() {
    let r = check_q_equations().unwrap();
    assert!(!r.passed);
    for i in 1..=3 {
        assert_eq!(fact(&r, &format!("family1_i{i}")), true);
        assert_eq!(fact(&r, &format!("family2_i{i}")), true);
        assert_eq!(fact(&r, &format!("family3_i{i}")), false);
        assert_eq!(fact(&r, &format!("family3_reciprocal_i{i}")), true);
    }
    assert_eq!(fact(&r, "long_orbit_squares_match"), true);
    assert_eq!(fact(&r, "short_orbit_squares_match"), true);
}

#[test]
fn gamma21_right_side_is_not_a_relation() {
    let r = check_gamma21_identity(11).unwrap();
    assert!(!r.passed);
    assert_eq!(fact(&r, "rhs_classes"), 21);
    assert_eq!(fact(&r, "rhs_coefficients_in_pm1_pm2"), true);
    assert_eq!(fact(&r, "equality_level"), "none");
}

#[test]
fn xi7_symmetric_is_explicit_over_105() {
    let r = check_xi7_explicit_vs_symmetric().unwrap();
    assert!(!r.passed);
    assert_eq!(fact(&r, "repeated_entry_symmetric_over_explicit"), "1/105");
    assert_eq!(fact(&r, "sixty_explicit_equals_symmetric"), false);
}
