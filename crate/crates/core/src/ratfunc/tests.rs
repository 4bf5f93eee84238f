use std::collections::BTreeMap;

use super::*;
use crate::exact::rat;
use crate::Error;

fn bind(pairs: &[(&str, &str)]) -> BTreeMap<String, RatFunc> {
    pairs.iter().map(|(v, e)| (v.to_string(), rf(e))).collect()
}

fn f1() -> RatFunc {
    rf("-z/(1 - z + z^2)")
}
fn f2() -> RatFunc {
    rf("(z - 1)/(1 - z + z^2)")
}
fn f3() -> RatFunc {
    rf("z*(1 - z)/(1 - z + z^2)")
}
fn f() -> RatFunc {
    rf("-z^2*(1 - z)^2/(1 - z + z^2)^3")
}

#[test]
fn arithmetic_basics() {
    assert_eq!(&rf("x/y") * &rf("y/x"), RatFunc::one());
    assert_eq!(f2().inv().unwrap(), rf("(1 - z + z^2)/(z - 1)"));
    assert_eq!(&(&f1() * &f2()) * &f3(), f().neg());
    assert!(matches!(RatFunc::zero().inv(), Err(Error::DivisionByZero)));
}

#[test]
fn composition() {
    let g = rf("z^2").substitute(&bind(&[("z", "1/z")])).unwrap();
    assert_eq!(g, rf("1/z^2"));
    assert!(f().substitute(&bind(&[("z", "1 - z")])).unwrap().equivalent(&f()));
    assert!(f().substitute(&bind(&[("z", "1/z")])).unwrap().equivalent(&f()));
    let two = bind(&[("x", "y"), ("y", "x")]);
    assert_eq!(rf("x - 2*y").substitute(&two).unwrap(), rf("y - 2*x"));
    let bad = rf("1/(x - y)").substitute(&bind(&[("x", "y")]));
    assert!(matches!(bad, Err(Error::DivisionByZero)));
}

#[test]
fn evaluation() {
    let at = |v: i64| BTreeMap::from([("z".to_string(), rat(v, 1))]);
    assert_eq!(f3().eval_rational(&at(2)).unwrap(), Evaluation::Value(rat(-2, 3)));
    assert_eq!(rf("1/(z - 1)").eval_rational(&at(1)).unwrap(), Evaluation::Pole);
    assert_eq!(rf("(z - 1)/(z - 1)").eval_rational(&at(1)).unwrap(), Evaluation::Indeterminate);
    assert!(rf("x").eval_rational(&at(1)).is_err());
}

#[test]
fn equivalence_and_inversion() {
    assert!(rf("(x^2 - 1)/(x - 1)").equivalent(&rf("x + 1")));
    assert!(!rf("x").equivalent(&rf("y")));
    assert!(rf("x/(1 - x)").equivalent_up_to_inversion(&rf("(1 - x)/x")));
    assert!(!rf("x").equivalent_up_to_inversion(&rf("-x")));
    assert_eq!(rf("x/(1 - x)").inversion_key(), rf("(1 - x)/x").inversion_key());
    assert_ne!(rf("x").fingerprint(), rf("x + 1").fingerprint());
}

#[test]
fn cross_ratio_with_infinity() {
    let p = |s: &str| ProjectiveValue::Finite(rf(s));
    let inf = ProjectiveValue::Infinity;
    let u = cross_ratio(&p("0"), &inf, &p("1"), &p("u")).unwrap();
    assert_eq!(u, p("1/u"));
    let v = cross_ratio(&p("t"), &p("0"), &p("1/c"), &p("a")).unwrap();
    assert_eq!(v, p("(t*c - 1)*a/(t - a)"));
    assert!(cross_ratio(&p("x"), &p("x"), &p("x"), &p("y")).is_err());
    assert_eq!(cross_ratio(&p("0"), &p("1"), &p("1"), &p("0")).unwrap(), inf);
}

#[test]
fn reduce_and_derivative() {
    let g = rf("(x^2 - y^2)/(x^2 + 2*x*y + y^2)").reduce();
    assert_eq!(g.num().to_string(), "x - y");
    assert_eq!(g.den().to_string(), "x + y");
    assert!(rf("(x*t + x)/(t + 1)").is_free_of("t"));
    assert!(!rf("x*t").is_free_of("t"));
    assert_eq!(rf("1/x").derivative("x"), rf("-1/x^2"));
}

#[test]
fn parse_errors() {
    match parse("x + * y") {
        Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
        other => panic!("{other:?}"),
    }
    assert!(parse("x^65").is_err());
    assert!(parse_with_limit("x^65", 100).is_ok());
    assert!(parse("(x").is_err());
    assert!(parse("x/0").is_err());
    assert!(parse("x $ y").is_err());
}

#[test]
fn printing_round_trips() {
    for s in ["3/2*x^2*y", "x - 3/2*y", "(x + 1)/(x - 1)", "-z/(z^2 - z + 1)", "2/x", "1/(2*x)"] {
        let f = rf(s);
        let back = rf(&f.to_string());
        assert!(back.equivalent(&f), "{s} -> {f}");
        assert_eq!(back.to_string(), f.to_string());
    }
    assert_eq!(rf("3/2*x^2*y").to_string(), "3/2*x^2*y");
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_poly() -> impl Strategy<Value = RatFunc> {
        prop::collection::vec((-5i64..=5, 0u32..3, 0u32..3), 1..4).prop_map(|ts| {
            let mut acc = RatFunc::zero();
            for (c, a, b) in ts {
                acc = &acc + &rf(&format!("{c}*x^{a}*y^{b}"));
            }
            acc
        })
    }

    fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
        (small_poly(), small_poly()).prop_filter_map("nonzero denominator", |(n, d)| n.div(&d).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in small_ratfunc(), b in small_ratfunc(), c in small_ratfunc()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a - &a, RatFunc::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), RatFunc::one());
            }
        }

        #[test]
        fn print_parse_identity(a in small_ratfunc()) {
            let back = rf(&a.to_string());
            prop_assert!(back.equivalent(&a));
        }

        #[test]
        fn substitution_is_homomorphic(a in small_ratfunc(), b in small_ratfunc()) {
            let s = bind(&[("x", "y + 1"), ("y", "x*y")]);
            if let (Ok(sa), Ok(sb), Ok(sab)) = (a.substitute(&s), b.substitute(&s), (&a * &b).substitute(&s)) {
                prop_assert_eq!(sab, &sa * &sb);
            }
        }

        #[test]
        fn reduce_preserves_value(a in small_ratfunc()) {
            prop_assert!(a.reduce().equivalent(&a));
        }
    }
}
