use proptest::prelude::*;
use rug::Rational;

use super::*;
use crate::exact::rat;
use crate::ratfunc::{rf, RatFunc};

fn consts(terms: &[(i64, Rational)]) -> FormalSum {
    FormalSum::from_terms(terms.iter().map(|(c, q)| (Rational::from(*c), RatFunc::constant(q.clone()))))
}

fn vec_of(pairs: &[(u64, i64)]) -> PrimeVector {
    PrimeVector::from_map(
        pairs
            .iter()
            .map(|&(p, e)| (Basis::Prime(Integer::from(p)), Rational::from(e)))
            .collect(),
    )
}

#[test]
fn log_vectors() {
    assert_eq!(log_vector(&rat(12, 1)).unwrap(), vec_of(&[(2, 2), (3, 1)]));
    assert_eq!(log_vector(&rat(-3, 2)).unwrap(), vec_of(&[(3, 1), (2, -1)]));
    assert!(log_vector(&rat(1, 1)).unwrap().is_zero());
    assert!(log_vector(&rat(0, 1)).is_err());
}

#[test]
fn pairing_examples() {
    let th = DualFunctional::random(7, 40);
    let ph = DualFunctional::random(8, 40);
    let ps = DualFunctional::random(9, 40);
    for m in 2..=7u32 {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        for x in [rat(2, 7), rat(-5, 3), rat(11, 4)] {
            let s = consts(&[(1, x.clone()), (sign, Rational::from(x.recip_ref()))]);
            assert_eq!(beta_pairing(&s, m, &th, &ph, &ps).unwrap(), 0, "inversion m={m}");
            let sq = Rational::from(x.square_ref());
            let k = 1i64 << (m - 1);
            let s = consts(&[(1, sq), (-k, x.clone()), (-k, Rational::from(-&x))]);
            assert_eq!(beta_pairing(&s, m, &th, &ph, &ps).unwrap(), 0, "distribution m={m}");
        }
    }
    let th = DualFunctional::on_primes(&[(2, 1)]);
    let ps = DualFunctional::on_primes(&[(3, 1)]);
    let v = beta_pairing(&consts(&[(1, rat(2, 5))]), 4, &th, &th, &ps).unwrap();
    assert_ne!(v, 0);
    assert!(beta_pairing(&consts(&[(1, rat(1, 1))]), 3, &th, &th, &ps).is_err());
}

#[test]
fn tensor_expansion_matches_pairing() {
    let s = consts(&[(1, rat(2, 5)), (-2, rat(9, 7)), (3, rat(-4, 15))]);
    for m in 2..=4u32 {
        let tensor = expand_tensor(&s, m).unwrap();
        let th = DualFunctional::random(1, 10);
        let ph = DualFunctional::random(2, 10);
        let ps = DualFunctional::random(3, 10);
        let mut direct = Rational::new();
        for ((sym, a, b), c) in &tensor {
            let mut t = Rational::from(1);
            for x in sym {
                t *= th.value(x);
            }
            let w = ph.value(a) * ps.value(b) - ph.value(b) * ps.value(a);
            direct += t * w * c;
        }
        assert_eq!(direct, beta_pairing(&s, m, &th, &ph, &ps).unwrap(), "m={m}");
    }
    assert!(expand_tensor(&s, 5).is_err());
}

#[test]
fn kernel_test_examples() {
    let five = FormalSum::from_terms(
        ["x", "y", "(1 - x)/(1 - x*y)", "1 - x*y", "(1 - y)/(1 - x*y)"]
            .iter()
            .map(|a| (rat(1, 1), rf(a))),
    );
    let v = kernel_test(&five, &KernelTestConfig::new(2, 6, 4, 11)).unwrap();
    assert!(v.passed, "{:?}", v.witness);
    let single = FormalSum::single(1, rf("t"));
    let v = kernel_test(&single, &KernelTestConfig::new(3, 3, 2, 5)).unwrap();
    assert!(!v.passed);
    let w = v.witness.clone().unwrap();
    assert_eq!(w.trial, 0);
    let again = kernel_test(&single, &KernelTestConfig::new(3, 3, 2, 5)).unwrap();
    assert_eq!(again, v);
    let json = v.to_json();
    assert_eq!(json["status"], "fail");
}

#[test]
fn constant_one_terms_are_skipped() {
    let s = FormalSum::from_terms([(rat(-3, 1), rf("1")), (rat(1, 1), rf("x")), (rat(-1, 1), rf("1/x"))]);
    let v = kernel_test(&s, &KernelTestConfig::new(3, 2, 2, 1)).unwrap();
    assert!(v.passed);
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=30)
        .prop_map(|(n, d)| rat(n, d))
        .prop_filter("not 0 or 1", |q| *q != 0 && *q != 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn antisymmetry_and_linearity(
        xs in prop::collection::vec((small_rational(), -3i64..=3), 1..5),
        ys in prop::collection::vec((small_rational(), -3i64..=3), 1..5),
        m in 2u32..=6,
        keys in (0u64..1000, 0u64..1000, 0u64..1000),
    ) {
        let th = DualFunctional::random(keys.0, 20);
        let ph = DualFunctional::random(keys.1 + 5000, 20);
        let ps = DualFunctional::random(keys.2 + 9000, 20);
        let a = FormalSum::from_terms(xs.iter().map(|(q, c)| (Rational::from(*c), RatFunc::constant(q.clone()))));
        let b = FormalSum::from_terms(ys.iter().map(|(q, c)| (Rational::from(*c), RatFunc::constant(q.clone()))));
        let pa = beta_pairing(&a, m, &th, &ph, &ps).unwrap();
        prop_assert_eq!(beta_pairing(&a, m, &th, &ps, &ph).unwrap(), Rational::from(-&pa));
        let pb = beta_pairing(&b, m, &th, &ph, &ps).unwrap();
        let combo = a.scale(&rat(3, 2)).add(&b.scale(&rat(-2, 1)));
        let pc = beta_pairing(&combo, m, &th, &ph, &ps).unwrap();
        prop_assert_eq!(pc, pa * rat(3, 2) - pb * rat(2, 1));
    }
}
