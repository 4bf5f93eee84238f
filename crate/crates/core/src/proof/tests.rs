use super::*;

#[test]
fn relation_rank_and_pivots() {
    for n in 2..=6 {
        let sp = LogSpace::new(n);
        assert_eq!(sp.rank(), 2 * n - 2, "n = {n}");
    }
    let sp = LogSpace::new(3);
    // ζ_(3,1), ζ_(3,2), ζ_(1,3), ζ_(2,3) in 0-based flat indexing
    assert_eq!(sp.pivots(), vec![6 + 6, 6 + 7, 6 + 2, 6 + 5]);
}

#[test]
fn derived_symbol_examples() {
    let sp = LogSpace::new(2);
    let d = derived_symbols(&sp);
    let expect = sp.xi(0).add(&sp.xi(1)).sub(&sp.eta(0)).sub(&sp.eta(1));
    assert_eq!(d.s_total, expect);
    let col1 = sp.zeta(0, 0).add(&sp.zeta(1, 0));
    let col2 = sp.zeta(0, 1).add(&sp.zeta(1, 1));
    assert!(sp.equal(&col1, &col2));
    assert!(!sp.equal(&sp.zeta(0, 0), &sp.zeta(0, 1)));
}

#[test]
fn root_ratio_image() {
    let sp = LogSpace::new(3);
    let d = derived_symbols(&sp);
    for (l, m) in [(0, 0), (1, 2), (2, 1)] {
        let s = &d.s[l][m];
        let expect = FormalTensor::cube_wedge(s, &sp.zeta(l, m))
            .sub(&FormalTensor::sq_wedge(s, &sp.xi(l), &sp.eta(m)));
        assert_eq!(beta4_formal(&sp, ArgKind::RootRatio, l, m).unwrap(), expect);
    }
}

#[test]
fn one_minus_inverse_is_pure() {
    let sp = LogSpace::new(4);
    let t = beta4_formal(&sp, ArgKind::OneMinusInverseX, 2, 0).unwrap();
    assert!(!t.is_zero());
    assert!(t.keys().all(|&(a, b, c, d)| [a, b, c, d].iter().all(|&k| k < 4)));
}

#[test]
fn kind_parsing_and_ranges() {
    for k in ArgKind::ALL {
        assert_eq!(k.name().parse::<ArgKind>().unwrap(), k);
    }
    assert!(matches!("1-x".parse::<ArgKind>(), Err(Error::Unknown { .. })));
    let sp = LogSpace::new(2);
    assert!(beta4_formal(&sp, ArgKind::RootRatio, 2, 0).is_err());
    assert!(verify_identities(1).is_err());
    assert!(verify_identities(7).is_err());
}

#[test]
fn identities_hold() {
    for n in 2..=4 {
        let r = verify_identities(n).unwrap();
        assert!(r.all_pass(), "n = {n}: {:?}", r.identities);
    }
}

#[test]
fn altered_weights_fail() {
    let r = verify_identities_with(3, Control::AlteredWeightBase).unwrap();
    assert!(!r.identities["weights_sum_to_one"]);
    assert!(!r.all_pass());
}

#[test]
fn claim_and_theorem_hold() {
    for n in 2..=4 {
        let r = verify_claim_and_theorem(n).unwrap();
        assert!(r.all_pass(), "n = {n}: {r:?}");
    }
}

#[test]
fn altered_coefficient_fails() {
    for n in 2..=3 {
        let r = verify_claim_and_theorem_with(n, Control::AlteredCoefficient).unwrap();
        assert!(!r.theorem_zero);
    }
}

#[test]
fn polarization_of_cube() {
    let sp = LogSpace::new(2);
    let d = derived_symbols(&sp);
    let a = d.s[0][1].add(&sp.zeta(1, 1).scale_i(3));
    let b = d.z.clone();
    assert_eq!(CubicForm::cubic(&a, &a, &a, &b).polarize(), FormalTensor::cube_wedge(&a, &b));
    assert!(CubicForm::cubic(&a, &a, &a, &a).polarize().is_zero());
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn vec_strategy(dim: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-5i64..=5, dim)
    }

    proptest! {
        #[test]
        fn reduce_is_projection(v in vec_strategy(8)) {
            let sp = LogSpace::new(2);
            let lv = LVec(v.into_iter().map(Rational::from).collect());
            let r = sp.reduce(&lv);
            prop_assert_eq!(sp.reduce(&r), r.clone());
            prop_assert!(sp.equal(&lv, &r));
        }

        #[test]
        fn wedge_antisymmetric(u in vec_strategy(15), v in vec_strategy(15)) {
            let sp = LogSpace::new(3);
            let a = sp.reduce(&LVec(u.into_iter().map(Rational::from).collect()));
            let b = sp.reduce(&LVec(v.into_iter().map(Rational::from).collect()));
            let mut s = Wedge::wedge(&a, &b);
            s.add_assign(&Wedge::wedge(&b, &a), &Rational::from(1));
            prop_assert!(s.is_zero());
            prop_assert!(Wedge::wedge(&a, &a).is_zero());
            prop_assert_eq!(Sym2::sym(&a, &b), Sym2::sym(&b, &a));
        }
    }
}
