//! Exact structural checks on the catalog: group orders, orbit
//! correspondences, parametrizations, the 34-term derivations, the 21-term
//! form and the bookkeeping of the weight-7 table.

use std::collections::BTreeMap;

use rug::Rational;
use serde::Serialize;
use serde_json::{json, Value};

use super::builders::{f17_sum, gamma21_rhs_sum, gamma_sum, goncharov22, goncharov22_sym_sum};
use super::numeric::{verify_numeric, NumericOptions};
use super::xi7::{block, weight_wt, xi7_explicit_sum, xi7_symmetric_sum, xi7_table, PhiSign};
use super::EquationSpec;
use crate::error::Result;
use crate::exact::rat;
use crate::formal::{group_closure, orbit, Automorphism, FormalSum, DEFAULT_CLOSURE_BOUND};
use crate::numeric::PrecisionPolicy;
use crate::ratfunc::{coeffs_in, cross_ratio, parse, Fingerprint, ProjectiveValue, RatFunc};
use crate::symbol::{kernel_test, KernelTestConfig};

/// Outcome of a structural check: a verdict, named facts and free notes.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub facts: BTreeMap<String, Value>,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(name: &str) -> Self {
        CheckReport { name: name.to_string(), passed: true, facts: BTreeMap::new(), notes: Vec::new() }
    }

    fn fact(&mut self, key: &str, v: impl Into<Value>) {
        self.facts.insert(key.to_string(), v.into());
    }

    /// Records a boolean fact that the verdict depends on.
    fn require(&mut self, key: &str, ok: bool) {
        self.passed &= ok;
        self.fact(key, ok);
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn expr(s: &str) -> RatFunc {
    parse(s).unwrap_or_else(|e| panic!("check expression {s:?}: {e}"))
}

fn binding(pairs: &[(&str, RatFunc)]) -> BTreeMap<String, RatFunc> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn non_constant_args(s: &FormalSum) -> Vec<RatFunc> {
    s.terms().map(|(_, f)| f.clone()).filter(|f| !f.vars().is_empty()).collect()
}

/// Distinct classes modulo inversion, one representative each.
fn classes(args: &[RatFunc]) -> Vec<RatFunc> {
    let mut reps: Vec<RatFunc> = Vec::new();
    for f in args {
        if !reps.iter().any(|r| r.equivalent_up_to_inversion(f)) {
            reps.push(f.clone());
        }
    }
    reps
}

/// Members of `a` without an inversion-equivalent member in `b`.
fn unmatched(a: &[RatFunc], b: &[RatFunc]) -> Vec<String> {
    a.iter()
        .filter(|f| !b.iter().any(|g| g.equivalent_up_to_inversion(f)))
        .map(|f| f.to_string())
        .collect()
}

fn same_classes(a: &[RatFunc], b: &[RatFunc]) -> (bool, Vec<String>, Vec<String>) {
    let (ua, ub) = (unmatched(a, b), unmatched(b, a));
    (ua.is_empty() && ub.is_empty() && classes(a).len() == classes(b).len(), ua, ub)
}

fn term_list(s: &FormalSum) -> Vec<String> {
    s.terms().map(|(c, f)| format!("{c} [{}]", f.reduce())).collect()
}

/// `π_1`, `π_2` and the index shift on `a1, a2, a3`.
pub fn g_generators() -> Vec<Automorphism> {
    vec![
        Automorphism::parse(&[("a1", "a1"), ("a2", "a2"), ("a3", "-(1 - a1 + a1*a3)/(a1*(1 - a3 + a3*a2))")])
            .expect("generator parses"),
        Automorphism::parse(&[("a1", "1/a1"), ("a2", "1/a3"), ("a3", "1/a2")]).expect("generator parses"),
        Automorphism::parse(&[("a1", "a2"), ("a2", "a3"), ("a3", "a1")]).expect("generator parses"),
    ]
}

/// `g` and `h` on `y1, y2, y3, z1, z2, z3`.
pub fn gprime_generators() -> Vec<Automorphism> {
    vec![
        Automorphism::parse(&[("y1", "1/y1"), ("y2", "z2"), ("y3", "z3"), ("z1", "z1"), ("z2", "y2"), ("z3", "y3")])
            .expect("generator parses"),
        Automorphism::parse(&[("y1", "y2"), ("y2", "y3"), ("y3", "y1"), ("z1", "z2"), ("z2", "z3"), ("z3", "z1")])
            .expect("generator parses"),
    ]
}

const TRIPLE: &str = "(y1 - z3)/(1 - y1*z2)*(y2 - z1)/(1 - y2*z3)*(y3 - z2)/(1 - y3*z1)";

/// `t_i` in terms of `a_i`: `t1 = 1/a1`, `t2 = a1 a3/b1`, `t3 = b1/(b2 a3)`,
/// hence `t4 = b2`, with `b_i = 1 - a_i + a_i a_(i-1)`.
pub fn alpha_to_t_substitution() -> BTreeMap<String, RatFunc> {
    let b1 = "(1 - a1 + a1*a3)";
    let b2 = "(1 - a2 + a2*a1)";
    binding(&[
        ("t1", expr("1/a1")),
        ("t2", expr(&format!("a1*a3/{b1}"))),
        ("t3", expr(&format!("{b1}/({b2}*a3)"))),
    ])
}

/// `A_i = t_i t_4` and `B_i = (1-1/t_j)(1-1/t_k)/((1-t_i)(1-t_4))` in
/// `t1, t2, t3` with `t_4 = 1/(t_1 t_2 t_3)`.
pub fn ab_parametrization() -> ([RatFunc; 3], [RatFunc; 3]) {
    let t = ["t1", "t2", "t3"];
    let t4 = "(1/(t1*t2*t3))";
    let a = |i: usize| expr(&format!("{}*{t4}", t[i]));
    let b = |i: usize| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        expr(&format!("(1 - 1/{})*(1 - 1/{})/((1 - {})*(1 - {t4}))", t[j], t[k], t[i]))
    };
    ([a(0), a(1), a(2)], [b(0), b(1), b(2)])
}

fn yz_to_ab() -> BTreeMap<String, RatFunc> {
    let (a, b) = ab_parametrization();
    let mut m = BTreeMap::new();
    for i in 0..3 {
        m.insert(format!("y{}", i + 1), a[i].clone());
        m.insert(format!("z{}", i + 1), b[i].clone());
    }
    m
}

/// Orders of the symmetry groups of the 22-term relation.
pub fn check_group_orders() -> Result<CheckReport> {
    let mut r = CheckReport::new("group-orders");
    let g = group_closure(&g_generators(), DEFAULT_CLOSURE_BOUND)?;
    let gp = group_closure(&gprime_generators(), DEFAULT_CLOSURE_BOUND)?;
    r.fact("g_order", g.len());
    r.fact("gprime_order", gp.len());
    r.require("g_order_is_192", g.len() == 192);
    r.require("gprime_order_is_96", gp.len() == 96);
    Ok(r)
}

/// Orbits of `y1` and of the triple product under `G'`, generically and
/// after `y_i = A_i`, `z_i = B_i`.
pub fn check_orbit_sizes() -> Result<CheckReport> {
    let mut r = CheckReport::new("orbit-sizes");
    let group = group_closure(&gprime_generators(), DEFAULT_CLOSURE_BOUND)?;
    let sub = yz_to_ab();
    for (label, f, plain, inv_param) in [("y1", expr("y1"), 12, 6), ("triple", expr(TRIPLE), 32, 16)] {
        let orb = orbit(&f, &group, false)?;
        let inv = orbit(&f, &group, true)?.len();
        let images = orb.iter().map(|g| g.substitute(&sub)).collect::<Result<Vec<_>>>()?;
        let param = classes(&images).len();
        r.fact(&format!("{label}_orbit"), orb.len());
        r.fact(&format!("{label}_orbit_up_to_inversion"), inv);
        r.fact(&format!("{label}_classes_after_parametrization"), param);
        r.require(&format!("{label}_orbit_is_{plain}"), orb.len() == plain);
        r.require(&format!("{label}_parametrized_classes_is_{inv_param}"), param == inv_param);
    }
    r.note("generic inversion classes are reported only; the reduced counts hold after y = A, z = B");
    Ok(r)
}

/// The symmetric form in `t_i` pulled back along [`alpha_to_t_substitution`]
/// equals the 22-term relation in `a_i` after folding inverse arguments.
pub fn check_sym_matches_goncharov22() -> Result<CheckReport> {
    let mut r = CheckReport::new("sym-matches-goncharov22");
    let sym = goncharov22_sym_sum(["t1", "t2", "t3"]).substitute(&alpha_to_t_substitution())?;
    let gon = goncharov22("a1", "a2", "a3").sum;
    r.fact("sym_classes", sym.count_distinct_up_to_inversion());
    r.fact("goncharov22_classes", gon.count_distinct_up_to_inversion());
    let (same, only_sym, only_gon) = same_classes(&non_constant_args(&sym), &non_constant_args(&gon));
    r.require("argument_classes_match", same);
    let diff = sym.sub(&gon).fold_inversions(3);
    r.require("sums_agree_after_folding", diff.is_empty());
    if !same {
        r.fact("only_in_sym", only_sym);
        r.fact("only_in_goncharov22", only_gon);
    }
    if !diff.is_empty() {
        r.fact("difference", term_list(&diff));
    }
    Ok(r)
}

fn iota(x: &str, y: &str) -> String {
    format!("((1 - {x})/(1 - 1/{y}))")
}

/// `G'` orbits after `y = A`, `z = B` against the 22 symmetric-form
/// classes, plus the `ι` and shift maps acting like `g` and `h`.
pub fn check_gprime_correspondence() -> Result<CheckReport> {
    let mut r = CheckReport::new("gprime-correspondence");
    let group = group_closure(&gprime_generators(), DEFAULT_CLOSURE_BOUND)?;
    let sub = yz_to_ab();
    let image = |f: RatFunc| -> Result<Vec<RatFunc>> {
        orbit(&f, &group, false)?.iter().map(|g| g.substitute(&sub)).collect()
    };
    let short = classes(&image(expr("y1"))?);
    let long = classes(&image(expr(TRIPLE))?);
    r.fact("short_orbit_classes", short.len());
    r.fact("long_orbit_classes", long.len());
    r.require("short_orbit_has_6_classes", short.len() == 6);
    r.require("long_orbit_has_16_classes", long.len() == 16);
    let mut union = short.clone();
    union.extend(long.iter().cloned());
    let target = non_constant_args(&goncharov22_sym_sum(["t1", "t2", "t3"]));
    let (same, only_orbits, only_sym) = same_classes(&union, &target);
    r.require("union_matches_22_classes", same);
    if !same {
        r.fact("only_in_orbits", only_orbits);
        r.fact("only_in_sym", only_sym);
    }

    let (a, b) = ab_parametrization();
    let t4 = "(1/(t1*t2*t3))";
    let iota_map = binding(&[("t1", expr(&iota(t4, "t1"))), ("t2", expr(&iota("t3", "t2"))), ("t3", expr(&iota("t2", "t3")))]);
    let t4_image = expr(&iota("t1", t4));
    let t4_consistent = expr(t4).substitute(&iota_map)?.equivalent(&t4_image);
    r.require("iota_respects_product_constraint", t4_consistent);
    // (B1, B2, B3, A1, A2, A3) -> (1/B1, A2, A3, A1, B2, B3)
    let expected = [b[0].inv()?, a[1].clone(), a[2].clone(), a[0].clone(), b[1].clone(), b[2].clone()];
    let tuple = [&b[0], &b[1], &b[2], &a[0], &a[1], &a[2]];
    let mut iota_ok = true;
    for (f, e) in tuple.iter().zip(&expected) {
        iota_ok &= f.substitute(&iota_map)?.equivalent(e);
    }
    r.require("iota_acts_like_g", iota_ok);
    let shift = binding(&[("t1", expr("t2")), ("t2", expr("t3")), ("t3", expr("t1"))]);
    let mut shift_ok = true;
    for i in 0..3 {
        shift_ok &= a[i].substitute(&shift)?.equivalent(&a[(i + 1) % 3]);
        shift_ok &= b[i].substitute(&shift)?.equivalent(&b[(i + 1) % 3]);
    }
    r.require("shift_acts_like_h", shift_ok);
    Ok(r)
}

fn q(x: &RatFunc, y: &RatFunc) -> Result<RatFunc> {
    x.sub(y).div(&RatFunc::one().sub(&x.mul(y)))
}

fn powi(f: &RatFunc, e: i32) -> Result<RatFunc> {
    f.pow(e)
}

/// The nine `q`-equations in the `A_i, B_i` parametrization, and the square
/// root description of the two orbits checked at the level of squares.
pub fn check_q_equations() -> Result<CheckReport> {
    let mut r = CheckReport::new("q-equations");
    let (a, b) = ab_parametrization();
    let one = RatFunc::one();
    let mut all = true;
    for i in 0..3 {
        let (ip, im) = ((i + 1) % 3, (i + 2) % 3);
        let lhs1 = b[i].inv()?;
        let rhs1 = q(&b[im], &b[ip])?.div(&q(&a[ip], &a[im])?)?;
        let lhs2 = a[i].inv()?;
        let rhs2 = q(&a[ip], &b[im].inv()?)?.mul(&q(&a[im], &b[ip].inv()?)?);
        let sq = |x: &RatFunc| powi(&one.sub(x), 2);
        let lhs3 = a[ip].mul(&sq(&a[i])?).div(&a[i].mul(&sq(&a[ip])?))?;
        let rhs3 = b[ip].mul(&sq(&b[i])?).div(&b[i].mul(&sq(&b[ip])?))?;
        r.fact(&format!("family3_reciprocal_i{}", i + 1), lhs3.mul(&rhs3) == one);
        for (k, (l, rr)) in [(lhs1, rhs1), (lhs2, rhs2), (lhs3, rhs3)].iter().enumerate() {
            let ok = l.equivalent(rr);
            all &= ok;
            r.fact(&format!("family{}_i{}", k + 1, i + 1), ok);
        }
    }
    r.require("all_nine_identities", all);
    r.note("family3_reciprocal_i<k> records whether the two sides of the third family are reciprocal");

    // Squares: alpha_i^2 = A_i and beta_i^2 = B_i.
    let mut described = Vec::new();
    for eps in sign_vectors() {
        if eps.iter().product::<i32>() == -1 {
            let mut f = one.clone();
            for i in 0..3 {
                f = f.mul(&powi(&a[i], eps[i])?);
            }
            described.push(f);
        }
        if eps.iter().product::<i32>() == 1 {
            for i in 0..3 {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                described.push(powi(&a[i], eps[i])?.mul(&powi(&b[j], eps[j])?).mul(&powi(&b[k], eps[k])?));
            }
        }
    }
    let group = group_closure(&gprime_generators(), DEFAULT_CLOSURE_BOUND)?;
    let sub = yz_to_ab();
    let long = classes(
        &orbit(&expr(TRIPLE), &group, false)?
            .iter()
            .map(|g| g.substitute(&sub)?.pow(2))
            .collect::<Result<Vec<_>>>()?,
    );
    r.fact("described_products", described.len());
    let (same_long, only_described, only_orbit) = same_classes(&classes(&described), &long);
    r.require("long_orbit_squares_match", same_long);
    if !same_long {
        r.fact("only_described", only_described);
        r.fact("only_orbit", only_orbit);
    }
    let short_described: Vec<RatFunc> = a.iter().chain(b.iter()).cloned().collect();
    let short = classes(
        &orbit(&expr("y1"), &group, false)?.iter().map(|g| g.substitute(&sub)).collect::<Result<Vec<_>>>()?,
    );
    r.require("short_orbit_squares_match", same_classes(&short_described, &short).0);
    r.note("square roots alpha_i = -sqrt(A_i), beta_i = sqrt(B_i) are compared after squaring; branches are not fixed");
    Ok(r)
}

fn sign_vectors() -> Vec<[i32; 3]> {
    let mut out = Vec::new();
    for e0 in [1, -1] {
        for e1 in [1, -1] {
            for e2 in [1, -1] {
                out.push([e0, e1, e2]);
            }
        }
    }
    out
}

fn pv(s: &str) -> ProjectiveValue {
    ProjectiveValue::Finite(expr(s))
}

/// The x-dependent part of the three-point trilogarithm equation for
/// `φ(x) = (x-a)(x-b)/((x-1/c)(x-abc))` with targets `(∞, 0, 1)`, in the
/// variable `t`, compared with `f(a,b,c,t)`.
pub fn check_34_from_wojtkowiak() -> Result<CheckReport> {
    let mut r = CheckReport::new("wojt-34-match");
    let phi = expr("(t - a)*(t - b)/((t - 1/c)*(t - a*b*c))");
    let pre_inf = [pv("1/c"), pv("a*b*c")];
    let pre_zero = [pv("a"), pv("b")];
    let pre_one = [pv("0"), ProjectiveValue::Infinity];
    // Preimages are verified against φ itself.
    let mut pre_ok = true;
    for p in &pre_zero {
        if let ProjectiveValue::Finite(f) = p {
            pre_ok &= phi.substitute(&binding(&[("t", f.clone())]))?.is_zero();
        }
    }
    pre_ok &= phi.inv()?.substitute(&binding(&[("t", expr("1/c"))]))?.is_zero();
    pre_ok &= phi.inv()?.substitute(&binding(&[("t", expr("a*b*c"))]))?.is_zero();
    pre_ok &= phi.substitute(&binding(&[("t", expr("0"))]))? == RatFunc::one();
    // φ(∞) = 1: equal degree in t and equal top coefficients.
    let (top_n, top_d) = (coeffs_in(phi.num(), "t"), coeffs_in(phi.den(), "t"));
    pre_ok &= top_n.len() == 3 && top_d.len() == 3 && top_n[2] == top_d[2];
    r.require("preimages_verified", pre_ok);

    let x = pv("t");
    let mut lhs = FormalSum::new();
    let mut dropped = 0usize;
    let mut push = |c: i64, p: [&ProjectiveValue; 4]| -> Result<()> {
        match cross_ratio(p[0], p[1], p[2], p[3]) {
            Ok(ProjectiveValue::Finite(f)) if !f.vars().is_empty() => lhs.add_term(Rational::from(c), f),
            _ => dropped += 1,
        }
        Ok(())
    };
    push(1, [&ProjectiveValue::Finite(phi.clone()), &pv("1"), &pv("0"), &ProjectiveValue::Infinity])?;
    let groups: [(i64, &[ProjectiveValue], &[ProjectiveValue], &[ProjectiveValue]); 5] = [
        (-1, &pre_one, &pre_zero, &pre_inf),
        (-1, &pre_inf, &pre_inf, &pre_one),
        (-1, &pre_zero, &pre_zero, &pre_one),
        (1, &pre_inf, &pre_inf, &pre_zero),
        (1, &pre_zero, &pre_zero, &pre_inf),
    ];
    for (c, p, q, s) in groups {
        for y in p {
            for z in q {
                for w in s {
                    push(c, [&x, y, z, w])?;
                }
            }
        }
    }
    r.fact("dropped_constant_or_infinite_terms", dropped);
    let lhs = lhs.fold_inversions(3);
    let f = f17_sum("a", "b", "c", "t");
    r.fact("lhs_classes", lhs.count_distinct_up_to_inversion());
    r.fact("f17_classes", f.count_distinct_up_to_inversion());
    r.require("f17_has_17_classes", f.count_distinct_up_to_inversion() == 17);
    let (same, only_lhs, only_f) = same_classes(&non_constant_args(&lhs), &non_constant_args(&f));
    r.fact("classes_match_up_to_inversion", same);
    if !same {
        r.fact("only_in_lhs", only_lhs);
        r.fact("only_in_f17", only_f);
    }
    let plus = three_term_normal_form(&lhs.sub(&f)).is_empty();
    let minus = three_term_normal_form(&lhs.add(&f)).is_empty();
    r.fact("overall_sign", if plus { 1 } else if minus { -1 } else { 0 });
    r.require("matches_modulo_inversion_and_three_term", plus || minus);
    Ok(r)
}

fn class_key(f: &RatFunc) -> (u64, String) {
    match f.inversion_key() {
        Fingerprint::Value(v) => (v, String::new()),
        _ => {
            let g = f.reduce();
            let (a, b) = (g.to_string(), g.inv().map(|h| h.reduce().to_string()).unwrap_or_default());
            (u64::MAX, a.min(b))
        }
    }
}

/// Normal form of a weight-3 sum modulo inversion, the 3-term relation
/// `[x] + [1/(1-x)] + [1-1/x] = [1]` and constants: in each 3-term triple
/// the class with the largest key is rewritten through the other two.
pub(super) fn three_term_normal_form(s: &FormalSum) -> FormalSum {
    let mut out = FormalSum::new();
    for (c, f) in s.terms() {
        if f.vars().is_empty() {
            continue;
        }
        let g1 = f.one_minus().inv().expect("non-constant argument");
        let g2 = RatFunc::one().sub(&f.inv().expect("non-constant argument"));
        let k = class_key(f);
        if k > class_key(&g1) && k > class_key(&g2) {
            out.add_term(Rational::from(-c), g1);
            out.add_term(Rational::from(-c), g2);
        } else {
            out.add_term(c.clone(), f.clone());
        }
    }
    out.fold_inversions(3)
}

fn cr_expr(x: &str, y: &str, z: &str, w: &str) -> Result<RatFunc> {
    match cross_ratio(&pv(x), &pv(y), &pv(z), &pv(w))? {
        ProjectiveValue::Finite(f) => Ok(f),
        ProjectiveValue::Infinity => Err(crate::Error::Domain("cross-ratio is identically infinite".into())),
    }
}

/// The substitution `t_i -> (cr(t,0,1/c,a), cr(t,0,b,1/c), cr(t,0,a,abc))`.
pub fn check_22_to_34_substitution() -> Result<CheckReport> {
    let images = [
        cr_expr("t", "0", "1/c", "a")?,
        cr_expr("t", "0", "b", "1/c")?,
        cr_expr("t", "0", "a", "a*b*c")?,
    ];
    check_22_to_34_with(images)
}

/// Substitutes the given images for `t1, t2, t3` in the symmetric 22-term
/// form, subtracts `f(a,b,c,t)` and inspects the remainder.
pub fn check_22_to_34_with(images: [RatFunc; 3]) -> Result<CheckReport> {
    let mut r = CheckReport::new("sub-22-to-34");
    let sub = binding(&[("t1", images[0].clone()), ("t2", images[1].clone()), ("t3", images[2].clone())]);
    let t4 = expr("1/(t1*t2*t3)").substitute(&sub)?;
    let prod = images[0].mul(&images[1]).mul(&images[2]).mul(&t4);
    r.require("product_constraint_holds", prod == RatFunc::one());
    let image = goncharov22_sym_sum(["t1", "t2", "t3"]).substitute(&sub)?;
    let rem = image.sub(&f17_sum("a", "b", "c", "t")).fold_inversions(3);
    let rest = non_constant_args(&rem);
    let t_dependent: Vec<String> = rest.iter().filter(|f| !f.is_free_of("t")).map(|f| f.to_string()).collect();
    r.fact("remainder_non_constant_classes", classes(&rest).len());
    r.fact("remainder", term_list(&rem));
    r.require("remainder_is_t_free", t_dependent.is_empty());
    r.require("remainder_has_5_classes", classes(&rest).len() == 5);
    if !t_dependent.is_empty() {
        r.fact("t_dependent_terms", t_dependent);
    }
    Ok(r)
}

/// `Γ(x1,x2,z1) + Γ(x2,x1,z1)` against its displayed 21-class form: formal
/// equality after folding, then the kernel criterion, then numerics.
pub fn check_gamma21_identity(seed: u64) -> Result<CheckReport> {
    let mut r = CheckReport::new("gamma21");
    let lhs = gamma_sum("x1", "x2", "z1").add(&gamma_sum("x2", "x1", "z1"));
    let rhs = gamma21_rhs_sum("x1", "x2", "z1");
    let rhs_folded = rhs.fold_inversions(3);
    let n_classes = rhs.count_distinct_up_to_inversion();
    r.fact("rhs_classes", n_classes);
    r.require("rhs_has_21_classes", n_classes == 21);
    let allowed = [rat(1, 1), rat(-1, 1), rat(2, 1), rat(-2, 1)];
    let coeffs_ok = rhs_folded.terms().filter(|(_, f)| !f.vars().is_empty()).all(|(c, _)| allowed.contains(c));
    r.require("rhs_coefficients_in_pm1_pm2", coeffs_ok);

    let diff = lhs.sub(&rhs);
    let formal = diff.fold_inversions(3).is_empty();
    r.fact("formal_equality", formal);
    let kernel = kernel_test(&diff, &KernelTestConfig::new(3, 10, 5, seed))?;
    r.fact("kernel_test", kernel.passed);
    let spec = EquationSpec::new("gamma21-difference", 3, vec!["x1".into(), "x2".into(), "z1".into()], diff);
    let numeric = verify_numeric(&spec, &NumericOptions::new(10, seed, 35), &PrecisionPolicy::new(50)?)?;
    r.fact("numeric_max_abs", numeric.max_abs.clone());
    r.fact("numeric", numeric.passed);
    let level = if formal {
        "formal"
    } else if kernel.passed && numeric.passed {
        "kernel-and-numeric"
    } else if kernel.passed {
        "kernel-only"
    } else if numeric.passed {
        "numeric-only"
    } else {
        "none"
    };
    r.fact("equality_level", level);
    r.require("difference_is_a_relation", kernel.passed && numeric.passed);
    let rhs_kernel = kernel_test(&rhs, &KernelTestConfig::new(3, 10, 5, seed))?;
    r.fact("rhs_alone_kernel_test", rhs_kernel.passed);
    if let Some(w) = kernel.witness {
        r.fact("kernel_witness_value", w.value.to_string());
    }
    Ok(r)
}

/// The weight-7 explicit form has 274 argument classes.
pub fn check_xi7_term_count() -> Result<CheckReport> {
    let mut r = CheckReport::new("xi7-term-count");
    let n = xi7_explicit_sum("t", "u").count_distinct_up_to_inversion();
    r.fact("explicit_classes", n);
    r.require("explicit_has_274_classes", n == 274);
    let s = xi7_symmetric_sum("t", "u", PhiSign::RepeatedEntry).count_distinct_up_to_inversion();
    r.fact("symmetric_classes", s);
    Ok(r)
}

/// `wt(a,b) = wt(c,d)` for every block of the table.
pub fn check_xi7_weights() -> Result<CheckReport> {
    let mut r = CheckReport::new("xi7-weights");
    let mut bad = Vec::new();
    let mut by_weight: BTreeMap<String, usize> = BTreeMap::new();
    for row in xi7_table() {
        let k = row.block;
        let (w1, w2) = (weight_wt(k.a, k.b), weight_wt(k.c, k.d));
        *by_weight.entry(w1.to_string()).or_default() += 1;
        if w1 != w2 {
            bad.push(format!("{{{},{};{},{}}}", k.a, k.b, k.c, k.d));
        }
    }
    r.fact("blocks", xi7_table().len());
    r.fact("blocks_by_weight", json!(by_weight));
    r.require("all_blocks_balanced", bad.is_empty());
    if !bad.is_empty() {
        r.fact("unbalanced", bad);
    }
    Ok(r)
}

/// Inside each expanded block every argument class occurs as many times as
/// the denominator of the leading coefficient.
pub fn check_xi7_multiplicities() -> Result<CheckReport> {
    let mut r = CheckReport::new("xi7-multiplicities");
    let mut bad = Vec::new();
    for row in xi7_table() {
        let mut s = FormalSum::new();
        for f in block(row.block, "t", "u") {
            s.add_term(Rational::from(1), f);
        }
        let folded = s.fold_inversions(7);
        let denom = Rational::from(row.lead.denom().clone());
        if !folded.terms().all(|(c, _)| *c == denom) {
            let k = row.block;
            bad.push(format!("{{{},{};{},{}}}", k.a, k.b, k.c, k.d));
        }
    }
    r.require("multiplicities_match_denominators", bad.is_empty());
    if !bad.is_empty() {
        r.fact("mismatched_blocks", bad);
    }
    Ok(r)
}

/// `60·explicit` against the symmetric form, after folding inverse
/// arguments, for both sign conventions of `φ_α`.
pub fn check_xi7_explicit_vs_symmetric() -> Result<CheckReport> {
    let mut r = CheckReport::new("xi7-explicit-vs-symmetric");
    let explicit = xi7_explicit_sum("t", "u");
    let sixty = explicit.scale(&Rational::from(60));
    let mut any = false;
    for (label, sign) in [("literal", PhiSign::Literal), ("repeated_entry", PhiSign::RepeatedEntry)] {
        let sym = xi7_symmetric_sum("t", "u", sign);
        let diff = sixty.sub(&sym).fold_inversions(7);
        any |= diff.is_empty();
        r.fact(&format!("{label}_equal"), diff.is_empty());
        r.fact(&format!("{label}_difference_terms"), diff.len());
        r.fact(&format!("{label}_symmetric_classes"), sym.count_distinct_up_to_inversion());
        if let Some(k) = proportionality(&explicit, &sym) {
            r.fact(&format!("{label}_symmetric_over_explicit"), k.to_string());
        }
    }
    r.require("sixty_explicit_equals_symmetric", any);
    Ok(r)
}

/// `k` with `sym = k·explicit` after folding, if there is one.
fn proportionality(explicit: &FormalSum, sym: &FormalSum) -> Option<Rational> {
    let (c, f) = explicit.terms().find(|(_, f)| !f.vars().is_empty())?;
    let folded = sym.fold_inversions(7);
    let (d, _) = folded.terms().find(|(_, g)| g.equivalent_up_to_inversion(f))?;
    let k = Rational::from(d / c);
    sym.sub(&explicit.scale(&k)).fold_inversions(7).is_empty().then_some(k)
}
