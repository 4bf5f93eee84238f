//! The acceptance criteria. Each criterion runs a handful of sub-checks and
//! fails if any of them fails or its time budget is exceeded.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use rug::{Complex, Float};
use serde_json::{json, Map, Value};

use super::CheckVerdict;
use crate::catalog::{
    build, check_22_to_34_substitution, check_34_from_wojtkowiak, check_gamma21_identity, check_gprime_correspondence,
    check_group_orders, check_orbit_sizes, check_q_equations, check_sym_matches_goncharov22,
    check_xi7_explicit_vs_symmetric, check_xi7_term_count, check_xi7_weights, sample_annulus, verify_dilog_general,
    verify_fourlog_numeric, verify_numeric, verify_trilog_theorem, verify_wojtkowiak, CheckReport, EquationSpec,
    NumericOptions, NumericVerdict,
};
use crate::error::{Error, Result};
use crate::exact::{random_rational, rat, Rational, Sampler};
use crate::formal::FormalSum;
use crate::numeric::{cl_m, pow10, BigComplex, ClArg, PrecisionPolicy};
use crate::proof::proof_report;
use crate::ratfunc::{parse, RatFunc};
use crate::symbol::{beta_pairing, kernel_test, DualFunctional, KernelTestConfig, Verdict};

type RunFn = fn(u64) -> Result<Outcome>;

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub budget_seconds: Option<f64>,
    run: RunFn,
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    /// Sub-check names with their verdicts, in run order.
    pub parts: Vec<(String, bool)>,
    pub details: Value,
    pub seconds: f64,
    pub budget_seconds: Option<f64>,
    pub error: Option<String>,
}

impl CriterionResult {
    pub fn within_budget(&self) -> bool {
        self.budget_seconds.is_none_or(|b| self.seconds <= b)
    }

    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut parts: Vec<String> = self
            .parts
            .iter()
            .map(|(n, ok)| format!("{n}={}", if *ok { "ok" } else { "FAIL" }))
            .collect();
        if let Some(e) = &self.error {
            parts.push(format!("error: {e}"));
        }
        let time = match self.budget_seconds {
            Some(b) => format!("{:.2}s of {b:.0}s", self.seconds),
            None => format!("{:.2}s", self.seconds),
        };
        format!("{status} criterion {:>2} {}: {} [{time}]", self.id, self.title, parts.join(" "))
    }

    pub fn to_verdict(&self) -> CheckVerdict {
        CheckVerdict::new(
            &format!("criterion-{}", self.id),
            self.passed,
            json!({
                "title": self.title,
                "parts": self.parts.iter().map(|(n, ok)| (n.clone(), Value::Bool(*ok))).collect::<Map<_, _>>(),
                "details": self.details,
                "budget_seconds": self.budget_seconds,
                "error": self.error,
            }),
        )
    }
}

#[derive(Default)]
struct Outcome {
    parts: Vec<(String, bool)>,
    details: Map<String, Value>,
}

impl Outcome {
    fn part(&mut self, name: &str, ok: bool, detail: Value) {
        self.parts.push((name.to_string(), ok));
        self.details.insert(name.to_string(), detail);
    }

    fn check(&mut self, r: CheckReport) {
        self.part(&r.name.clone(), r.passed, r.to_json());
    }

    fn kernel(&mut self, name: &str, v: &Verdict) {
        self.part(name, v.passed, v.to_json());
    }

    fn numeric(&mut self, name: &str, v: &NumericVerdict) {
        self.part(name, v.passed, serde_json::to_value(v).expect("verdict serializes"));
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, title, budget, run| Criterion { id, title, budget_seconds: budget, run };
    vec![
        c(1, "five-term relation, numeric", Some(10.0), five_term as RunFn),
        c(2, "22-term relation, kernel and numeric", None, goncharov22),
        c(3, "symmetric form, groups and orbits", None, symmetric_forms),
        c(4, "q-equations", None, q_equations),
        c(5, "34-term relation", None, relation34),
        c(6, "21-term relation", None, gamma21),
        c(7, "general dilogarithm and trilogarithm equations", Some(60.0), general_maps),
        c(8, "4-logarithm family and log-symbol algebra", Some(300.0), fourlog),
        c(9, "weight-7 equation", Some(600.0), xi7),
        c(10, "invariant suites", None, invariants),
        c(11, "negative controls", None, negative_controls),
    ]
}

pub fn run_criterion(c: &Criterion, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let outcome = (c.run)(seed);
    let seconds = start.elapsed().as_secs_f64();
    let mut res = CriterionResult {
        id: c.id,
        title: c.title,
        passed: false,
        parts: Vec::new(),
        details: Value::Null,
        seconds,
        budget_seconds: c.budget_seconds,
        error: None,
    };
    match outcome {
        Ok(o) => {
            res.passed = !o.parts.is_empty() && o.parts.iter().all(|(_, ok)| *ok);
            res.parts = o.parts;
            res.details = Value::Object(o.details);
        }
        Err(e) => res.error = Some(e.to_string()),
    }
    if !res.within_budget() {
        res.passed = false;
        res.parts.push(("time_budget".into(), false));
    }
    res
}

fn p(digits: u32) -> Result<PrecisionPolicy> {
    PrecisionPolicy::new(digits)
}

fn five_term(seed: u64) -> Result<Outcome> {
    let mut o = Outcome::default();
    let v = verify_numeric(&build("five-term")?, &NumericOptions::new(100, seed, 35), &p(50)?)?;
    o.numeric("numeric", &v);
    Ok(o)
}

fn goncharov22(seed: u64) -> Result<Outcome> {
    let mut o = Outcome::default();
    let eq = build("goncharov22")?;
    o.kernel("kernel", &kernel_test(&eq.sum, &KernelTestConfig::new(3, 10, 5, seed))?);
    o.numeric("numeric", &verify_numeric(&eq, &NumericOptions::new(50, seed, 35), &p(50)?)?);
    Ok(o)
}

fn symmetric_forms(_seed: u64) -> Result<Outcome> {
    let mut o = Outcome::default();
    o.check(check_sym_matches_goncharov22()?);
    o.check(check_group_orders()?);
    o.check(check_orbit_sizes()?);
    o.check(check_gprime_correspondence()?);
    Ok(o)
}

fn q_equations(_seed: u64) -> Result<Outcome> {
    let mut o = Outcome::default();
    o.check(check_q_equations()?);
    Ok(o)
}

fn relation34(seed: u64) -> Result<Outcome> {
    let mut o = Outcome::default();
    let eq = build("relation34")?;
    o.kernel("kernel", &kernel_test(&eq.sum, &KernelTestConfig::new(3, 10, 5, seed))?);
    o.numeric("numeric", &verify_numeric(&eq, &NumericOptions::new(30, seed, 35), &p(50)?)?);
    o.check(check_34_from_wojtkowiak()?);
    o.check(check_22_to_34_substitution()?);
    Ok(o)
}

fn gamma21(seed: u64) -> Result<Outcome> {
    let mut o = Outcome::default();
    o.check(check_gamma21_identity(seed)?);
    Ok(o)
}

fn random_point(s: &mut Sampler, policy: &PrecisionPolicy) -> ClArg {
    ClArg::Finite(BigComplex::from_complex(sample_annulus(s, policy.working_bits()), policy.digits))
}

/// A cubic polynomial with coefficients `p/q`, `|p| <= 3`, `1 <= q <= 3`.
fn random_cubic(s: &mut Sampler) -> Result<RatFunc> {
    let mut c: Vec<Rational> = (0..4).map(|_| rat(s.int_in(-3, 3), s.int_in(1, 3))).collect();
    if c[3] == 0 {
        c[3] = rat(1, 1);
    }
    parse(&format!("({})*z^3 + ({})*z^2 + ({})*z + ({})", c[3], c[2], c[1], c[0]))
}

fn general_maps(seed: u64) -> Result<Outcome> {
    const SETS: u64 = 2;
    const TOL: u32 = 30;
    let policy = p(50)?;
    let mut s = Sampler::with_stream(seed, 7);
    let cubic = random_cubic(&mut s)?;
    let maps = [("z(1-z)", parse("z*(1-z)")?), ("z^2", parse("z^2")?), ("cubic", cubic)];
    let mut o = Outcome::default();
    for (k, (label, phi)) in maps.iter().enumerate() {
        for set in 0..SETS {
            let mut s = s.split(100 * k as u64 + set);
            let mut pts = |n: usize| -> Vec<ClArg> { (0..n).map(|_| random_point(&mut s, &policy)).collect() };
            let d = pts(4);
            let dv = verify_dilog_general(phi, &d[0], &d[1], &d[2], &d[3], TOL, &policy)?;
            o.numeric(&format!("{label}_dilog_{set}"), &dv);
            let t = pts(8);
            let tv = verify_trilog_theorem(phi, [&t[0], &t[1]], [&t[2], &t[3]], [&t[4], &t[5]], [&t[6], &t[7]], TOL, &policy)?;
            o.numeric(&format!("{label}_trilog_{set}"), &tv);
            let w = pts(5);
            let wv = verify_wojtkowiak(phi, &w[0], &w[1], &w[2], &w[3], &w[4], TOL, &policy)?;
            o.numeric(&format!("{label}_x_independence_{set}"), &wv);
        }
        o.details.insert(format!("{label}_map"), Value::String(phi.to_string()));
    }
    Ok(o)
}

fn fourlog(seed: u64) -> Result<Outcome> {
    let mut o = Outcome::default();
    let policy = p(60)?;
    for n in 2..=5 {
        let v = verify_fourlog_numeric(n, &NumericOptions::new(20, seed, 40), &policy)?;
        o.numeric(&format!("numeric_n{n}"), &v);
    }
    for n in 2..=6 {
        let r = proof_report(n)?;
        o.part(&format!("log_symbol_algebra_n{n}"), r.all_pass(), r.to_json());
    }
    Ok(o)
}

fn xi7(seed: u64) -> Result<Outcome> {
    let mut o = Outcome::default();
    o.check(check_xi7_term_count()?);
    o.check(check_xi7_weights()?);
    o.check(check_xi7_explicit_vs_symmetric()?);
    let eq = build("xi7-explicit")?;
    o.kernel("kernel", &kernel_test(&eq.sum, &KernelTestConfig::new(7, 8, 3, seed))?);
    o.numeric("numeric", &verify_numeric(&eq, &NumericOptions::new(10, seed, 35), &p(60)?)?);
    Ok(o)
}

fn abs_diff(a: &BigComplex, b: &BigComplex) -> Float {
    (a - b).abs()
}

fn invariants(seed: u64) -> Result<Outcome> {
    const POINTS: u64 = 50;
    let policy = p(50)?;
    let tol = pow10(-35, 64);
    let root = Sampler::new(seed);
    let jobs: Vec<(u32, u64)> = (2..=7).flat_map(|m| (0..POINTS).map(move |k| (m, k))).collect();
    let maxima = jobs
        .par_iter()
        .map(|&(m, k)| -> Result<[Float; 3]> {
            let mut s = root.split(1000 * m as u64 + k);
            let ClArg::Finite(z) = random_point(&mut s, &policy) else { unreachable!() };
            let cl = |w: BigComplex| cl_m(m, &ClArg::Finite(w), &policy);
            let (v, vinv, vconj, vneg, vsq) = (cl(z.clone())?, cl(z.recip()?)?, cl(z.conj())?, cl(-&z)?, cl(&z * &z)?);
            // CL_m(1/z) and CL_m(conj z) both equal (-1)^(m-1) CL_m(z).
            let signed = if m % 2 == 1 { v.clone() } else { -&v };
            let two = BigComplex::from_f64(f64::from(1u32 << (m - 1)), 0.0, policy.digits);
            let dist = &two * &(&v + &vneg);
            Ok([abs_diff(&vinv, &signed), abs_diff(&vconj, &signed), abs_diff(&vsq, &dist)])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut o = Outcome::default();
    for (i, name) in ["inversion", "conjugation", "distribution"].iter().enumerate() {
        let worst = maxima.iter().map(|a| a[i].clone()).fold(Float::with_val(64, 0), |a, b| a.max(&b));
        let ok = worst < tol;
        o.part(name, ok, json!({ "points": jobs.len(), "max_abs": worst.to_string_radix(10, Some(6)), "tolerance": "1e-35" }));
    }

    let mut s = root.split(77);
    let mut antisymmetric = true;
    let mut linear = true;
    const TRIALS: u64 = 50;
    for trial in 0..TRIALS {
        let m = 2 + (trial % 6) as u32;
        let constant_sum = |s: &mut Sampler| -> Result<FormalSum> {
            let n = s.int_in(1, 4);
            let mut f = FormalSum::new();
            for _ in 0..n {
                let q = random_rational(30, s, &[])?;
                f.add_term(rat(s.int_in(-3, 3), 1), RatFunc::constant(q));
            }
            Ok(f)
        };
        let (a, b) = (constant_sum(&mut s)?, constant_sum(&mut s)?);
        let th = DualFunctional::random(s.next_u64(), 20);
        let ph = DualFunctional::random(s.next_u64(), 20);
        let ps = DualFunctional::random(s.next_u64(), 20);
        let pa = beta_pairing(&a, m, &th, &ph, &ps)?;
        antisymmetric &= beta_pairing(&a, m, &th, &ps, &ph)? == Rational::from(-&pa);
        let pb = beta_pairing(&b, m, &th, &ph, &ps)?;
        let combo = a.scale(&rat(3, 2)).add(&b.scale(&rat(-2, 1)));
        linear &= beta_pairing(&combo, m, &th, &ph, &ps)? == pa * rat(3, 2) - pb * rat(2, 1);
    }
    o.part("pairing_antisymmetry", antisymmetric, json!({ "trials": TRIALS }));
    o.part("pairing_linearity", linear, json!({ "trials": TRIALS }));
    Ok(o)
}

/// Sample points where every argument of `eq` is defined, with the value
/// of the unperturbed sum there.
fn base_values(eq: &EquationSpec, seed: u64, count: u64, policy: &PrecisionPolicy) -> Result<Vec<(BTreeMap<String, Complex>, BigComplex)>> {
    const MAX_DRAWS: u64 = 64;
    let mut out = Vec::new();
    for k in 0..count {
        let mut found = None;
        for draw in 0..MAX_DRAWS {
            let mut s = Sampler::with_stream(seed, (1 << 20) | (k * MAX_DRAWS + draw));
            let point: BTreeMap<String, Complex> =
                eq.variables.iter().map(|v| (v.clone(), sample_annulus(&mut s, policy.working_bits()))).collect();
            match eq.sum.cl_eval(eq.weight, &point, policy) {
                Ok(v) => {
                    found = Some((point, v));
                    break;
                }
                Err(Error::Domain(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        out.push(found.ok_or_else(|| Error::Exhausted("no admissible sample point".into()))?);
    }
    Ok(out)
}

/// Adds `+1` to the coefficient of each argument class in turn and counts
/// how often the kernel test finds a witness and how often the perturbed sum
/// exceeds `1e-10` at one of two sample points. The perturbed value is the
/// unperturbed one plus `CL_m` of the added argument.
fn perturbations(eq: &EquationSpec, kernel: KernelTestConfig, numeric_digits: u32) -> Result<(usize, usize, usize)> {
    let folded = eq.sum.fold_inversions(eq.weight);
    let classes: Vec<&RatFunc> = folded.terms().filter(|(_, f)| !f.vars().is_empty()).map(|(_, f)| f).collect();
    let policy = p(numeric_digits)?;
    let threshold = pow10(-10, 64);
    let bases = base_values(eq, kernel.seed, 2, &policy)?;
    let found = classes
        .par_iter()
        .map(|f| -> Result<(bool, bool)> {
            let mut s = eq.sum.clone();
            s.add_term(rat(1, 1), (*f).clone());
            let kv = kernel_test(&s, &kernel)?;
            let added = FormalSum::single(1, (*f).clone());
            let mut seen = false;
            for (point, base) in &bases {
                let v = base + &added.cl_eval(eq.weight, point, &policy)?;
                seen |= v.abs() > threshold;
            }
            Ok((!kv.passed && kv.witness.is_some(), seen))
        })
        .collect::<Result<Vec<_>>>()?;
    let k = found.iter().filter(|r| r.0).count();
    let n = found.iter().filter(|r| r.1).count();
    Ok((classes.len(), k, n))
}

fn negative_controls(seed: u64) -> Result<Outcome> {
    let mut o = Outcome::default();
    let runs = [("xi7", "xi7-explicit", KernelTestConfig::new(7, 8, 3, seed)), ("goncharov22", "goncharov22", KernelTestConfig::new(3, 10, 5, seed))];
    for (label, name, cfg) in runs {
        let eq = build(name)?;
        let (total, by_kernel, by_numeric) = perturbations(&eq, cfg, 30)?;
        let detail = json!({ "perturbed_classes": total, "kernel_witnesses": by_kernel, "numeric_above_1e-10": by_numeric });
        o.part(&format!("{label}_kernel"), total > 0 && by_kernel == total, detail.clone());
        o.part(&format!("{label}_numeric"), total > 0 && by_numeric == total, detail);
    }
    Ok(o)
}
