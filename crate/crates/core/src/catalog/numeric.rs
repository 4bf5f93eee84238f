//! Numerical verification: random sampling of the variables, root finding
//! for preimages, and evaluation of the relevant `CL_m` combinations.

use std::collections::BTreeMap;

use rayon::prelude::*;
use rug::{Complex, Float, Rational};
use serde::Serialize;

use super::EquationSpec;
use crate::error::{Error, Result};
use crate::exact::Sampler;
use crate::numeric::{cl_apply, poly_roots, pow10, BigComplex, ClArg, PrecisionPolicy};
use crate::ratfunc::{coeffs_in, Evaluation, RatFunc};

/// Draws per sample point before giving up on a degenerate configuration.
const MAX_DRAWS: usize = 64;

/// Sampling parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NumericOptions {
    pub points: usize,
    pub seed: u64,
    /// Pass threshold `10^(-tolerance_digits)`.
    pub tolerance_digits: u32,
}

impl NumericOptions {
    pub fn new(points: usize, seed: u64, tolerance_digits: u32) -> Self {
        NumericOptions { points, seed, tolerance_digits }
    }
}

/// Outcome of a numerical check.
#[derive(Clone, Debug, Serialize)]
pub struct NumericVerdict {
    pub passed: bool,
    pub samples: usize,
    /// Largest `|value|` seen, in scientific notation.
    pub max_abs: String,
    pub tolerance: String,
    /// Extra draws caused by degenerate sample points.
    pub resamples: usize,
    /// Variable values at the worst sample.
    pub worst_point: BTreeMap<String, String>,
}

fn sci(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, Some(6))
}

fn tolerance(digits: u32) -> Float {
    pow10(-(digits as i32), 64)
}

fn summarize(
    values: Vec<(Float, BTreeMap<String, String>, usize)>,
    tol_digits: u32,
) -> NumericVerdict {
    let tol = tolerance(tol_digits);
    let samples = values.len();
    let resamples = values.iter().map(|v| v.2).sum();
    let worst = values.into_iter().max_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    let (max_abs, worst_point) = match worst {
        Some((v, p, _)) => (v, p),
        None => (Float::new(64), BTreeMap::new()),
    };
    NumericVerdict {
        passed: max_abs < tol,
        samples,
        max_abs: sci(&max_abs),
        tolerance: format!("1e-{tol_digits}"),
        resamples,
        worst_point,
    }
}

fn show(z: &Complex) -> String {
    BigComplex::from_complex(z.clone(), 20).to_string_digits(20)
}

/// A point in `0.2 < |z| < 5` with `|z - 1| >= 0.1`, log-uniform in radius.
pub fn sample_annulus(sampler: &mut Sampler, bits: u32) -> Complex {
    let (lo, hi) = (0.2f64.ln(), 5.0f64.ln());
    loop {
        let r = (lo + (hi - lo) * sampler.unit()).exp();
        let th = std::f64::consts::TAU * sampler.unit();
        let (re, im) = (r * th.cos(), r * th.sin());
        if ((re - 1.0).powi(2) + im * im).sqrt() >= 0.1 {
            return Complex::with_val(bits, (re, im));
        }
    }
}

fn abs_re(v: &BigComplex) -> Float {
    Float::with_val(64, v.re().abs_ref())
}

/// Samples the free variables of an equation and evaluates `CL_m` of the
/// sum. Templates with a root binding get their placeholders bound to roots.
pub fn verify_numeric(eq: &EquationSpec, opts: &NumericOptions, policy: &PrecisionPolicy) -> Result<NumericVerdict> {
    if let Some(b) = eq.binding {
        return verify_bound(eq, b.n, opts, policy);
    }
    let bits = policy.working_bits();
    let values = (0..opts.points)
        .into_par_iter()
        .map(|k| -> Result<(Float, BTreeMap<String, String>, usize)> {
            let mut sampler = Sampler::with_stream(opts.seed, k as u64);
            for draw in 0..MAX_DRAWS {
                let point: BTreeMap<String, Complex> =
                    eq.variables.iter().map(|v| (v.clone(), sample_annulus(&mut sampler, bits))).collect();
                match eq.sum.cl_eval(eq.weight, &point, policy) {
                    Ok(v) => {
                        let shown = point.iter().map(|(k, z)| (k.clone(), show(z))).collect();
                        return Ok((abs_re(&v), shown, draw));
                    }
                    Err(Error::Domain(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::Exhausted(format!("no usable sample point after {MAX_DRAWS} draws")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(values, opts.tolerance_digits))
}

/// Roots of `x^(n-1)(x-1) - t`.
fn fourlog_roots(n: usize, t: &Complex, policy: &PrecisionPolicy) -> Result<Vec<BigComplex>> {
    let digits = policy.digits + policy.guard;
    let mut coeffs = vec![BigComplex::zero(digits); n + 1];
    coeffs[0] = BigComplex::from_complex(-t.clone(), digits);
    coeffs[n - 1] = BigComplex::from_f64(-1.0, 0.0, digits);
    coeffs[n] = BigComplex::from_f64(1.0, 0.0, digits);
    poly_roots(&coeffs, policy)
}

fn verify_bound(eq: &EquationSpec, n: usize, opts: &NumericOptions, policy: &PrecisionPolicy) -> Result<NumericVerdict> {
    let bits = policy.working_bits();
    let values = (0..opts.points)
        .into_par_iter()
        .map(|k| -> Result<(Float, BTreeMap<String, String>, usize)> {
            let mut sampler = Sampler::with_stream(opts.seed, k as u64);
            for draw in 0..MAX_DRAWS {
                let t = sample_annulus(&mut sampler, bits);
                let u = sample_annulus(&mut sampler, bits);
                let (Ok(xs), Ok(ys)) = (fourlog_roots(n, &t, policy), fourlog_roots(n, &u, policy)) else {
                    continue;
                };
                let mut point = BTreeMap::new();
                for (i, (x, y)) in xs.iter().zip(&ys).enumerate() {
                    point.insert(format!("x{}", i + 1), Complex::with_val(bits, x.as_complex()));
                    point.insert(format!("y{}", i + 1), Complex::with_val(bits, y.as_complex()));
                }
                match eq.sum.cl_eval(eq.weight, &point, policy) {
                    Ok(v) => {
                        let shown = BTreeMap::from([("t".to_string(), show(&t)), ("u".to_string(), show(&u))]);
                        return Ok((abs_re(&v), shown, draw));
                    }
                    Err(Error::Domain(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::Exhausted(format!("no usable sample point after {MAX_DRAWS} draws")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(values, opts.tolerance_digits))
}

/// The weight-4 root family at `n`, sampled over `(t, u)`.
pub fn verify_fourlog_numeric(n: usize, opts: &NumericOptions, policy: &PrecisionPolicy) -> Result<NumericVerdict> {
    if !(2..=6).contains(&n) {
        return Err(Error::Domain(format!("the family is built for 2 <= n <= 6, got {n}")));
    }
    verify_numeric(&super::fourlog(n), opts, policy)
}

fn single_var(phi: &RatFunc) -> Result<String> {
    let vars = phi.vars();
    match vars.len() {
        1 => Ok(vars[0].clone()),
        _ => Err(Error::Domain(format!("expected a rational function of one variable, got {phi}"))),
    }
}

fn poly_coeffs(p: &crate::ratfunc::MultiPoly, var: &str, bits: u32) -> Result<Vec<Complex>> {
    coeffs_in(p, var)
        .into_iter()
        .map(|c| {
            c.constant_value()
                .map(|q| Complex::with_val(bits, Float::with_val(bits, &q)))
                .ok_or_else(|| Error::Domain(format!("coefficient {c} is not a number")))
        })
        .collect()
}

/// Preimages of `target` under `φ`, with multiplicity; infinity appears
/// `deg φ - deg(num - target*den)` times.
pub fn preimages(phi: &RatFunc, target: &ClArg, policy: &PrecisionPolicy) -> Result<Vec<ClArg>> {
    let var = single_var(phi)?;
    let bits = policy.working_bits();
    let digits = policy.digits + policy.guard;
    let num = poly_coeffs(phi.num(), &var, bits)?;
    let den = poly_coeffs(phi.den(), &var, bits)?;
    let deg = num.len().max(den.len()) - 1;
    let mut poly: Vec<Complex> = match target {
        ClArg::Infinity => den.clone(),
        ClArg::Finite(b) => {
            let b = Complex::with_val(bits, b.as_complex());
            (0..=deg)
                .map(|k| {
                    let n = num.get(k).cloned().unwrap_or_else(|| Complex::new(bits));
                    let d = den.get(k).cloned().unwrap_or_else(|| Complex::new(bits));
                    n - d * &b
                })
                .collect()
        }
    };
    while poly.len() > 1 && poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    let finite_deg = poly.len() - 1;
    let mut out: Vec<ClArg> = Vec::with_capacity(deg);
    if finite_deg >= 1 {
        let coeffs: Vec<BigComplex> = poly.into_iter().map(|c| BigComplex::from_complex(c, digits)).collect();
        out.extend(poly_roots(&coeffs, policy)?.into_iter().map(ClArg::Finite));
    } else if poly[0].is_zero() {
        return Err(Error::Domain("phi is constant on the target".into()));
    }
    out.extend(std::iter::repeat_n(ClArg::Infinity, deg - finite_deg));
    Ok(out)
}

fn homogeneous(p: &ClArg, bits: u32) -> (Complex, Complex) {
    match p {
        ClArg::Infinity => (Complex::with_val(bits, 1), Complex::new(bits)),
        ClArg::Finite(z) => (Complex::with_val(bits, z.as_complex()), Complex::with_val(bits, 1)),
    }
}

/// Numerical cross-ratio on the Riemann sphere; `None` for `0/0`.
fn cross_ratio_numeric(x: &ClArg, y: &ClArg, z: &ClArg, w: &ClArg, policy: &PrecisionPolicy) -> Option<ClArg> {
    let bits = policy.working_bits();
    let det = |a: &ClArg, b: &ClArg| {
        let (ap, aq) = homogeneous(a, bits);
        let (bp, bq) = homogeneous(b, bits);
        Complex::with_val(bits, &ap * &bq) - Complex::with_val(bits, &bp * &aq)
    };
    let top = det(x, z) * det(y, w);
    let bottom = det(x, w) * det(y, z);
    match (top.is_zero(), bottom.is_zero()) {
        (true, true) => None,
        (false, true) => Some(ClArg::Infinity),
        _ => Some(ClArg::Finite(BigComplex::from_complex(top / bottom, policy.digits + policy.guard))),
    }
}

fn eval_phi(phi: &RatFunc, x: &ClArg, policy: &PrecisionPolicy) -> Result<ClArg> {
    let var = single_var(phi)?;
    let bits = policy.working_bits();
    match x {
        ClArg::Infinity => {
            let num = poly_coeffs(phi.num(), &var, bits)?;
            let den = poly_coeffs(phi.den(), &var, bits)?;
            Ok(match num.len().cmp(&den.len()) {
                std::cmp::Ordering::Greater => ClArg::Infinity,
                std::cmp::Ordering::Less => ClArg::Finite(BigComplex::zero(policy.digits + policy.guard)),
                std::cmp::Ordering::Equal => ClArg::Finite(BigComplex::from_complex(
                    num.last().unwrap().clone() / den.last().unwrap(),
                    policy.digits + policy.guard,
                )),
            })
        }
        ClArg::Finite(z) => {
            let point = BTreeMap::from([(var, Complex::with_val(bits, z.as_complex()))]);
            match phi.eval_complex(&point, bits)? {
                Evaluation::Value(v) => Ok(ClArg::Finite(BigComplex::from_complex(v, policy.digits + policy.guard))),
                Evaluation::Pole => Ok(ClArg::Infinity),
                Evaluation::Indeterminate => Err(Error::Domain("phi is indeterminate at the point".into())),
            }
        }
    }
}

fn degree(phi: &RatFunc) -> Result<usize> {
    let var = single_var(phi)?;
    Ok(phi.num().degree_in(&var).max(phi.den().degree_in(&var)) as usize)
}

fn push_cr(terms: &mut Vec<(Rational, ClArg)>, c: Rational, pts: [&ClArg; 4], policy: &PrecisionPolicy) -> Result<()> {
    let v = cross_ratio_numeric(pts[0], pts[1], pts[2], pts[3], policy)
        .ok_or_else(|| Error::Domain("coincident points in a cross-ratio".into()))?;
    terms.push((c, v));
    Ok(())
}

fn finish(m: u32, terms: &[(Rational, ClArg)], tol_digits: u32, policy: &PrecisionPolicy) -> Result<NumericVerdict> {
    let v = cl_apply(m, terms, policy)?;
    Ok(summarize(vec![(abs_re(&v), BTreeMap::new(), 0)], tol_digits))
}

/// `sum_(β,γ,δ) CL_2(cr(α,β,γ,δ)) - deg(φ) CL_2(cr(A,B,C,D))` with
/// `A = φ(α)` and the sum over preimages of `B, C, D`.
pub fn verify_dilog_general(
    phi: &RatFunc,
    alpha: &ClArg,
    b: &ClArg,
    c: &ClArg,
    d: &ClArg,
    tol_digits: u32,
    policy: &PrecisionPolicy,
) -> Result<NumericVerdict> {
    let n = degree(phi)?;
    let a = eval_phi(phi, alpha, policy)?;
    let (pb, pc, pd) = (preimages(phi, b, policy)?, preimages(phi, c, policy)?, preimages(phi, d, policy)?);
    let mut terms = Vec::new();
    for beta in &pb {
        for gamma in &pc {
            for delta in &pd {
                push_cr(&mut terms, Rational::from(1), [alpha, beta, gamma, delta], policy)?;
            }
        }
    }
    push_cr(&mut terms, Rational::from(-(n as i64)), [&a, b, c, d], policy)?;
    finish(2, &terms, tol_digits, policy)
}

/// The alternating 16-fold trilogarithm sum over `A_i, B_j, C_k, D_l`
/// (`i,j,k,l` in `{1,2}`), each term comparing preimage cross-ratios with
/// `deg(φ)` times the cross-ratio of the images.
pub fn verify_trilog_theorem(
    phi: &RatFunc,
    a: [&ClArg; 2],
    b: [&ClArg; 2],
    c: [&ClArg; 2],
    d: [&ClArg; 2],
    tol_digits: u32,
    policy: &PrecisionPolicy,
) -> Result<NumericVerdict> {
    let n = degree(phi)? as i64;
    let pre = |ps: [&ClArg; 2]| -> Result<[Vec<ClArg>; 2]> { Ok([preimages(phi, ps[0], policy)?, preimages(phi, ps[1], policy)?]) };
    let (pa, pb, pc, pd) = (pre(a)?, pre(b)?, pre(c)?, pre(d)?);
    let mut terms = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let sign: i64 = if (i + j + k + l) % 2 == 0 { 1 } else { -1 };
                    for al in &pa[i] {
                        for be in &pb[j] {
                            for ga in &pc[k] {
                                for de in &pd[l] {
                                    push_cr(&mut terms, Rational::from(sign), [al, be, ga, de], policy)?;
                                }
                            }
                        }
                    }
                    push_cr(&mut terms, Rational::from(-sign * n), [a[i], b[j], c[k], d[l]], policy)?;
                }
            }
        }
    }
    finish(3, &terms, tol_digits, policy)
}

/// Left-hand side terms of the `x`-independence statement at one `x`.
fn wojtkowiak_terms(
    phi: &RatFunc,
    pre: [&[ClArg]; 3],
    abc: [&ClArg; 3],
    x: &ClArg,
    sign: i64,
    policy: &PrecisionPolicy,
    terms: &mut Vec<(Rational, ClArg)>,
) -> Result<()> {
    let [pa, pb, pc] = pre;
    let [a, b, c] = abc;
    let fx = eval_phi(phi, x, policy)?;
    push_cr(terms, Rational::from(sign), [&fx, c, b, a], policy)?;
    let groups: [(i64, &[ClArg], &[ClArg], &[ClArg]); 5] =
        [(-1, pc, pb, pa), (-1, pa, pa, pc), (-1, pb, pb, pc), (1, pa, pa, pb), (1, pb, pb, pa)];
    for (s, p, q, r) in groups {
        for y in p {
            for z in q {
                for w in r {
                    let coeff = Rational::from(sign * s);
                    match cross_ratio_numeric(x, y, z, w, policy) {
                        Some(v) => terms.push((coeff, v)),
                        None => return Err(Error::Domain("coincident points in a cross-ratio".into())),
                    }
                }
            }
        }
    }
    Ok(())
}

/// Difference of the `x`-independent combination at `x1` and `x2`.
#[allow(clippy::too_many_arguments)]
pub fn verify_wojtkowiak(
    phi: &RatFunc,
    a: &ClArg,
    b: &ClArg,
    c: &ClArg,
    x1: &ClArg,
    x2: &ClArg,
    tol_digits: u32,
    policy: &PrecisionPolicy,
) -> Result<NumericVerdict> {
    let (pa, pb, pc) = (preimages(phi, a, policy)?, preimages(phi, b, policy)?, preimages(phi, c, policy)?);
    let mut terms = Vec::new();
    wojtkowiak_terms(phi, [&pa, &pb, &pc], [a, b, c], x1, 1, policy, &mut terms)?;
    wojtkowiak_terms(phi, [&pa, &pb, &pc], [a, b, c], x2, -1, policy, &mut terms)?;
    finish(3, &terms, tol_digits, policy)
}
