//! Rational functions kept as unreduced numerator/denominator pairs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops;
use std::sync::{Arc, OnceLock};

use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use super::gcd::{div_exact, gcd};
use super::poly::{Mono, MultiPoly, Term, VarList};
use crate::error::{Error, Result};
use crate::exact::{mulmod, powmod, rational_mod, splitmix64};

/// Prime used for fingerprints.
pub const FINGERPRINT_PRIME: u64 = (1 << 61) - 1;

/// Value of a rational function at a fixed pseudo-random point modulo
/// [`FINGERPRINT_PRIME`], seen projectively.
///
/// Equivalent functions always have equal fingerprints unless one of them is
/// `Unknown`, so distinct fingerprints prove inequivalence.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Fingerprint {
    Value(u64),
    Infinity,
    Unknown,
}

/// Result of evaluating at a point.
#[derive(Clone, Debug, PartialEq)]
pub enum Evaluation<T> {
    Value(T),
    /// Denominator vanishes, numerator does not.
    Pole,
    /// Both vanish.
    Indeterminate,
}

impl<T> Evaluation<T> {
    pub fn value(self) -> Option<T> {
        match self {
            Evaluation::Value(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
    fp: OnceLock<Fingerprint>,
}

fn point_value(name: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    2 + splitmix64(h) % (FINGERPRINT_PRIME - 3)
}

fn poly_mod(p: &MultiPoly) -> Option<u64> {
    let pts: Vec<u64> = p.vars().iter().map(|v| point_value(v)).collect();
    let mut acc = 0u64;
    for t in p.terms() {
        let mut v = rational_mod(&t.coeff, FINGERPRINT_PRIME)?;
        for (i, &x) in pts.iter().enumerate() {
            let e = t.mono.exp(i);
            if e > 0 {
                v = mulmod(v, powmod(x, e as u64, FINGERPRINT_PRIME), FINGERPRINT_PRIME);
            }
        }
        acc = (acc + v) % FINGERPRINT_PRIME;
    }
    Some(acc)
}

impl RatFunc {
    /// `num / den`; fails if `den` is the zero polynomial.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn raw(num: MultiPoly, den: MultiPoly) -> Self {
        RatFunc {
            num,
            den,
            fp: OnceLock::new(),
        }
    }

    /// Removes the common monomial factor and makes the denominator a
    /// primitive integer polynomial with positive leading coefficient.
    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::raw(num, MultiPoly::one());
        }
        let (mut num, mut den) = (num, den);
        if !num.is_constant() && !den.is_constant() {
            let vars = MultiPoly::union_vars(num.vars(), den.vars());
            let mn = min_exps(&num, &vars);
            let md = min_exps(&den, &vars);
            let common: Vec<u32> = mn.iter().zip(&md).map(|(a, b)| *a.min(b)).collect();
            if common.iter().any(|&e| e > 0) {
                num = strip(&num, &vars, &common);
                den = strip(&den, &vars, &common);
            }
        }
        let c = den.content();
        if c != 1 {
            let inv = Rational::from(c.recip_ref());
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self::raw(num, den)
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self::raw(p, MultiPoly::one())
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(MultiPoly::var(name))
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    /// Sorted variables of numerator and denominator together.
    pub fn vars(&self) -> VarList {
        MultiPoly::union_vars(self.num.vars(), self.den.vars())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value when numerator and denominator are both constant.
    /// Misses unreduced forms such as `2*p/p`; see
    /// [`RatFunc::constant_value_exact`].
    pub fn constant_value(&self) -> Option<Rational> {
        match (self.num.constant_value(), self.den.constant_value()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    /// Constant value, detecting constants hidden by a common factor.
    pub fn constant_value_exact(&self) -> Option<Rational> {
        if let Some(c) = self.constant_value() {
            return Some(c);
        }
        let lead_n = self.num.leading()?;
        let lead_d = self.den.leading()?;
        if lead_n.mono != lead_d.mono || self.num.len() != self.den.len() {
            return None;
        }
        let c = Rational::from(&lead_n.coeff / &lead_d.coeff);
        (self.den.scale(&c) == self.num).then_some(c)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        *self.fp.get_or_init(|| {
            let n = poly_mod(&self.num);
            let d = poly_mod(&self.den);
            match (n, d) {
                (Some(0), Some(0)) | (None, _) | (_, None) => Fingerprint::Unknown,
                (Some(_), Some(0)) => Fingerprint::Infinity,
                (Some(n), Some(d)) => Fingerprint::Value(mulmod(
                    n,
                    crate::exact::invmod(d, FINGERPRINT_PRIME),
                    FINGERPRINT_PRIME,
                )),
            }
        })
    }

    /// A key shared by `f` and `1/f`.
    pub fn inversion_key(&self) -> Fingerprint {
        match self.fingerprint() {
            Fingerprint::Value(0) | Fingerprint::Infinity => Fingerprint::Infinity,
            Fingerprint::Value(v) => {
                let w = crate::exact::invmod(v, FINGERPRINT_PRIME);
                Fingerprint::Value(v.min(w))
            }
            Fingerprint::Unknown => Fingerprint::Unknown,
        }
    }

    /// Equality as rational functions, decided by cross-multiplication.
    pub fn equivalent(&self, other: &RatFunc) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        let (a, b) = (self.fingerprint(), other.fingerprint());
        if a != Fingerprint::Unknown && b != Fingerprint::Unknown && a != b {
            return false;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// `self ≡ other` or `self ≡ 1/other`.
    pub fn equivalent_up_to_inversion(&self, other: &RatFunc) -> bool {
        if self.equivalent(other) {
            return true;
        }
        if other.is_zero() || self.is_zero() {
            return false;
        }
        self.num.mul(&other.num) == other.den.mul(&self.den)
    }

    pub fn neg(&self) -> RatFunc {
        Self::raw(self.num.neg(), self.den.clone())
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Self::raw(base.num.pow(k), base.den.pow(k)))
    }

    /// `1 - self`.
    pub fn one_minus(&self) -> RatFunc {
        RatFunc::one().sub(self)
    }

    /// Cancels the polynomial gcd of numerator and denominator.
    pub fn reduce(&self) -> RatFunc {
        let g = gcd(&self.num, &self.den);
        if g.is_constant() {
            return self.clone();
        }
        let n = div_exact(&self.num, &g).expect("gcd divides numerator");
        let d = div_exact(&self.den, &g).expect("gcd divides denominator");
        Self::normalized(n, d)
    }

    /// Partial derivative, by the quotient rule.
    pub fn derivative(&self, var: &str) -> RatFunc {
        let dn = self.num.derivative(var);
        let dd = self.den.derivative(var);
        if dd.is_zero() {
            return Self::normalized(dn, self.den.clone());
        }
        Self::normalized(
            dn.mul(&self.den).sub(&self.num.mul(&dd)),
            self.den.mul(&self.den),
        )
    }

    /// Whether the function does not depend on `var`.
    pub fn is_free_of(&self, var: &str) -> bool {
        if self.num.var_index(var).is_none() && self.den.var_index(var).is_none() {
            return true;
        }
        let dn = self.num.derivative(var);
        let dd = self.den.derivative(var);
        dn.mul(&self.den) == self.num.mul(&dd)
    }

    /// Composition: every bound variable is replaced by its image; unbound
    /// variables are left alone. Fails only if the resulting denominator is
    /// identically zero.
    pub fn substitute(&self, binding: &BTreeMap<String, RatFunc>) -> Result<RatFunc> {
        let names: Vec<String> = self
            .vars()
            .iter()
            .filter(|v| binding.contains_key(*v))
            .cloned()
            .collect();
        if names.is_empty() {
            return Ok(self.clone());
        }
        let mut subs = Substitution::new(binding, &names, &self.num, &self.den);
        let (pn, dp) = subs.apply(&self.num);
        let (qn, dq) = subs.apply(&self.den);
        let mut num = pn;
        let mut den = qn;
        for (k, name) in names.iter().enumerate() {
            let d = &binding[name].den;
            if d.is_constant() {
                continue;
            }
            let diff = dq[k] as i64 - dp[k] as i64;
            if diff > 0 {
                num = num.mul(&subs.den_pow(k, diff as u32));
            } else if diff < 0 {
                den = den.mul(&subs.den_pow(k, (-diff) as u32));
            }
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, point: &BTreeMap<String, Rational>) -> Result<Evaluation<Rational>> {
        let n = eval_poly_rational(&self.num, point)?;
        let d = eval_poly_rational(&self.den, point)?;
        Ok(match (n == 0, d == 0) {
            (true, true) => Evaluation::Indeterminate,
            (false, true) => Evaluation::Pole,
            _ => Evaluation::Value(n / d),
        })
    }

    /// Evaluation at a complex point with `prec` bits of working precision.
    /// The precision is raised internally until cancellation in the sums
    /// no longer eats into the requested bits.
    pub fn eval_complex(&self, point: &BTreeMap<String, Complex>, prec: u32) -> Result<Evaluation<Complex>> {
        let n = eval_poly_complex(&self.num, point, prec)?;
        let d = eval_poly_complex(&self.den, point, prec)?;
        Ok(match (n.is_zero(), d.is_zero()) {
            (true, true) => Evaluation::Indeterminate,
            (false, true) => Evaluation::Pole,
            _ => Evaluation::Value(Complex::with_val(prec, &n / &d)),
        })
    }
}

fn min_exps(p: &MultiPoly, vars: &VarList) -> Vec<u32> {
    let terms = p.terms_over(vars);
    (0..vars.len())
        .map(|i| terms.iter().map(|t| t.mono.exp(i)).min().unwrap_or(0))
        .collect()
}

fn strip(p: &MultiPoly, vars: &VarList, exps: &[u32]) -> MultiPoly {
    let m = Mono::from_exps(exps);
    let terms = p.terms_over(vars).into_iter().map(|t: Term| (t.mono.div(m).unwrap(), t.coeff));
    MultiPoly::from_terms(vars.clone(), terms)
}

/// Cached powers of the numerators and denominators of the images.
struct Substitution<'a> {
    names: &'a [String],
    nums: Vec<Vec<MultiPoly>>,
    dens: Vec<Vec<MultiPoly>>,
    images: Vec<&'a RatFunc>,
    out_vars: VarList,
}

impl<'a> Substitution<'a> {
    fn new(binding: &'a BTreeMap<String, RatFunc>, names: &'a [String], p: &MultiPoly, q: &MultiPoly) -> Self {
        let images: Vec<&RatFunc> = names.iter().map(|n| &binding[n]).collect();
        let mut out: VarList = Arc::new(Vec::new());
        for v in p.vars().iter().chain(q.vars().iter()) {
            if !binding.contains_key(v) {
                out = MultiPoly::union_vars(&out, &Arc::new(vec![v.clone()]));
            }
        }
        for f in &images {
            out = MultiPoly::union_vars(&out, f.num.vars());
            out = MultiPoly::union_vars(&out, f.den.vars());
        }
        Substitution {
            names,
            nums: vec![vec![MultiPoly::one()]; names.len()],
            dens: vec![vec![MultiPoly::one()]; names.len()],
            images,
            out_vars: out,
        }
    }

    fn num_pow(&mut self, k: usize, e: u32) -> MultiPoly {
        let cache = &mut self.nums[k];
        while cache.len() <= e as usize {
            let next = cache.last().unwrap().mul(&self.images[k].num);
            cache.push(next);
        }
        cache[e as usize].clone()
    }

    fn den_pow(&mut self, k: usize, e: u32) -> MultiPoly {
        let cache = &mut self.dens[k];
        while cache.len() <= e as usize {
            let next = cache.last().unwrap().mul(&self.images[k].den);
            cache.push(next);
        }
        cache[e as usize].clone()
    }

    /// Numerator of `p` under the substitution, and for each bound variable
    /// the power of its image denominator that was cleared.
    fn apply(&mut self, p: &MultiPoly) -> (MultiPoly, Vec<u32>) {
        let idx: Vec<Option<usize>> = self.names.iter().map(|n| p.var_index(n)).collect();
        let degs: Vec<u32> = self.names.iter().map(|n| p.degree_in(n)).collect();
        let free: Vec<(usize, String)> = p
            .vars()
            .iter()
            .enumerate()
            .filter(|(_, v)| !self.names.contains(v))
            .map(|(i, v)| (i, v.clone()))
            .collect();
        let mut acc: HashMap<u128, Rational> = HashMap::new();
        let out_vars = self.out_vars.clone();
        for t in p.terms() {
            let mut prod = MultiPoly::constant(t.coeff.clone());
            for (k, ix) in idx.iter().enumerate() {
                let e = ix.map_or(0, |i| t.mono.exp(i));
                if e > 0 {
                    prod = prod.mul(&self.num_pow(k, e));
                }
                let de = degs[k] - e;
                if de > 0 && !self.images[k].den.is_one() {
                    prod = prod.mul(&self.den_pow(k, de));
                }
            }
            for (i, v) in &free {
                let e = t.mono.exp(*i);
                if e > 0 {
                    prod = prod.mul(&MultiPoly::var(v).pow(e));
                }
            }
            for term in prod.terms_over(&out_vars) {
                *acc.entry(term.mono.0).or_default() += term.coeff;
            }
        }
        let poly = MultiPoly::from_terms(out_vars, acc.into_iter().map(|(m, c)| (Mono(m), c)));
        let cleared = degs
            .iter()
            .enumerate()
            .map(|(k, &d)| if self.images[k].den.is_one() { 0 } else { d })
            .collect();
        (poly, cleared)
    }
}

impl MultiPoly {
    fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c == 1)
    }
}

fn lookup<'a, T>(point: &'a BTreeMap<String, T>, v: &str) -> Result<&'a T> {
    point.get(v).ok_or_else(|| Error::Unknown {
        kind: "variable",
        name: v.to_string(),
    })
}

pub(crate) fn eval_poly_rational(p: &MultiPoly, point: &BTreeMap<String, Rational>) -> Result<Rational> {
    let vals: Vec<&Rational> = p.vars().iter().map(|v| lookup(point, v)).collect::<Result<_>>()?;
    let mut acc = Rational::new();
    for t in p.terms() {
        let mut term = t.coeff.clone();
        for (i, x) in vals.iter().enumerate() {
            let e = t.mono.exp(i);
            if e > 0 {
                term *= Rational::from((*x).pow(e));
            }
        }
        acc += term;
    }
    Ok(acc)
}

/// Sum of the terms at `bits` of precision, plus the largest term magnitude
/// as a base-2 exponent (for cancellation control).
fn eval_poly_complex_at(p: &MultiPoly, vals: &[&Complex], bits: u32) -> (Complex, i64) {
    let mut acc = Complex::new(bits);
    let mut biggest = i64::MIN;
    for t in p.terms() {
        let mut term = Complex::with_val(bits, Float::with_val(bits, &t.coeff));
        for (i, x) in vals.iter().enumerate() {
            let e = t.mono.exp(i);
            if e > 0 {
                let xp = Complex::with_val(bits, (*x).pow(e));
                term *= xp;
            }
        }
        if let Some(ex) = magnitude_exp(&term) {
            biggest = biggest.max(ex);
        }
        acc += term;
    }
    (acc, biggest)
}

pub(crate) fn magnitude_exp(z: &Complex) -> Option<i64> {
    let a = z.real().get_exp().map(i64::from);
    let b = z.imag().get_exp().map(i64::from);
    match (a, b) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (x, None) => x,
        (None, y) => y,
    }
}

pub(crate) fn eval_poly_complex(p: &MultiPoly, point: &BTreeMap<String, Complex>, prec: u32) -> Result<Complex> {
    let vals: Vec<&Complex> = p.vars().iter().map(|v| lookup(point, v)).collect::<Result<_>>()?;
    let mut guard = 32u32;
    loop {
        let bits = prec + guard;
        let (v, biggest) = eval_poly_complex_at(p, &vals, bits);
        if v.is_zero() && biggest == i64::MIN {
            return Ok(Complex::new(prec));
        }
        // Bits lost to cancellation = biggest term exponent - result exponent.
        let lost = match magnitude_exp(&v) {
            Some(e) => (biggest - e).max(0) as u32,
            None => u32::MAX,
        };
        if lost + 8 < guard || guard > 8 * prec + 512 {
            return Ok(Complex::with_val(prec, v));
        }
        guard = guard.saturating_mul(2).max(lost.saturating_add(32).min(8 * prec + 1024));
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.equivalent(other)
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::constant(c)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

impl ops::Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::add(self, rhs)
    }
}

impl ops::Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::sub(self, rhs)
    }
}

impl ops::Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::mul(self, rhs)
    }
}

impl ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atomic = |p: &MultiPoly| p.len() == 1 && p.terms()[0].coeff >= 0;
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if atomic(&self.num) && self.num.terms()[0].coeff.is_integer() {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        let single_factor = |p: &MultiPoly| p.exponents(p.terms()[0].mono).count() == 1;
        if atomic(&self.den) && self.den.terms()[0].coeff == 1 && single_factor(&self.den) {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

/// A point of the projective line over the function field.
#[derive(Clone, Debug, PartialEq)]
pub enum ProjectiveValue {
    Finite(RatFunc),
    Infinity,
}

impl ProjectiveValue {
    fn homogeneous(&self) -> (RatFunc, RatFunc) {
        match self {
            ProjectiveValue::Finite(f) => (f.clone(), RatFunc::one()),
            ProjectiveValue::Infinity => (RatFunc::one(), RatFunc::zero()),
        }
    }
}

impl From<RatFunc> for ProjectiveValue {
    fn from(f: RatFunc) -> Self {
        ProjectiveValue::Finite(f)
    }
}

impl fmt::Display for ProjectiveValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectiveValue::Finite(v) => write!(f, "{v}"),
            ProjectiveValue::Infinity => write!(f, "oo"),
        }
    }
}

/// `(x - z)(y - w) / ((x - w)(y - z))` on the projective line, computed with
/// homogeneous coordinates so that any argument may be infinite.
pub fn cross_ratio(
    x: &ProjectiveValue,
    y: &ProjectiveValue,
    z: &ProjectiveValue,
    w: &ProjectiveValue,
) -> Result<ProjectiveValue> {
    let det = |a: &ProjectiveValue, b: &ProjectiveValue| {
        let (ap, aq) = a.homogeneous();
        let (bp, bq) = b.homogeneous();
        ap.mul(&bq).sub(&bp.mul(&aq))
    };
    let top = det(x, z).mul(&det(y, w));
    let bottom = det(x, w).mul(&det(y, z));
    match (top.is_zero(), bottom.is_zero()) {
        (true, true) => Err(Error::Domain("cross-ratio of coincident points".into())),
        (false, true) => Ok(ProjectiveValue::Infinity),
        _ => Ok(ProjectiveValue::Finite(top.div(&bottom)?)),
    }
}

/// Rounds an exact rational into a complex number of the given precision.
pub fn rational_to_complex(q: &Rational, prec: u32) -> Complex {
    Complex::with_val(prec, Float::with_val(prec, q))
}
