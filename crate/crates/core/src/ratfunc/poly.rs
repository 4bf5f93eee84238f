//! Sparse multivariate polynomials over Q.
//!
//! Monomials are packed into a `u128`: up to eight variables, sixteen bits of
//! exponent each, the first variable of the (sorted) variable list in the most
//! significant slot. Comparing `(total degree, packed)` is then exactly the
//! graded lexicographic order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rug::{Integer, Rational};

use crate::exact::format_rational;

pub const MAX_VARS: usize = 12;
const SLOT: u32 = 10;
const SLOT_MASK: u128 = 0x3ff;

/// Sorted, duplicate-free list of variable names.
pub type VarList = Arc<Vec<String>>;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub u128);

impl Mono {
    pub const ONE: Mono = Mono(0);

    #[inline]
    fn shift(i: usize) -> u32 {
        (MAX_VARS - 1 - i) as u32 * SLOT
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> Self::shift(i)) & SLOT_MASK) as u32
    }

    pub fn from_exps(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        let mut m = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= SLOT_MASK as u32, "exponent {e} too large");
            m |= (e as u128) << Self::shift(i);
        }
        Mono(m)
    }

    /// Same monomial with the exponent of variable `i` replaced.
    pub fn with_exp(self, i: usize, e: u32) -> Mono {
        let cleared = self.0 & !(SLOT_MASK << Self::shift(i));
        Mono(cleared | ((e as u128) << Self::shift(i)))
    }

    pub fn single(i: usize, e: u32) -> Mono {
        let mut exps = [0u32; MAX_VARS];
        exps[i] = e;
        Mono::from_exps(&exps)
    }

    #[inline]
    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|i| self.exp(i)).sum()
    }

    #[inline]
    pub fn mul(self, other: Mono) -> Mono {
        debug_assert!((0..MAX_VARS).all(|i| self.exp(i) + other.exp(i) <= SLOT_MASK as u32));
        Mono(self.0 + other.0)
    }

    /// `self / other` when every exponent of `other` is at most that of `self`.
    pub fn div(self, other: Mono) -> Option<Mono> {
        if (0..MAX_VARS).all(|i| self.exp(i) >= other.exp(i)) {
            Some(Mono(self.0 - other.0))
        } else {
            None
        }
    }

    pub fn min(self, other: Mono) -> Mono {
        let exps: Vec<u32> = (0..MAX_VARS).map(|i| self.exp(i).min(other.exp(i))).collect();
        Mono::from_exps(&exps)
    }

    fn remap(self, map: &[usize]) -> Mono {
        let mut out = 0u128;
        for (i, &j) in map.iter().enumerate() {
            let e = self.exp(i) as u128;
            if e != 0 {
                out |= e << Mono::shift(j);
            }
        }
        Mono(out)
    }

    /// Graded lexicographic comparison.
    #[inline]
    pub fn grlex(self, other: Mono) -> Ordering {
        self.degree().cmp(&other.degree()).then(self.0.cmp(&other.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Mono,
    pub coeff: Rational,
}

/// A polynomial in canonical form: no zero coefficients, terms in decreasing
/// graded lexicographic order, and only variables that actually occur.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: VarList,
    terms: Vec<Term>,
}

fn empty_vars() -> VarList {
    thread_local! {
        static EMPTY: VarList = Arc::new(Vec::new());
    }
    EMPTY.with(|e| e.clone())
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: empty_vars(),
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::from(1))
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        let c = c.into();
        if c == 0 {
            return Self::zero();
        }
        MultiPoly {
            vars: empty_vars(),
            terms: vec![Term { mono: Mono::ONE, coeff: c }],
        }
    }

    pub fn var(name: &str) -> Self {
        MultiPoly {
            vars: Arc::new(vec![name.to_string()]),
            terms: vec![Term {
                mono: Mono::single(0, 1),
                coeff: Rational::from(1),
            }],
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(vars: VarList, terms: impl IntoIterator<Item = (Mono, Rational)>) -> Self {
        let mut acc: HashMap<u128, Rational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m.0).or_default() += c;
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(m, coeff)| Term { mono: Mono(m), coeff })
            .collect();
        Self::canonical(vars, terms)
    }

    fn canonical(vars: VarList, mut terms: Vec<Term>) -> Self {
        terms.sort_unstable_by(|a, b| b.mono.grlex(a.mono));
        MultiPoly { vars, terms }.pruned()
    }

    fn pruned(mut self) -> Self {
        let n = self.vars.len();
        if n == 0 {
            return self;
        }
        let mut used = vec![false; n];
        for t in &self.terms {
            for (i, u) in used.iter_mut().enumerate() {
                if !*u && t.mono.exp(i) != 0 {
                    *u = true;
                }
            }
            if used.iter().all(|&u| u) {
                return self;
            }
        }
        if self.terms.is_empty() {
            self.vars = empty_vars();
            return self;
        }
        let kept: Vec<String> = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let mut map = vec![0usize; n];
        let mut k = 0;
        for i in 0..n {
            if used[i] {
                map[i] = k;
                k += 1;
            }
        }
        for t in &mut self.terms {
            t.mono = t.mono.remap(&map);
        }
        self.vars = Arc::new(kept);
        self
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::new())
        } else if self.is_constant() {
            Some(self.terms[0].coeff.clone())
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.mono.degree())
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    /// Degree in one variable (0 if absent).
    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(i) => self.terms.iter().map(|t| t.mono.exp(i)).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Exponents of term `t` as (variable name, exponent) pairs.
    pub fn exponents<'a>(&'a self, mono: Mono) -> impl Iterator<Item = (&'a str, u32)> + 'a {
        self.vars
            .iter()
            .enumerate()
            .map(move |(i, v)| (v.as_str(), mono.exp(i)))
            .filter(|&(_, e)| e != 0)
    }

    /// Re-expresses `self` over a superset `vars` of its variables (not pruned).
    pub(crate) fn terms_over(&self, vars: &VarList) -> Vec<Term> {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return self.terms.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("superset of variables"))
            .collect();
        self.terms
            .iter()
            .map(|t| Term {
                mono: t.mono.remap(&map),
                coeff: t.coeff.clone(),
            })
            .collect()
    }

    pub(crate) fn union_vars(a: &VarList, b: &VarList) -> VarList {
        if Arc::ptr_eq(a, b) || a == b {
            return a.clone();
        }
        if b.is_empty() {
            return a.clone();
        }
        if a.is_empty() {
            return b.clone();
        }
        let mut v: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
        v.sort();
        v.dedup();
        assert!(v.len() <= MAX_VARS, "at most {MAX_VARS} variables are supported, got {v:?}");
        Arc::new(v)
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let vars = Self::union_vars(&self.vars, &other.vars);
        let a = self.terms_over(&vars);
        let b = other.terms_over(&vars);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].mono.grlex(b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = Rational::from(&a[i].coeff + &b[j].coeff);
                    if c != 0 {
                        out.push(Term { mono: a[i].mono, coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        MultiPoly { vars, terms: out }.pruned()
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono,
                    coeff: Rational::from(-&t.coeff),
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if *c == 0 {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono,
                    coeff: Rational::from(&t.coeff * c),
                })
                .collect(),
        }
    }

    /// Multiplies by a monomial given over this polynomial's own variables.
    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        let vars = Self::union_vars(&self.vars, &other.vars);
        let a = self.terms_over(&vars);
        let b = other.terms_over(&vars);
        // Integer products with one common denominator are much cheaper than
        // rational products term by term.
        let (ai, ad) = integer_form(&a);
        let (bi, bd) = integer_form(&b);
        let mut acc: HashMap<u128, Integer> = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
        for (ma, ca) in &ai {
            for (mb, cb) in &bi {
                let e = acc.entry(ma.mul(*mb).0).or_default();
                *e += ca * cb;
            }
        }
        let den = ad * bd;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(m, c)| Term {
                mono: Mono(m),
                coeff: Rational::from((c, den.clone())),
            })
            .collect();
        Self::canonical(vars, terms)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Gcd of numerators over lcm of denominators, with the sign of the
    /// leading coefficient: dividing by it leaves a primitive integer
    /// polynomial with positive leading coefficient.
    pub fn content(&self) -> Rational {
        let Some(lead) = self.terms.first() else {
            return Rational::from(1);
        };
        let mut g = Integer::new();
        let mut l = Integer::from(1);
        for t in &self.terms {
            g.gcd_mut(t.coeff.numer());
            l.lcm_mut(t.coeff.denom());
        }
        if lead.coeff < 0 {
            g = -g;
        }
        Rational::from((g, l))
    }

    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        if c == 1 {
            return self.clone();
        }
        self.scale(&Rational::from(c.recip_ref()))
    }

    /// Componentwise minimum of all exponents (the monomial content).
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else {
            return Mono::ONE;
        };
        it.fold(first.mono, |acc, t| acc.min(t.mono))
    }

    /// Formal partial derivative.
    pub fn derivative(&self, name: &str) -> MultiPoly {
        let Some(i) = self.var_index(name) else {
            return MultiPoly::zero();
        };
        let unit = Mono::single(i, 1);
        let terms = self.terms.iter().filter_map(|t| {
            let e = t.mono.exp(i);
            (e > 0).then(|| (t.mono.div(unit).unwrap(), Rational::from(&t.coeff * e)))
        });
        MultiPoly::from_terms(self.vars.clone(), terms)
    }

    /// Reorders the variable list after renaming; used by the parser and by
    /// callers that rename variables.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> MultiPoly {
        let names: Vec<String> = self.vars.iter().map(|v| f(v)).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        let vars: VarList = Arc::new(sorted);
        let map: Vec<usize> = names.iter().map(|n| vars.binary_search(n).unwrap()).collect();
        let terms = self.terms.iter().map(|t| (t.mono.remap(&map), t.coeff.clone()));
        MultiPoly::from_terms(vars, terms)
    }
}

fn integer_form(terms: &[Term]) -> (Vec<(Mono, Integer)>, Integer) {
    let mut l = Integer::from(1);
    for t in terms {
        l.lcm_mut(t.coeff.denom());
    }
    let out = terms
        .iter()
        .map(|t| {
            let k = Integer::from(&l / t.coeff.denom());
            (t.mono, k * t.coeff.numer())
        })
        .collect();
    (out, l)
}

fn fmt_mono(p: &MultiPoly, m: Mono) -> String {
    let parts: Vec<String> = p
        .exponents(m)
        .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff < 0;
            let abs = Rational::from(t.coeff.abs_ref());
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = fmt_mono(self, t.mono);
            if mono.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs == 1 {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn x() -> MultiPoly {
        MultiPoly::var("x")
    }
    fn y() -> MultiPoly {
        MultiPoly::var("y")
    }

    #[test]
    fn grlex_and_display() {
        let p = x().mul(&x()).add(&y()).add(&MultiPoly::constant(rat(-3, 2))).add(&x().mul(&y()));
        assert_eq!(p.to_string(), "x^2 + x*y + y - 3/2");
    }

    #[test]
    fn cancellation_prunes_variables() {
        let p = x().add(&y()).sub(&y());
        assert_eq!(p, x());
        assert_eq!(p.vars().len(), 1);
        assert!(x().sub(&x()).is_zero());
    }

    #[test]
    fn binomial_expansion() {
        let p = x().add(&MultiPoly::one()).pow(5);
        let coeffs: Vec<i64> = p.terms().iter().map(|t| t.coeff.to_f64() as i64).collect();
        assert_eq!(coeffs, vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(p.degree_in("x"), 5);
        assert_eq!(p.degree_in("y"), 0);
    }

    #[test]
    fn content_and_derivative() {
        let p = x().scale(&rat(-4, 3)).add(&MultiPoly::constant(rat(2, 1)));
        assert_eq!(p.content(), rat(-2, 3));
        assert_eq!(p.primitive().to_string(), "2*x - 3");
        let d = x().pow(3).mul(&y()).derivative("x");
        assert_eq!(d.to_string(), "3*x^2*y");
    }
}
