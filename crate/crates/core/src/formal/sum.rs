use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use rug::{Complex, Rational};
use serde::{Deserialize, Serialize};

use super::Automorphism;
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational};
use crate::numeric::{cl_apply, BigComplex, ClArg, PrecisionPolicy};
use crate::ratfunc::{parse, Evaluation, Fingerprint, RatFunc};

/// `sum c_i [f_i]` with pairwise inequivalent arguments and nonzero
/// coefficients. Insertion order is kept.
///
/// Slots whose coefficient cancels to zero stay in the table (so a later
/// term with the same argument lands in the same place) but are invisible
/// to every accessor.
#[derive(Clone, Debug, Default)]
pub struct FormalSum {
    slots: Vec<(Rational, RatFunc)>,
    index: HashMap<Fingerprint, Vec<usize>>,
}

/// Serialized form of one term.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct JsonTerm {
    pub coeff: String,
    pub arg: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    Zero,
    One,
    Pole,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DroppedTerm {
    pub coeff: Rational,
    pub arg: RatFunc,
    pub kind: Degeneracy,
}

/// Outcome of [`FormalSum::specialize`].
#[derive(Clone, Debug)]
pub enum Specialization {
    /// All arguments are now constants. `dropped` lists the terms removed
    /// under `allow_degenerate`.
    Constants { sum: FormalSum, dropped: Vec<DroppedTerm> },
    /// Strict mode hit a degenerate argument; every offending term is listed.
    Degenerate(Vec<DroppedTerm>),
}

impl FormalSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(coeff: impl Into<Rational>, arg: RatFunc) -> Self {
        let mut s = Self::new();
        s.add_term(coeff.into(), arg);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, RatFunc)>) -> Self {
        let mut s = Self::new();
        for (c, f) in terms {
            s.add_term(c, f);
        }
        s
    }

    fn find(&self, f: &RatFunc) -> Option<usize> {
        let key = f.fingerprint();
        let check = |i: &usize| self.slots[*i].1.equivalent(f);
        if key != Fingerprint::Unknown {
            if let Some(i) = self.index.get(&key).and_then(|v| v.iter().copied().find(check)) {
                return Some(i);
            }
            return self
                .index
                .get(&Fingerprint::Unknown)
                .and_then(|v| v.iter().copied().find(check));
        }
        (0..self.slots.len()).find(check)
    }

    /// Adds `c [f]`, merging with an equivalent argument if present.
    pub fn add_term(&mut self, c: Rational, f: RatFunc) {
        if c == 0 {
            return;
        }
        if let Some(i) = self.find(&f) {
            self.slots[i].0 += c;
            return;
        }
        self.index.entry(f.fingerprint()).or_default().push(self.slots.len());
        self.slots.push((c, f));
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &RatFunc)> {
        self.slots.iter().filter(|(c, _)| *c != 0).map(|(c, f)| (c, f))
    }

    pub fn len(&self) -> usize {
        self.terms().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coefficient_of(&self, f: &RatFunc) -> Rational {
        self.find(f).map(|i| self.slots[i].0.clone()).unwrap_or_default()
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut s = self.compacted();
        for (c, f) in other.terms() {
            s.add_term(c.clone(), f.clone());
        }
        s
    }

    pub fn sub(&self, other: &FormalSum) -> FormalSum {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> FormalSum {
        if *k == 0 {
            return FormalSum::new();
        }
        FormalSum::from_terms(self.terms().map(|(c, f)| (Rational::from(c * k), f.clone())))
    }

    pub fn neg(&self) -> FormalSum {
        self.scale(&Rational::from(-1))
    }

    fn compacted(&self) -> FormalSum {
        if self.slots.iter().all(|(c, _)| *c != 0) {
            return self.clone();
        }
        FormalSum::from_terms(self.terms().map(|(c, f)| (c.clone(), f.clone())))
    }

    /// Applies a substitution to every argument.
    pub fn map_arguments(&self, sigma: &Automorphism) -> Result<FormalSum> {
        let images: Vec<(Rational, RatFunc)> = self
            .terms()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|(c, f)| Ok(((*c).clone(), sigma.apply(f)?)))
            .collect::<Result<_>>()?;
        Ok(FormalSum::from_terms(images))
    }

    /// Same as [`FormalSum::map_arguments`] with an explicit binding.
    pub fn substitute(&self, binding: &BTreeMap<String, RatFunc>) -> Result<FormalSum> {
        let images: Vec<(Rational, RatFunc)> = self
            .terms()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|(c, f)| Ok(((*c).clone(), f.substitute(binding)?)))
            .collect::<Result<_>>()?;
        Ok(FormalSum::from_terms(images))
    }

    /// Whether every argument is a constant function.
    pub fn is_constant_sum(&self) -> bool {
        self.terms().all(|(_, f)| is_constant_function(f))
    }

    /// Evaluates all arguments at a rational point. Non-constant arguments
    /// that become 0, 1, a pole or indeterminate are degenerate: in strict
    /// mode they are reported, otherwise dropped and listed.
    pub fn specialize(&self, binding: &BTreeMap<String, Rational>, allow_degenerate: bool) -> Result<Specialization> {
        let mut out = FormalSum::new();
        let mut dropped = Vec::new();
        for (c, f) in self.terms() {
            let was_constant = f.vars().is_empty();
            let kind = match f.eval_rational(binding)? {
                Evaluation::Value(v) => {
                    if !was_constant && (v == 0 || v == 1) {
                        Some(if v == 0 { Degeneracy::Zero } else { Degeneracy::One })
                    } else {
                        out.add_term(c.clone(), RatFunc::constant(v));
                        None
                    }
                }
                Evaluation::Pole => Some(Degeneracy::Pole),
                Evaluation::Indeterminate => Some(Degeneracy::Indeterminate),
            };
            if let Some(kind) = kind {
                dropped.push(DroppedTerm {
                    coeff: c.clone(),
                    arg: f.clone(),
                    kind,
                });
            }
        }
        if !dropped.is_empty() && !allow_degenerate {
            return Ok(Specialization::Degenerate(dropped));
        }
        Ok(Specialization::Constants { sum: out, dropped })
    }

    /// Number of classes of non-constant arguments modulo `f ~ 1/f`.
    pub fn count_distinct_up_to_inversion(&self) -> usize {
        self.inversion_classes().len()
    }

    /// Classes of non-constant arguments modulo inversion; each class lists
    /// indices into `terms()`.
    pub fn inversion_classes(&self) -> Vec<Vec<usize>> {
        let args: Vec<&RatFunc> = self.terms().map(|(_, f)| f).collect();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut by_key: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
        for (i, f) in args.iter().enumerate() {
            if is_constant_function(f) {
                continue;
            }
            let key = f.inversion_key();
            let probe: Vec<usize> = if key == Fingerprint::Unknown {
                (0..classes.len()).collect()
            } else {
                let mut v = by_key.get(&key).cloned().unwrap_or_default();
                v.extend(by_key.get(&Fingerprint::Unknown).cloned().unwrap_or_default());
                v
            };
            match probe.into_iter().find(|&k| args[classes[k][0]].equivalent_up_to_inversion(f)) {
                Some(k) => classes[k].push(i),
                None => {
                    by_key.entry(key).or_default().push(classes.len());
                    classes.push(vec![i]);
                }
            }
        }
        classes
    }

    /// Folds every argument onto one representative of its inversion class
    /// using `CL_m(1/z) = (-1)^(m-1) CL_m(z)`, so that two sums annihilated
    /// by the same combination of `CL_m` values can be compared termwise.
    pub fn fold_inversions(&self, m: u32) -> FormalSum {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        let mut out = FormalSum::new();
        let mut reps: Vec<RatFunc> = Vec::new();
        let mut by_key: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
        for (c, f) in self.terms() {
            let key = f.inversion_key();
            let probe: Vec<usize> = if key == Fingerprint::Unknown {
                (0..reps.len()).collect()
            } else {
                let mut v = by_key.get(&key).cloned().unwrap_or_default();
                v.extend(by_key.get(&Fingerprint::Unknown).cloned().unwrap_or_default());
                v
            };
            match probe.into_iter().find(|&k| reps[k].equivalent_up_to_inversion(f)) {
                Some(k) if !reps[k].equivalent(f) => out.add_term(Rational::from(c * sign), reps[k].clone()),
                Some(_) => out.add_term(c.clone(), f.clone()),
                None => {
                    by_key.entry(key).or_default().push(reps.len());
                    reps.push(f.clone());
                    out.add_term(c.clone(), f.clone());
                }
            }
        }
        out
    }

    /// `sum c CL_m(f(point))`, with poles mapped to infinity. Indeterminate
    /// arguments are an error.
    pub fn cl_eval(&self, m: u32, point: &BTreeMap<String, Complex>, policy: &PrecisionPolicy) -> Result<BigComplex> {
        let bits = policy.working_bits();
        let terms: Vec<(Rational, ClArg)> = self
            .terms()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|(c, f)| {
                let arg = match f.eval_complex(point, bits)? {
                    Evaluation::Value(z) => ClArg::Finite(BigComplex::from_complex(z, policy.digits + policy.guard)),
                    Evaluation::Pole => ClArg::Infinity,
                    Evaluation::Indeterminate => {
                        return Err(Error::Domain(format!("argument {f} is indeterminate at the sample point")))
                    }
                };
                Ok(((*c).clone(), arg))
            })
            .collect::<Result<_>>()?;
        cl_apply(m, &terms, policy)
    }

    /// `sum c CL_m(value)` for a sum of constants.
    pub fn cl_apply_constants(&self, m: u32, policy: &PrecisionPolicy) -> Result<BigComplex> {
        let empty = BTreeMap::new();
        if !self.terms().all(|(_, f)| f.vars().is_empty()) {
            return Err(Error::Domain("cl_apply needs constant arguments".into()));
        }
        self.cl_eval(m, &empty, policy)
    }

    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms()
            .map(|(c, f)| JsonTerm {
                coeff: format_rational(c),
                arg: f.to_string(),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_terms()).expect("terms serialize")
    }

    pub fn from_json_terms(terms: &[JsonTerm]) -> Result<FormalSum> {
        let mut s = FormalSum::new();
        for t in terms {
            s.add_term(parse_rational(&t.coeff)?, parse(&t.arg)?);
        }
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<FormalSum> {
        let terms: Vec<JsonTerm> = serde_json::from_str(s)?;
        Self::from_json_terms(&terms)
    }
}

/// True when the function does not depend on any of its variables.
pub(crate) fn is_constant_function(f: &RatFunc) -> bool {
    f.vars().iter().all(|v| f.is_free_of(v))
}

impl PartialEq for FormalSum {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_empty()
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, arg)) in self.terms().enumerate() {
            let neg = *c < 0;
            let abs = Rational::from(c.abs_ref());
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs != 1 {
                write!(f, "{}", format_rational(&abs))?;
            }
            write!(f, "[{arg}]")?;
        }
        Ok(())
    }
}
