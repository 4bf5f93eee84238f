//! The symbolic kernel test for `[x] -> x^(m-2) ⊗ (x ∧ (1-x))`.
//!
//! Arguments are specialized at random rational points, mapped into
//! `Q ⊗ Q^×` by their exponent vectors, and the resulting tensor is paired
//! against random functionals `θ^(m-2) ⊗ (φ ∧ ψ)`. All arithmetic is exact,
//! so a relation in the kernel always passes; a nonzero tensor is caught
//! with high probability.

mod base;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use rug::{Integer, Rational};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{factor_rational, format_rational, random_rational, splitmix64, Sampler};
use crate::formal::{FormalSum, Specialization};

pub use base::BatchCoordinates;

/// A basis element of `Q ⊗ Q^×`: a prime, or a composite from a coprime
/// base whose factorization was never needed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    Prime(Integer),
    Composite(Integer),
    Symbol(String),
}

impl Basis {
    pub fn name(&self) -> String {
        match self {
            Basis::Prime(p) => p.to_string(),
            Basis::Composite(c) => format!("c:{c}"),
            Basis::Symbol(s) => s.clone(),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Sparse vector over [`Basis`], without zero coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrimeVector {
    coords: BTreeMap<Basis, Rational>,
}

impl PrimeVector {
    pub fn from_map(mut coords: BTreeMap<Basis, Rational>) -> Self {
        coords.retain(|_, c| *c != 0);
        PrimeVector { coords }
    }

    pub fn coords(&self) -> &BTreeMap<Basis, Rational> {
        &self.coords
    }

    pub fn coord(&self, b: &Basis) -> Rational {
        self.coords.get(b).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, other: &PrimeVector) -> PrimeVector {
        let mut coords = self.coords.clone();
        for (b, c) in &other.coords {
            *coords.entry(b.clone()).or_default() += c;
        }
        Self::from_map(coords)
    }

    pub fn scale(&self, k: &Rational) -> PrimeVector {
        Self::from_map(self.coords.iter().map(|(b, c)| (b.clone(), Rational::from(c * k))).collect())
    }
}

/// Exponent vector of `q`, signs discarded.
pub fn log_vector(q: &Rational) -> Result<PrimeVector> {
    let f = factor_rational(q)?;
    Ok(PrimeVector::from_map(
        f.factors
            .into_iter()
            .map(|(p, e)| (Basis::Prime(p), Rational::from(e)))
            .collect(),
    ))
}

/// A linear form on `Q ⊗ Q^×`: explicit values on some basis elements,
/// plus (optionally) pseudo-random integer values in `[-height, height]`
/// everywhere else, determined by a key and the basis name.
#[derive(Clone, Debug, Default)]
pub struct DualFunctional {
    explicit: BTreeMap<Basis, Rational>,
    random: Option<(u64, u32)>,
}

impl DualFunctional {
    pub fn explicit(values: BTreeMap<Basis, Rational>) -> Self {
        DualFunctional { explicit: values, random: None }
    }

    /// Values on primes given as integers; everything else maps to 0.
    pub fn on_primes(values: &[(u64, i64)]) -> Self {
        Self::explicit(
            values
                .iter()
                .map(|&(p, v)| (Basis::Prime(Integer::from(p)), Rational::from(v)))
                .collect(),
        )
    }

    pub fn random(key: u64, height: u32) -> Self {
        DualFunctional {
            explicit: BTreeMap::new(),
            random: Some((key, height)),
        }
    }

    pub fn value(&self, b: &Basis) -> Rational {
        if let Some(v) = self.explicit.get(b) {
            return v.clone();
        }
        match self.random {
            None => Rational::new(),
            Some((key, height)) => {
                let mut h = key;
                for byte in b.name().bytes() {
                    h = splitmix64(h ^ byte as u64);
                }
                let span = 2 * height as u64 + 1;
                Rational::from((h % span) as i64 - height as i64)
            }
        }
    }

    pub fn apply(&self, v: &PrimeVector) -> Rational {
        let mut acc = Rational::new();
        for (b, c) in &v.coords {
            let f = self.value(b);
            if f != 0 {
                acc += f * c;
            }
        }
        acc
    }
}

fn pairing_term(m: u32, coeff: &Rational, x: &PrimeVector, one_minus: &PrimeVector, th: &DualFunctional, ph: &DualFunctional, ps: &DualFunctional) -> Rational {
    let t = th.apply(x);
    let theta_pow = if m == 2 { Rational::from(1) } else { Rational::from(rug::ops::Pow::pow(&t, m - 2)) };
    if theta_pow == 0 {
        return Rational::new();
    }
    let wedge = ph.apply(x) * ps.apply(one_minus) - ph.apply(one_minus) * ps.apply(x);
    Rational::from(coeff * &theta_pow) * wedge
}

fn check_constant_sum(s: &FormalSum) -> Result<Vec<(Rational, Rational)>> {
    s.terms()
        .map(|(c, f)| {
            let q = f
                .constant_value_exact()
                .ok_or_else(|| Error::Domain(format!("argument {f} is not a constant")))?;
            if q == 0 || q == 1 {
                return Err(Error::Domain(format!("argument {} is 0 or 1", format_rational(&q))));
            }
            Ok((c.clone(), q))
        })
        .collect()
}

/// `<β_m(s), θ^(m-2) ⊗ (φ ∧ ψ)>` for a sum of constants.
pub fn beta_pairing(s: &FormalSum, m: u32, theta: &DualFunctional, phi: &DualFunctional, psi: &DualFunctional) -> Result<Rational> {
    if m < 2 {
        return Err(Error::Domain("the criterion needs m >= 2".into()));
    }
    let mut acc = Rational::new();
    for (c, q) in check_constant_sum(s)? {
        let x = log_vector(&q)?;
        let y = log_vector(&Rational::from(1 - &q))?;
        acc += pairing_term(m, &c, &x, &y, theta, phi, psi);
    }
    Ok(acc)
}

/// Full coordinates of `β_m(s)` for `m <= 4`: keys are
/// (sorted θ-multiset, first wedge factor, second wedge factor) with the
/// wedge factors in increasing order.
pub fn expand_tensor(s: &FormalSum, m: u32) -> Result<BTreeMap<(Vec<Basis>, Basis, Basis), Rational>> {
    if !(2..=4).contains(&m) {
        return Err(Error::Domain("tensor expansion is only provided for 2 <= m <= 4".into()));
    }
    let mut out: BTreeMap<(Vec<Basis>, Basis, Basis), Rational> = BTreeMap::new();
    for (c, q) in check_constant_sum(s)? {
        let x = log_vector(&q)?;
        let y = log_vector(&Rational::from(1 - &q))?;
        let sym: Vec<(Vec<Basis>, Rational)> = match m {
            2 => vec![(vec![], Rational::from(1))],
            3 => x.coords.iter().map(|(b, v)| (vec![b.clone()], v.clone())).collect(),
            _ => {
                let mut acc: BTreeMap<Vec<Basis>, Rational> = BTreeMap::new();
                for (a, va) in &x.coords {
                    for (b, vb) in &x.coords {
                        let mut key = vec![a.clone(), b.clone()];
                        key.sort();
                        *acc.entry(key).or_default() += Rational::from(va * vb);
                    }
                }
                acc.into_iter().collect()
            }
        };
        for (a, va) in &x.coords {
            for (b, vb) in &y.coords {
                if a == b {
                    continue;
                }
                let (k1, k2, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
                let w = Rational::from(va * vb) * sign;
                for (key, sv) in &sym {
                    let e = out.entry((key.clone(), k1.clone(), k2.clone())).or_default();
                    *e += Rational::from(&w * sv) * &c;
                }
            }
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

/// Parameters of a kernel test.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct KernelTestConfig {
    pub m: u32,
    pub trials: usize,
    pub functionals: usize,
    pub height: u32,
    pub seed: u64,
}

impl KernelTestConfig {
    pub const DEFAULT_HEIGHT: u32 = 40;
    const MAX_RESAMPLES: usize = 256;

    pub fn new(m: u32, trials: usize, functionals: usize, seed: u64) -> Self {
        KernelTestConfig {
            m,
            trials,
            functionals,
            height: Self::DEFAULT_HEIGHT,
            seed,
        }
    }
}

/// A nonzero pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub trial: usize,
    pub functional: usize,
    pub point: BTreeMap<String, Rational>,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub passed: bool,
    pub witness: Option<Witness>,
    pub config: KernelTestConfig,
    /// Specializations that were rejected as degenerate and redrawn.
    pub resamples: usize,
    /// Scheduled pairings, `trials * functionals`.
    pub pairings: usize,
}

impl Verdict {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "status": if self.passed { "pass" } else { "fail" },
            "m": self.config.m,
            "trials": self.config.trials,
            "functionals": self.config.functionals,
            "height": self.config.height,
            "seed": self.config.seed,
            "pairings": self.pairings,
            "resamples": self.resamples,
            "witness": self.witness.as_ref().map(|w| json!({
                "trial": w.trial,
                "functional": w.functional,
                "point": w.point.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect::<BTreeMap<_, _>>(),
                "value": format_rational(&w.value),
            })),
        })
    }
}

/// Draws a non-degenerate specialization of `s` for one trial.
fn specialize_trial(s: &FormalSum, vars: &[String], cfg: &KernelTestConfig, trial: usize) -> Result<(BTreeMap<String, Rational>, FormalSum, usize)> {
    let mut sampler = Sampler::with_stream(cfg.seed, trial as u64);
    let exclusions = [Rational::from(0), Rational::from(1), Rational::from(-1)];
    for attempt in 0..KernelTestConfig::MAX_RESAMPLES {
        let point: BTreeMap<String, Rational> = vars
            .iter()
            .map(|v| Ok((v.clone(), random_rational(cfg.height, &mut sampler, &exclusions)?)))
            .collect::<Result<_>>()?;
        if let Specialization::Constants { sum, .. } = s.specialize(&point, false)? {
            return Ok((point, sum, attempt));
        }
    }
    Err(Error::Exhausted(format!(
        "no non-degenerate specialization after {} draws",
        KernelTestConfig::MAX_RESAMPLES
    )))
}

/// Randomized test of `β_m(s) = 0`. Terms whose argument is identically 1
/// are skipped; other constant arguments take part like any other.
pub fn kernel_test(s: &FormalSum, cfg: &KernelTestConfig) -> Result<Verdict> {
    if cfg.m < 2 {
        return Err(Error::Domain("the criterion needs m >= 2".into()));
    }
    let filtered = FormalSum::from_terms(
        s.terms()
            .filter(|(_, f)| f.constant_value_exact().is_none_or(|q| q != 1))
            .map(|(c, f)| (c.clone(), f.clone())),
    );
    let vars: Vec<String> = {
        let mut v: Vec<String> = filtered.terms().flat_map(|(_, f)| f.vars().iter().cloned().collect::<Vec<_>>()).collect();
        v.sort();
        v.dedup();
        v
    };
    let per_trial: Vec<(usize, Option<Witness>)> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| -> Result<(usize, Option<Witness>)> {
            let (point, constants, resampled) = specialize_trial(&filtered, &vars, cfg, trial)?;
            let terms: Vec<(Rational, Rational)> = check_constant_sum(&constants)?;
            let mut batch_values = Vec::with_capacity(2 * terms.len());
            for (_, q) in &terms {
                batch_values.push(q.clone());
                batch_values.push(Rational::from(1 - q));
            }
            let coords = BatchCoordinates::new(&batch_values);
            for k in 0..cfg.functionals {
                let key = splitmix64(cfg.seed ^ splitmix64((trial as u64) << 20 | k as u64));
                let th = DualFunctional::random(splitmix64(key ^ 1), cfg.height);
                let ph = DualFunctional::random(splitmix64(key ^ 2), cfg.height);
                let ps = DualFunctional::random(splitmix64(key ^ 3), cfg.height);
                let mut value = Rational::new();
                for (i, (c, _)) in terms.iter().enumerate() {
                    value += pairing_term(cfg.m, c, coords.get(2 * i), coords.get(2 * i + 1), &th, &ph, &ps);
                }
                if value != 0 {
                    let w = Witness {
                        trial,
                        functional: k,
                        point: point.clone(),
                        value,
                    };
                    return Ok((resampled, Some(w)));
                }
            }
            Ok((resampled, None))
        })
        .collect::<Result<_>>()?;
    let resamples = per_trial.iter().map(|(r, _)| r).sum();
    let witness = per_trial.into_iter().find_map(|(_, w)| w);
    Ok(Verdict {
        passed: witness.is_none(),
        witness,
        config: *cfg,
        resamples,
        pairings: cfg.trials * cfg.functionals,
    })
}

#[cfg(test)]
mod tests;
