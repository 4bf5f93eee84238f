//! `Li_m` on the principal branch and the one-valued `CL_m`.
//!
//! `Li_m(z)` is computed by region: the power series for `|z| <= 1/2`, the
//! expansion in `w = log z` with zeta-value coefficients for
//! `1/2 < |z| <= 2`, and the inversion formula beyond.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use super::bernoulli::{bernoulli, bernoulli_poly};
use super::zeta::zeta_bits;
use super::{BigComplex, PrecisionPolicy};
use crate::error::{Error, Result};

/// A point of the Riemann sphere.
#[derive(Clone, Debug, PartialEq)]
pub enum ClArg {
    Finite(BigComplex),
    Infinity,
}

impl From<BigComplex> for ClArg {
    fn from(z: BigComplex) -> Self {
        ClArg::Finite(z)
    }
}

fn abs_f64(z: &Complex) -> f64 {
    Float::with_val(53, z.abs_ref()).to_f64()
}

fn is_one(z: &Complex) -> bool {
    z.imag().is_zero() && *z.real() == 1
}

fn on_cut(z: &Complex) -> bool {
    z.imag().is_zero() && *z.real() >= 1
}

/// `Li_1(z), ..., Li_m(z)` by the power series; needs `|z| < 1`.
fn series_all(m: usize, z: &Complex, bits: u32) -> Vec<Complex> {
    let mut out = vec![Complex::new(bits); m];
    if z.is_zero() {
        return out;
    }
    let log2_abs = abs_f64(z).log2();
    let mut zn = Complex::with_val(bits, z);
    let mut n: u32 = 1;
    loop {
        let mut t = zn.clone();
        for acc in out.iter_mut() {
            t /= n;
            *acc += &t;
        }
        // Magnitude of the next term is at most |z|^(n+1).
        if f64::from(n + 1) * log2_abs < -f64::from(bits) - 8.0 {
            break;
        }
        zn *= z;
        n += 1;
    }
    out
}

type CoeffTable = Arc<Vec<Float>>;

/// `zeta(m - k) / k!` for `k = 0..len`, with the `k = m - 1` slot set to 0.
fn log_coeffs(m: usize, bits: u32, len: usize) -> CoeffTable {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), CoeffTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&(m, bits)) {
        if t.len() >= len {
            return t.clone();
        }
    }
    let mut table = Vec::with_capacity(len);
    let mut fact = Integer::from(1);
    for k in 0..len {
        if k > 0 {
            fact *= k as u32;
        }
        let s = m as i64 - k as i64;
        let value = if s >= 2 {
            zeta_bits(s as u32, bits) / &fact
        } else if s == 1 {
            Float::new(bits)
        } else if s == 0 {
            Float::with_val(bits, -0.5) / &fact
        } else {
            // zeta(-n) = -B_(n+1) / (n + 1)
            let n = (-s) as usize;
            let b = -bernoulli(n + 1) / Rational::from(n as u32 + 1);
            Float::with_val(bits, &b) / &fact
        };
        table.push(value);
    }
    let table = Arc::new(table);
    cache.lock().unwrap().insert((m, bits), table.clone());
    table
}

/// `Li_m(e^w)` by the expansion around `w = 0`; valid for `|w| < 2*pi`.
fn log_expansion(m: usize, z: &Complex, bits: u32) -> Complex {
    let w = Complex::with_val(bits, z.ln_ref());
    let aw = abs_f64(&w).max(1e-300);
    let ratio = (2.0 * std::f64::consts::PI / aw).log2();
    let terms = (f64::from(bits) / ratio).ceil() as usize + m + 8;
    let table = log_coeffs(m, bits, terms.max(m + 1));
    let mut acc = Complex::new(bits);
    for c in table[..terms].iter().rev() {
        acc *= &w;
        acc += c;
    }
    // (H_(m-1) - log(-w)) w^(m-1) / (m-1)!
    let mut harmonic = Float::new(bits);
    let mut fact = Integer::from(1);
    for j in 1..m {
        harmonic += Float::with_val(bits, 1) / j as u32;
        fact *= j as u32;
    }
    let minus_w = Complex::with_val(bits, -&w);
    let log_term = Complex::with_val(bits, harmonic) - Complex::with_val(bits, minus_w.ln_ref());
    let wpow = Complex::with_val(bits, (&w).pow(m as u32 - 1));
    acc += log_term * wpow / fact;
    acc
}

fn pi(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}

/// `Li_m(z)` by the inversion formula; `z` must be off `[0, 1]`.
fn inversion(m: usize, z: &Complex, bits: u32) -> Complex {
    let inv = Complex::with_val(bits, z.recip_ref());
    let li_inv = li_bits(m, &inv, bits).expect("inverse point lies inside the unit disc");
    let two_pi_i = Complex::with_val(bits, (0, 2 * pi(bits)));
    let minus_z = Complex::with_val(bits, -z);
    let x = Complex::with_val(bits, minus_z.ln_ref()) / &two_pi_i + Float::with_val(bits, 0.5);
    let mut fact = Integer::from(1);
    for j in 2..=m {
        fact *= j as u32;
    }
    let poly_term = Complex::with_val(bits, (&two_pi_i).pow(m as u32)) * bernoulli_poly(m, &x, bits) / fact;
    let sign = if m % 2 == 0 { -1 } else { 1 };
    li_inv * sign - poly_term
}

pub(crate) fn li_bits(m: usize, z: &Complex, bits: u32) -> Result<Complex> {
    if m == 1 {
        if is_one(z) {
            return Err(Error::Domain("Li_1 has a pole at z = 1".into()));
        }
        let one_minus = Complex::with_val(bits, 1 - z);
        return Ok(-Complex::with_val(bits, one_minus.ln_ref()));
    }
    if is_one(z) {
        return Ok(Complex::with_val(bits, zeta_bits(m as u32, bits)));
    }
    if on_cut(z) {
        return Err(Error::Branch(format!(
            "Li_{m} is branch-ambiguous on the real ray [1, oo); use CL_{m}"
        )));
    }
    let a = abs_f64(z);
    Ok(if a <= 0.5 {
        series_all(m, z, bits).pop().unwrap()
    } else if a <= 2.0 {
        log_expansion(m, z, bits)
    } else {
        inversion(m, z, bits)
    })
}

/// `Li_1(z), ..., Li_m(z)` for `|z| <= 1`, `z != 1`.
fn li_all(m: usize, z: &Complex, bits: u32) -> Vec<Complex> {
    if abs_f64(z) <= 0.5 {
        return series_all(m, z, bits);
    }
    (1..=m)
        .map(|k| {
            if k == 1 {
                let one_minus = Complex::with_val(bits, 1 - z);
                -Complex::with_val(bits, one_minus.ln_ref())
            } else {
                log_expansion(k, z, bits)
            }
        })
        .collect()
}

/// Principal-branch `Li_m(z)`.
pub fn li_m(m: u32, z: &BigComplex, policy: &PrecisionPolicy) -> Result<BigComplex> {
    if m == 0 {
        return Err(Error::Domain("Li_m needs m >= 1".into()));
    }
    let bits = policy.working_bits();
    let zc = Complex::with_val(bits, z.as_complex());
    Ok(BigComplex::from_complex(li_bits(m as usize, &zc, bits)?, policy.digits))
}

/// The Bernoulli-weighted sum `sum_{r<m} 2^r B_r / r! log^r|z| Li_(m-r)(z)`
/// before taking the real or imaginary part.
fn weighted_sum(m: usize, lis: &[Complex], z: &Complex, bits: u32) -> Complex {
    let log_abs = Float::with_val(bits, z.abs_ref()).ln();
    let mut acc = Complex::new(bits);
    let mut lpow = Float::with_val(bits, 1);
    let mut fact = Integer::from(1);
    for r in 0..m {
        if r > 0 {
            lpow *= &log_abs;
            fact *= r as u32;
        }
        let b = bernoulli(r);
        if b == 0 {
            continue;
        }
        let w = Float::with_val(bits, &b) * &lpow / &fact * Float::with_val(bits, Float::u_pow_u(2, r as u32));
        acc += Complex::with_val(bits, &lis[m - r - 1] * w);
    }
    acc
}

fn take_part(m: usize, s: Complex) -> Float {
    let (re, im) = s.into_real_imag();
    if m % 2 == 1 {
        re
    } else {
        im
    }
}

pub(crate) fn cl_bits(m: usize, z: &Complex, bits: u32) -> Float {
    if z.is_zero() {
        return Float::new(bits);
    }
    if is_one(z) {
        return if m % 2 == 1 { zeta_bits(m as u32, bits) } else { Float::new(bits) };
    }
    if abs_f64(z) > 1.0 {
        let inv = Complex::with_val(bits, z.recip_ref());
        let v = cl_bits(m, &inv, bits);
        return if m % 2 == 1 { v } else { -v };
    }
    let lis = li_all(m, z, bits);
    take_part(m, weighted_sum(m, &lis, z, bits))
}

/// The one-valued polylogarithm `CL_m` on the Riemann sphere, `m >= 2`.
pub fn cl_m(m: u32, arg: &ClArg, policy: &PrecisionPolicy) -> Result<BigComplex> {
    if m < 2 {
        return Err(Error::Domain("CL_m needs m >= 2".into()));
    }
    let bits = policy.working_bits();
    let v = match arg {
        ClArg::Infinity => Float::new(bits),
        ClArg::Finite(z) => cl_bits(m as usize, &Complex::with_val(bits, z.as_complex()), bits),
    };
    Ok(BigComplex::from_complex(Complex::with_val(bits, v), policy.digits))
}

/// `CL_m(z)` from the defining sum with principal-branch `Li_k(z)` at any
/// `z` off the real ray `[1, oo)`, without the inversion shortcut.
/// An independent route used to cross-check [`cl_m`].
pub fn cl_m_sum_direct(m: u32, z: &BigComplex, policy: &PrecisionPolicy) -> Result<BigComplex> {
    let bits = policy.working_bits();
    let zc = Complex::with_val(bits, z.as_complex());
    let m = m as usize;
    let lis = (1..=m).map(|k| li_bits(k, &zc, bits)).collect::<Result<Vec<_>>>()?;
    let v = take_part(m, weighted_sum(m, &lis, &zc, bits));
    Ok(BigComplex::from_complex(Complex::with_val(bits, v), policy.digits))
}

/// `sum coeff * CL_m(arg)`, evaluated in parallel and summed in order.
pub fn cl_apply(m: u32, terms: &[(Rational, ClArg)], policy: &PrecisionPolicy) -> Result<BigComplex> {
    if m < 2 {
        return Err(Error::Domain("CL_m needs m >= 2".into()));
    }
    let bits = policy.working_bits();
    let values: Vec<Float> = terms
        .par_iter()
        .map(|(c, arg)| {
            let v = match arg {
                ClArg::Infinity => Float::new(bits),
                ClArg::Finite(z) => cl_bits(m as usize, &Complex::with_val(bits, z.as_complex()), bits),
            };
            v * Float::with_val(bits, c)
        })
        .collect();
    let mut acc = Float::new(bits);
    for v in values {
        acc += v;
    }
    Ok(BigComplex::from_complex(Complex::with_val(bits, acc), policy.digits))
}
