//! High-precision complex arithmetic, polylogarithms and polynomial roots.

mod bernoulli;
mod polylog;
mod roots;
mod zeta;

use std::fmt;
use std::ops;

use rug::float::Round;
use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float, Rational};

use crate::error::{Error, Result};
use crate::exact::parse_rational;

pub use bernoulli::{bernoulli, bernoulli_poly};
pub use polylog::{cl_apply, cl_m, cl_m_sum_direct, li_m, ClArg};
pub use roots::poly_roots;
pub use zeta::zeta_int;

/// Bits needed to represent `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 4
}

/// Working precision and tolerance for a numeric computation.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    /// Working precision `P` in decimal digits.
    pub digits: u32,
    /// Extra digits carried internally.
    pub guard: u32,
    /// The tolerance is `10^(-P + slack)`.
    pub slack: u32,
}

impl PrecisionPolicy {
    pub const DEFAULT_GUARD: u32 = 10;
    pub const DEFAULT_SLACK: u32 = 15;

    pub fn new(digits: u32) -> Result<Self> {
        Self::with(digits, Self::DEFAULT_GUARD, Self::DEFAULT_SLACK)
    }

    pub fn with(digits: u32, guard: u32, slack: u32) -> Result<Self> {
        if digits <= guard + slack {
            return Err(Error::Domain(format!(
                "precision {digits} must exceed guard {guard} + slack {slack}"
            )));
        }
        Ok(PrecisionPolicy { digits, guard, slack })
    }

    /// Bits used for intermediate computations.
    pub fn working_bits(&self) -> u32 {
        bits_for_digits(self.digits + self.guard) + 16
    }

    /// Bits of the returned values.
    pub fn output_bits(&self) -> u32 {
        bits_for_digits(self.digits)
    }

    /// `10^(-P + slack)`.
    pub fn tolerance(&self) -> Float {
        pow10(-(self.digits as i32) + self.slack as i32, 64)
    }

    /// `10^(-P + guard)`, the accuracy promised for single evaluations.
    pub fn accuracy(&self) -> Float {
        pow10(-(self.digits as i32) + self.guard as i32, 64)
    }
}

pub(crate) fn pow10(e: i32, bits: u32) -> Float {
    let ten = Float::with_val(bits, 10);
    Float::with_val(bits, ten.pow(e))
}

/// A complex number with a working precision in decimal digits.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    z: Complex,
    digits: u32,
}

impl BigComplex {
    pub const MIN_DIGITS: u32 = 10;

    pub fn from_complex(z: Complex, digits: u32) -> Self {
        let digits = digits.max(Self::MIN_DIGITS);
        let bits = bits_for_digits(digits);
        let z = if z.prec() == (bits, bits) { z } else { Complex::with_val(bits, z) };
        BigComplex { z, digits }
    }

    pub fn zero(digits: u32) -> Self {
        Self::from_complex(Complex::new(64), digits)
    }

    pub fn from_f64(re: f64, im: f64, digits: u32) -> Self {
        Self::from_complex(Complex::with_val(64, (re, im)), digits)
    }

    pub fn from_rationals(re: &Rational, im: &Rational, digits: u32) -> Self {
        let bits = bits_for_digits(digits.max(Self::MIN_DIGITS));
        let re = Float::with_val(bits, re);
        let im = Float::with_val(bits, im);
        Self::from_complex(Complex::with_val(bits, (re, im)), digits)
    }

    pub fn from_rational(q: &Rational, digits: u32) -> Self {
        Self::from_rationals(q, &Rational::new(), digits)
    }

    /// Parses `a`, `a+bi`, `a-bi`, `bi` or `a,b`, where `a` and `b` are
    /// decimals or fractions.
    pub fn parse(s: &str, digits: u32) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("cannot read complex number {s:?}"),
        };
        let bits = bits_for_digits(digits.max(Self::MIN_DIGITS)) + 16;
        let real = |t: &str| -> Result<Float> {
            if t.contains('/') {
                return Ok(Float::with_val(bits, &parse_rational(t)?));
            }
            let parsed = Float::parse(t).map_err(|_| bad())?;
            Ok(parsed.complete(bits))
        };
        if let Some((a, b)) = s.split_once(',') {
            return Ok(Self::from_complex(Complex::with_val(bits, (real(a)?, real(b)?)), digits));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::from_complex(Complex::with_val(bits, real(&s)?), digits));
        };
        // Split at the last sign that is not part of an exponent or leading.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        Ok(Self::from_complex(Complex::with_val(bits, (real(re)?, real(im)?)), digits))
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn as_complex(&self) -> &Complex {
        &self.z
    }

    pub fn into_complex(self) -> Complex {
        self.z
    }

    pub fn re(&self) -> &Float {
        self.z.real()
    }

    pub fn im(&self) -> &Float {
        self.z.imag()
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.z.prec().0, self.z.abs_ref())
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            z: self.z.clone().conj(),
            digits: self.digits,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.z.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigComplex {
            z: self.z.clone().recip(),
            digits: self.digits,
        })
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re().to_f64(), self.im().to_f64())
    }

    /// Decimal rendering with `n` significant digits per component.
    pub fn to_string_digits(&self, n: usize) -> String {
        let fmt_real = |x: &Float| {
            if x.is_zero() {
                "0".to_string()
            } else {
                x.to_string_radix_round(10, Some(n), Round::Nearest)
            }
        };
        if self.im().is_zero() {
            return fmt_real(self.re());
        }
        let im = fmt_real(self.im());
        let (sign, mag) = match im.strip_prefix('-') {
            Some(m) => ('-', m.to_string()),
            None => ('+', im),
        };
        format!("{}{}{}i", fmt_real(self.re()), sign, mag)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(self.digits as usize))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl ops::$tr for &BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: &BigComplex) -> BigComplex {
                let digits = self.digits.min(rhs.digits);
                let bits = bits_for_digits(digits);
                BigComplex {
                    z: Complex::with_val(bits, &self.z $op &rhs.z),
                    digits,
                }
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl ops::Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex {
            z: Complex::with_val(self.z.prec(), -&self.z),
            digits: self.digits,
        }
    }
}

#[cfg(test)]
mod tests;
