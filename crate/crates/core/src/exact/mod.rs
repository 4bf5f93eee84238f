//! Exact integer and rational arithmetic, factorization of rationals and
//! reproducible sampling of specialization points.

mod factor;
mod sample;

pub use factor::{factor_integer, factor_rational, small_primes, RationalFactorization};
pub use rug::{Integer, Rational};
pub use sample::{random_rational, splitmix64, Sampler};

use crate::error::{Error, Result};

/// Builds `n/d` in lowest terms. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::from((n, d))
}

/// Parses `p`, `-p` or `p/q` (whitespace around the slash allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("not a rational literal: {s:?}"),
    };
    let (n, d) = match cleaned.split_once('/') {
        Some((n, d)) => (n, d),
        None => (cleaned.as_str(), "1"),
    };
    let n: Integer = n.parse().map_err(|_| bad())?;
    let d: Integer = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational::from((n, d)))
}

/// Canonical text form `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Residue of `q` modulo the prime `p`, or `None` when `p` divides the denominator.
pub fn rational_mod(q: &Rational, p: u64) -> Option<u64> {
    let num = integer_mod(q.numer(), p);
    let den = integer_mod(q.denom(), p);
    if den == 0 {
        return None;
    }
    Some(mulmod(num, invmod(den, p), p))
}

pub(crate) fn integer_mod(n: &Integer, p: u64) -> u64 {
    let r = Integer::from(n % p);
    let r = if r < 0 { r + p } else { r };
    r.to_u64().expect("residue fits in u64")
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime (Fermat).
pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-8/12").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(-2, 3)), "-2/3");
        assert_eq!(format_rational(&rat(4, 2)), "2");
    }

    #[test]
    fn residues() {
        let p = (1u64 << 61) - 1;
        let third = rational_mod(&rat(1, 3), p).unwrap();
        assert_eq!(mulmod(third, 3, p), 1);
        assert_eq!(rational_mod(&rat(-1, 1), p), Some(p - 1));
        assert_eq!(rational_mod(&rat(1, 7), 7), None);
    }
}
