use std::collections::BTreeMap;
use std::sync::OnceLock;

use rug::integer::IsPrime;
use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{domain, Result};

const TRIAL_LIMIT: u32 = 100_000;

/// Sign and prime exponents of a nonzero rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFactorization {
    pub sign: i8,
    pub factors: BTreeMap<Integer, i64>,
}

impl RationalFactorization {
    pub fn reconstruct(&self) -> Rational {
        let mut num = Integer::from(1);
        let mut den = Integer::from(1);
        for (p, &e) in &self.factors {
            let pe = Integer::from(p.pow(e.unsigned_abs() as u32));
            if e > 0 {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        if self.sign < 0 {
            num = -num;
        }
        Rational::from((num, den))
    }
}

/// Primes below 10^5, computed once.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (2..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

/// Exact factorization of a nonzero rational.
pub fn factor_rational(q: &Rational) -> Result<RationalFactorization> {
    if *q == 0 {
        return domain("cannot factor zero");
    }
    let sign = if *q < 0 { -1 } else { 1 };
    let mut factors = BTreeMap::new();
    for (p, e) in factor_integer(&Integer::from(q.numer().abs_ref())) {
        *factors.entry(p).or_insert(0) += e as i64;
    }
    for (p, e) in factor_integer(q.denom()) {
        *factors.entry(p).or_insert(0) -= e as i64;
    }
    Ok(RationalFactorization { sign, factors })
}

/// Prime factorization of a positive integer (trial division below 10^5, then
/// Brent's variant of Pollard rho on the cofactor).
pub fn factor_integer(n: &Integer) -> BTreeMap<Integer, u32> {
    assert!(*n > 0, "factor_integer needs a positive argument");
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    for &p in small_primes() {
        if rest == 1 {
            break;
        }
        if Integer::from(p) * p > rest {
            break;
        }
        if rest.is_divisible_u(p) {
            let mut e = 0;
            while rest.is_divisible_u(p) {
                rest.div_exact_u_mut(p);
                e += 1;
            }
            out.insert(Integer::from(p), e);
        }
    }
    if rest > 1 {
        split_cofactor(rest, &mut out);
    }
    out
}

fn split_cofactor(n: Integer, out: &mut BTreeMap<Integer, u32>) {
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if m.is_probably_prime(30) != IsPrime::No {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        if m.is_perfect_square() {
            let r = Integer::from(m.sqrt_ref());
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let d = (1u64..)
            .find_map(|c| brent_rho(&m, c))
            .expect("rho eventually splits a composite");
        let cofactor = Integer::from(&m / &d);
        stack.push(d);
        stack.push(cofactor);
    }
}

/// One run of Brent's cycle-finding rho with polynomial `x^2 + c`; returns a
/// nontrivial divisor or `None` if this `c` failed.
fn brent_rho(n: &Integer, c: u64) -> Option<Integer> {
    if n.is_even() {
        return Some(Integer::from(2));
    }
    let f = |x: &Integer| -> Integer { (Integer::from(x * x) + c) % n };
    let mut y = Integer::from(2 + c);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = Integer::from(1);
    let mut g = Integer::from(1);
    let mut r: u64 = 1;
    const BATCH: u64 = 128;
    while g == 1 {
        x.clone_from(&y);
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys.clone_from(&y);
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                q = (q * Integer::from(&x - &y).abs()) % n;
            }
            g = Integer::from(q.gcd_ref(n));
            k += BATCH;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = Integer::from(Integer::from(&x - &ys).abs().gcd_ref(n));
            if g > 1 {
                break;
            }
        }
    }
    if g == *n {
        None
    } else {
        Some(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use std::time::Instant;

    fn map(pairs: &[(i64, i64)]) -> BTreeMap<Integer, i64> {
        pairs.iter().map(|&(p, e)| (Integer::from(p), e)).collect()
    }

    #[test]
    fn spec_examples() {
        let f = factor_rational(&rat(-8, 9)).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, map(&[(2, 3), (3, -2)]));

        let f = factor_rational(&rat(1, 1)).unwrap();
        assert_eq!(f.sign, 1);
        assert!(f.factors.is_empty());

        let f = factor_rational(&rat(84, 5)).unwrap();
        assert_eq!(f.factors, map(&[(2, 2), (3, 1), (7, 1), (5, -1)]));
    }

    #[test]
    fn zero_is_domain_error() {
        assert!(factor_rational(&rat(0, 1)).is_err());
    }

    #[test]
    fn large_semiprime_under_a_second() {
        // 999983 * 1000003, both above the trial-division bound
        let n = Integer::from(999_983u64) * 1_000_003u64;
        let start = Instant::now();
        let f = factor_integer(&n);
        assert!(start.elapsed().as_secs_f64() < 1.0);
        assert_eq!(f.len(), 2);
        assert_eq!(f[&Integer::from(999_983)], 1);

        let q = Rational::from((Integer::from(999_999_999_989u64), Integer::from(1_000_000_000_000u64 - 7)));
        let start = Instant::now();
        let f = factor_rational(&q).unwrap();
        assert!(start.elapsed().as_secs_f64() < 1.0);
        assert_eq!(f.reconstruct(), q);
    }

    #[test]
    fn prime_squares_split() {
        let p = Integer::from(1_000_003u64);
        let n = Integer::from(&p * &p) * 12u32;
        let f = factor_integer(&n);
        assert_eq!(f[&p], 2);
        assert_eq!(f[&Integer::from(2)], 2);
    }
}
