//! Multiplicative coordinates for a batch of rationals.
//!
//! Small primes are removed by trial division; what is left of every
//! numerator and denominator is refined into a coprime base. Coprime
//! integers above 1 are multiplicatively independent, so exponent vectors
//! over this base represent the batch faithfully in `Q ⊗ Q^×` without
//! factoring large cofactors.

use std::collections::BTreeMap;

use rug::{Integer, Rational};

use super::{Basis, PrimeVector};
use crate::exact::small_primes;

/// Strips small prime factors; returns their exponents and the cofactor.
fn trial_divide(n: &Integer) -> (Vec<(u32, i64)>, Integer) {
    let mut n = Integer::from(n.abs_ref());
    let mut out = Vec::new();
    for &p in small_primes() {
        if n == 1 {
            break;
        }
        if Integer::from(p) * p > n {
            // n is 1 or a prime below 10^10; record it directly.
            break;
        }
        let mut e = 0;
        while n.is_divisible_u(p) {
            n.div_exact_u_mut(p);
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    (out, n)
}

/// Inserts `x` into a pairwise coprime list so that afterwards every
/// previously inserted number is still a product of list elements.
fn refine(base: &mut Vec<Integer>, x: Integer) {
    if x <= 1 {
        return;
    }
    for i in 0..base.len() {
        let g = Integer::from(x.gcd_ref(&base[i]));
        if g == 1 {
            continue;
        }
        let b = base.swap_remove(i);
        let rest_b = Integer::from(&b / &g);
        let rest_x = Integer::from(&x / &g);
        refine(base, g);
        refine(base, rest_b);
        refine(base, rest_x);
        return;
    }
    base.push(x);
}

/// Coordinates of a batch of nonzero rationals over a shared basis.
pub struct BatchCoordinates {
    vectors: Vec<PrimeVector>,
}

impl BatchCoordinates {
    pub fn new(values: &[Rational]) -> Self {
        let mut split: Vec<[(Vec<(u32, i64)>, Integer); 2]> = Vec::with_capacity(values.len());
        let mut base: Vec<Integer> = Vec::new();
        for q in values {
            assert!(*q != 0, "log of zero");
            let num = trial_divide(q.numer());
            let den = trial_divide(q.denom());
            refine(&mut base, num.1.clone());
            refine(&mut base, den.1.clone());
            split.push([num, den]);
        }
        base.sort();
        let labels: Vec<Basis> = base
            .iter()
            .map(|b| {
                if b.is_probably_prime(30) != rug::integer::IsPrime::No {
                    Basis::Prime(b.clone())
                } else {
                    Basis::Composite(b.clone())
                }
            })
            .collect();
        let vectors = split
            .into_iter()
            .map(|parts| {
                let mut coords: BTreeMap<Basis, Rational> = BTreeMap::new();
                for (sign, (small, cofactor)) in [(1i64, &parts[0]), (-1i64, &parts[1])] {
                    for &(p, e) in small {
                        *coords.entry(Basis::Prime(Integer::from(p))).or_default() += sign * e;
                    }
                    let mut rest = cofactor.clone();
                    for (b, label) in base.iter().zip(&labels) {
                        if rest == 1 {
                            break;
                        }
                        let mut e = 0i64;
                        while rest.is_divisible(b) {
                            rest.div_exact_mut(b);
                            e += 1;
                        }
                        if e > 0 {
                            *coords.entry(label.clone()).or_default() += sign * e;
                        }
                    }
                    assert!(rest == 1, "coprime base must cover every cofactor");
                }
                PrimeVector::from_map(coords)
            })
            .collect();
        BatchCoordinates { vectors }
    }

    pub fn get(&self, i: usize) -> &PrimeVector {
        &self.vectors[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::symbol::log_vector;

    #[test]
    fn agrees_with_factorization_for_small_values() {
        let values = [rat(12, 35), rat(-1001, 4), rat(97, 96), rat(1, 1)];
        let batch = BatchCoordinates::new(&values);
        for (i, q) in values.iter().enumerate() {
            assert_eq!(batch.get(i), &log_vector(q).unwrap());
        }
    }

    #[test]
    fn large_cofactors_are_split_by_gcds() {
        let p = Integer::from(1_000_000_007u64);
        let q = Integer::from(998_244_353u64);
        let a = Rational::from(Integer::from(&p * &q));
        let b = Rational::from(Integer::from(&p * &p) * 3u32);
        let batch = BatchCoordinates::new(&[a, b]);
        let va = batch.get(0);
        let vb = batch.get(1);
        assert_eq!(va.coord(&Basis::Prime(p.clone())), rat(1, 1));
        assert_eq!(vb.coord(&Basis::Prime(p)), rat(2, 1));
        assert_eq!(vb.coord(&Basis::Prime(Integer::from(3))), rat(1, 1));
        assert_eq!(va.len(), 2);
    }
}
