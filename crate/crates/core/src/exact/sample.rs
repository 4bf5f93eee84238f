//! Seeded sampling.
//!
//! Every random choice in the crate flows through [`Sampler`], a ChaCha8
//! stream generator. A sampler is identified by `(seed, stream)`: the seed is
//! expanded into the ChaCha key with `SeedableRng::seed_from_u64`, and the
//! stream id selects one of the 2^64 independent ChaCha streams. Parallel
//! tasks receive their own stream id up front, so results never depend on
//! scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Sampler {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { seed, stream, rng }
    }

    /// An independent child stream; deterministic in `(seed, stream, index)`.
    pub fn split(&self, index: u64) -> Sampler {
        let mixed = splitmix64(self.stream ^ splitmix64(index.wrapping_add(0x9e37_79b9)));
        Sampler::with_stream(self.seed ^ splitmix64(index), mixed)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.gen()
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Uniform float in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.rng.gen()
    }

    pub fn rational(&mut self, height: u32, exclusions: &[Rational]) -> Result<Rational> {
        random_rational(height, self, exclusions)
    }
}

/// SplitMix64 finalizer, used to derive stream ids.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

const REJECTION_ATTEMPTS: usize = 4096;
const ENUMERATION_LIMIT: u32 = 512;

/// A rational with `|num| <= height`, `0 < den <= height`, outside
/// `exclusions ∪ {0, 1}`.
pub fn random_rational(height: u32, sampler: &mut Sampler, exclusions: &[Rational]) -> Result<Rational> {
    if height < 2 {
        return Err(Error::Domain(format!("height must be at least 2, got {height}")));
    }
    let h = height as i64;
    let allowed = |q: &Rational| *q != 0 && *q != 1 && !exclusions.contains(q);
    for _ in 0..REJECTION_ATTEMPTS {
        let n = sampler.int_in(-h, h);
        let d = sampler.int_in(1, h);
        let q = Rational::from((n, d));
        if allowed(&q) {
            return Ok(q);
        }
    }
    if height > ENUMERATION_LIMIT {
        return Err(Error::Exhausted(format!(
            "no admissible rational of height {height} found after {REJECTION_ATTEMPTS} draws"
        )));
    }
    // Rejection kept failing: enumerate to decide exhaustion exactly.
    let mut pool = Vec::new();
    for d in 1..=h {
        for n in -h..=h {
            if rug::Integer::from(n).gcd(&rug::Integer::from(d)) != 1 {
                continue;
            }
            let q = Rational::from((n, d));
            if allowed(&q) {
                pool.push(q);
            }
        }
    }
    if pool.is_empty() {
        return Err(Error::Exhausted(format!(
            "every rational of height {height} is excluded"
        )));
    }
    let k = sampler.int_in(0, pool.len() as i64 - 1) as usize;
    Ok(pool.swap_remove(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contract() {
        let mut s = Sampler::new(1);
        for _ in 0..200 {
            let q = random_rational(10, &mut s, &[]).unwrap();
            assert!(q.numer().clone().abs() <= 10 && *q.denom() <= 10);
            assert!(q != 0 && q != 1);
        }
    }

    #[test]
    fn determinism() {
        let a: Vec<_> = {
            let mut s = Sampler::new(42);
            (0..20).map(|_| random_rational(40, &mut s, &[]).unwrap()).collect()
        };
        let b: Vec<_> = {
            let mut s = Sampler::new(42);
            (0..20).map(|_| random_rational(40, &mut s, &[]).unwrap()).collect()
        };
        assert_eq!(a, b);
        let c = Sampler::new(42).split(3).next_u64();
        let d = Sampler::new(42).split(3).next_u64();
        let e = Sampler::new(42).split(4).next_u64();
        assert_eq!(c, d);
        assert_ne!(c, e);
    }

    #[test]
    fn exhaustion() {
        let mut all = Vec::new();
        for d in 1..=2i64 {
            for n in -2..=2i64 {
                all.push(Rational::from((n, d)));
            }
        }
        let mut s = Sampler::new(5);
        assert!(matches!(random_rational(2, &mut s, &all), Err(Error::Exhausted(_))));
        assert!(random_rational(1, &mut s, &[]).is_err());
    }

    #[test]
    fn exclusions_respected() {
        let excl: Vec<Rational> = (-3..=3).map(|n| Rational::from((n, 1))).collect();
        let mut s = Sampler::new(9);
        for _ in 0..100 {
            let q = random_rational(3, &mut s, &excl).unwrap();
            assert!(!excl.contains(&q));
        }
    }
}
