use std::sync::Mutex;

use rug::{Complex, Integer, Rational};

static CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Exact Bernoulli number, with `B_1 = -1/2`.
pub fn bernoulli(r: usize) -> Rational {
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        cache.push(Rational::from(1));
    }
    while cache.len() <= r {
        let n = cache.len();
        if n >= 3 && n % 2 == 1 {
            cache.push(Rational::new());
            continue;
        }
        // sum_{k=0}^{n} C(n+1, k) B_k = 0
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (k, b) in cache.iter().enumerate() {
            if *b != 0 {
                acc += Rational::from(b * &binom);
            }
            binom *= (n + 1 - k) as u32;
            binom /= (k + 1) as u32;
        }
        cache.push(-acc / Rational::from(n as u32 + 1));
    }
    cache[r].clone()
}

/// `B_m(x) = sum_k C(m, k) B_k x^(m-k)` at a complex point.
pub fn bernoulli_poly(m: usize, x: &Complex, bits: u32) -> Complex {
    let mut acc = Complex::new(bits);
    let mut binom = Integer::from(1);
    let mut coeffs = Vec::with_capacity(m + 1);
    for k in 0..=m {
        coeffs.push(bernoulli(k) * &binom);
        binom *= (m - k) as u32;
        binom /= (k + 1) as u32;
    }
    // Horner in x over the coefficients of x^(m-k), highest power first.
    for c in &coeffs {
        acc *= x;
        acc += Complex::with_val(bits, rug::Float::with_val(bits, c));
    }
    acc
}
