//! Exact multivariate rational functions over Q.

mod gcd;
mod parse;
mod poly;
mod rat;

pub use gcd::{coeffs_in, div_exact, gcd};
pub use parse::{parse, parse_poly, parse_with_limit, DEFAULT_EXPONENT_LIMIT};
pub use poly::{Mono, MultiPoly, Term, VarList, MAX_VARS};
pub use rat::{cross_ratio, rational_to_complex, Evaluation, Fingerprint, ProjectiveValue, RatFunc, FINGERPRINT_PRIME};

/// Shorthand for parsing trusted literals; panics on malformed input.
pub fn rf(s: &str) -> RatFunc {
    parse(s).unwrap_or_else(|e| panic!("bad rational function literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests;
