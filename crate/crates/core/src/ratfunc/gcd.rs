//! Exact division and greatest common divisors of multivariate polynomials.
//!
//! The gcd is the recursive primitive remainder sequence: strip the content
//! with respect to a main variable, run pseudo-division on the primitive
//! parts, and multiply back the gcd of the contents.

use std::collections::BTreeMap;

use rug::Rational;

use super::poly::{Mono, MultiPoly};

/// `a / b` if `b` divides `a` exactly, else `None`.
pub fn div_exact(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    if a.is_zero() {
        return Some(MultiPoly::zero());
    }
    if let Some(c) = b.constant_value() {
        return Some(a.scale(&Rational::from(c.recip_ref())));
    }
    if b.vars().iter().any(|v| a.var_index(v).is_none()) {
        return None;
    }
    let vars = MultiPoly::union_vars(a.vars(), b.vars());
    let bt = b.terms_over(&vars);
    let lead = &bt[0];
    let key = |m: Mono| (m.degree(), m.0);
    let mut rem: BTreeMap<(u32, u128), Rational> =
        a.terms_over(&vars).into_iter().map(|t| (key(t.mono), t.coeff)).collect();
    let mut quot = Vec::new();
    while let Some((k, c)) = rem.pop_last() {
        let qm = Mono(k.1).div(lead.mono)?;
        let qc = c / &lead.coeff;
        for t in &bt[1..] {
            let m = t.mono.mul(qm);
            let entry = rem.entry(key(m)).or_default();
            *entry -= Rational::from(&qc * &t.coeff);
            if *entry == 0 {
                rem.remove(&key(m));
            }
        }
        quot.push((qm, qc));
    }
    Some(MultiPoly::from_terms(vars, quot))
}

/// Coefficients of `p` viewed as a polynomial in `v`, lowest degree first.
pub fn coeffs_in(p: &MultiPoly, v: &str) -> Vec<MultiPoly> {
    let Some(i) = p.var_index(v) else {
        return vec![p.clone()];
    };
    let d = p.degree_in(v) as usize;
    let mut buckets: Vec<Vec<(Mono, Rational)>> = vec![Vec::new(); d + 1];
    for t in p.terms() {
        buckets[t.mono.exp(i) as usize].push((t.mono.with_exp(i, 0), t.coeff.clone()));
    }
    buckets
        .into_iter()
        .map(|b| MultiPoly::from_terms(p.vars().clone(), b))
        .collect()
}

fn from_coeffs(v: &str, coeffs: &[MultiPoly]) -> MultiPoly {
    let x = MultiPoly::var(v);
    let mut acc = MultiPoly::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(&x).add(c);
    }
    acc
}

fn content_in(p: &MultiPoly, v: &str) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in coeffs_in(p, v) {
        g = gcd(&g, &c);
        if g.is_constant() && !g.is_zero() {
            return MultiPoly::one();
        }
    }
    g
}

fn primitive_in(p: &MultiPoly, v: &str) -> MultiPoly {
    let c = content_in(p, v);
    div_exact(p, &c).expect("content divides").primitive()
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: &str) -> MultiPoly {
    let db = b.degree_in(v) as usize;
    let bc = coeffs_in(b, v);
    let lb = &bc[db];
    let mut r = coeffs_in(a, v);
    while r.len() > db && !r.iter().all(MultiPoly::is_zero) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for (k, rk) in r.iter_mut().enumerate() {
            let mut next = rk.mul(lb);
            if k >= shift && k - shift < bc.len() {
                next = next.sub(&lr.mul(&bc[k - shift]));
            }
            *rk = next;
        }
        debug_assert!(r[dr].is_zero());
        while r.last().is_some_and(MultiPoly::is_zero) {
            r.pop();
        }
    }
    from_coeffs(v, &r)
}

/// Greatest common divisor over Q, normalized to a primitive integer
/// polynomial with positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if a == b {
        return a.primitive();
    }
    let v = a
        .vars()
        .iter()
        .find(|v| b.var_index(v).is_some())
        .unwrap_or(&a.vars()[0])
        .clone();
    let ca = content_in(a, &v);
    let cb = content_in(b, &v);
    let c = gcd(&ca, &cb);
    let mut p = div_exact(a, &ca).expect("content divides").primitive();
    let mut q = div_exact(b, &cb).expect("content divides").primitive();
    if p.degree_in(&v) < q.degree_in(&v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.degree_in(&v) == 0 {
            return c.primitive();
        }
        let r = pseudo_rem(&p, &q, &v);
        if r.is_zero() {
            return c.mul(&q).primitive();
        }
        p = q;
        q = primitive_in(&r, &v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn exact_division() {
        let a = p("x^3*y - x*y^3");
        assert_eq!(div_exact(&a, &p("x + y")).unwrap(), p("x^2*y - x*y^2"));
        assert!(div_exact(&a, &p("x + 2*y")).is_none());
        assert!(div_exact(&p("x"), &p("y")).is_none());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let g = p("x*y - z + 1");
        let a = g.mul(&p("x^2 + y + 3"));
        let b = g.mul(&p("2*x - z^2")).scale(&Rational::from((-7, 3)));
        assert_eq!(gcd(&a, &b), g);
        assert_eq!(gcd(&p("x + 1"), &p("x - 1")), MultiPoly::one());
        assert_eq!(gcd(&p("6*x^2"), &p("4*x*y")), p("x"));
    }
}
