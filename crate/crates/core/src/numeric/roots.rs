//! All complex roots of a polynomial, with multiplicities.
//!
//! Aberth-Ehrlich simultaneous iteration from points on a circle, then
//! clustering of nearly equal roots: each cluster of size `k` is snapped to
//! its mean and polished by Newton's method on the `(k-1)`-th derivative,
//! where the root is simple.

use std::cmp::Ordering;

use rug::{Complex, Float};

use super::{pow10, BigComplex, PrecisionPolicy};
use crate::error::{Error, Result};

const ABERTH_CAP: usize = 4000;
const NEWTON_CAP: usize = 200;

fn abs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// Value and derivative by Horner; coefficients in ascending order.
fn horner(c: &[Complex], x: &Complex, bits: u32) -> (Complex, Complex) {
    let mut p = Complex::new(bits);
    let mut dp = Complex::new(bits);
    for a in c.iter().rev() {
        dp *= x;
        dp += &p;
        p *= x;
        p += a;
    }
    (p, dp)
}

/// `sum |c_i| |x|^i`, the natural scale for residuals.
fn scale(c: &[Complex], x: &Complex, bits: u32) -> Float {
    let ax = abs(x);
    let mut acc = Float::new(bits);
    for a in c.iter().rev() {
        acc *= &ax;
        acc += abs(a);
    }
    acc
}

fn derivative(c: &[Complex], bits: u32) -> Vec<Complex> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| Complex::with_val(bits, a * i as u32))
        .collect()
}

fn aberth(c: &[Complex], bits: u32) -> Vec<Complex> {
    let n = c.len() - 1;
    let lead = abs(&c[n]);
    let radius = Float::with_val(bits, abs(&c[0]) / &lead).root(n as u32).to_f64().max(1e-3);
    let mut z: Vec<Complex> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex::with_val(bits, (radius * theta.cos(), radius * theta.sin()))
        })
        .collect();
    let stop = Float::with_val(bits, Float::i_exp(1, -(bits as i32) + 8));
    for _ in 0..ABERTH_CAP {
        let mut worst = Float::new(bits);
        for k in 0..n {
            let (p, dp) = horner(c, &z[k], bits);
            if p.is_zero() {
                continue;
            }
            let ratio = Complex::with_val(bits, &p / &dp);
            let mut s = Complex::new(bits);
            for j in 0..n {
                if j != k {
                    let d = Complex::with_val(bits, &z[k] - &z[j]);
                    if !d.is_zero() {
                        s += d.recip();
                    }
                }
            }
            let denom = Complex::with_val(bits, 1 - Complex::with_val(bits, &ratio * &s));
            let step = if denom.is_zero() { ratio } else { ratio / denom };
            if !step.real().is_finite() || !step.imag().is_finite() {
                continue;
            }
            let rel = abs(&step) / abs(&z[k]).max(&Float::with_val(bits, 1));
            if rel > worst {
                worst = rel;
            }
            z[k] -= step;
        }
        if worst < stop {
            break;
        }
    }
    z
}

fn newton(c: &[Complex], mut x: Complex, bits: u32) -> Complex {
    let stop = Float::with_val(bits, Float::i_exp(1, -(bits as i32) + 4));
    for _ in 0..NEWTON_CAP {
        let (p, dp) = horner(c, &x, bits);
        if p.is_zero() || dp.is_zero() {
            break;
        }
        let step = Complex::with_val(bits, &p / &dp);
        x -= &step;
        if abs(&step) <= Float::with_val(bits, &stop * abs(&x).max(&Float::with_val(bits, 1))) {
            break;
        }
    }
    x
}

/// Groups of indices whose roots lie within `tol * max(1, |z|)` of each other
/// (transitively).
fn clusters(z: &[Complex], tol: &Float) -> Vec<Vec<usize>> {
    let n = z.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = abs(&Complex::with_val(z[i].prec(), &z[i] - &z[j]));
            let s = abs(&z[i]).max(&Float::with_val(53, 1));
            if d <= Float::with_val(53, tol * s) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_of[r] == usize::MAX {
            root_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_of[r]].push(i);
    }
    groups
}

fn cmp_complex(a: &BigComplex, b: &BigComplex) -> Ordering {
    a.re()
        .partial_cmp(b.re())
        .unwrap_or(Ordering::Equal)
        .then(a.im().partial_cmp(b.im()).unwrap_or(Ordering::Equal))
}

/// Roots of `c[0] + c[1] x + ... + c[d] x^d` with multiplicity, sorted by
/// real then imaginary part.
pub fn poly_roots(coeffs: &[BigComplex], policy: &PrecisionPolicy) -> Result<Vec<BigComplex>> {
    let Some(lead) = coeffs.last() else {
        return Err(Error::Domain("empty polynomial".into()));
    };
    if coeffs.len() < 2 {
        return Err(Error::Domain("polynomial of degree 0".into()));
    }
    if lead.is_zero() {
        return Err(Error::Domain("leading coefficient is zero".into()));
    }
    let bits = policy.working_bits() + 32;
    let all: Vec<Complex> = coeffs.iter().map(|a| Complex::with_val(bits, a.as_complex())).collect();
    let zeros = all.iter().take_while(|a| a.is_zero()).count();
    let c = &all[zeros..];
    let mut found: Vec<Complex> = vec![Complex::new(bits); zeros];
    if c.len() > 1 {
        let approx = aberth(c, bits);
        let cluster_tol = pow10(-(policy.digits as i32) / 2, 64);
        for group in clusters(&approx, &cluster_tol) {
            let k = group.len();
            let mut mean = Complex::new(bits);
            for &i in &group {
                mean += &approx[i];
            }
            mean /= k as u32;
            let mut d = c.to_vec();
            for _ in 1..k {
                d = derivative(&d, bits);
            }
            let r = newton(&d, mean, bits);
            found.extend(std::iter::repeat_n(r, k));
        }
    }
    let budget = policy.accuracy();
    let mut worst = Float::new(64);
    for r in &found {
        let (p, _) = horner(&all, r, bits);
        let s = scale(&all, r, bits);
        if !s.is_zero() {
            let rel = Float::with_val(64, abs(&p) / s);
            if rel > worst {
                worst = rel;
            }
        }
    }
    if worst > budget {
        return Err(Error::NoConvergence {
            iterations: ABERTH_CAP,
            max_step: format!("relative residual {}", worst.to_f64()),
        });
    }
    let mut out: Vec<BigComplex> = found
        .into_iter()
        .map(|r| BigComplex::from_complex(r, policy.digits))
        .collect();
    out.sort_by(cmp_complex);
    Ok(out)
}
