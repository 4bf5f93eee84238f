//! The two-variable 7-logarithm equation: its explicit block table and the
//! symmetric reformulation through `Θ`, `φ_α`, `ω` and the sets `A_k`.

use std::collections::BTreeSet;

use rug::Rational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rat;
use crate::formal::FormalSum;
use crate::ratfunc::{MultiPoly, RatFunc};

/// An integer triple.
pub type IntVec3 = [i64; 3];

/// A block `{a,b;c,d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BlockKey {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl BlockKey {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        BlockKey { a, b, c, d }
    }
}

/// One row of the explicit table: `lead * factor * {a,b;c,d}`. The
/// denominator of `lead` is the multiplicity of each argument in the block.
#[derive(Clone, Debug)]
pub struct BlockTerm {
    pub lead: Rational,
    pub factor: Rational,
    pub block: BlockKey,
}

impl BlockTerm {
    pub fn coefficient(&self) -> Rational {
        Rational::from(&self.lead * &self.factor)
    }
}

/// `(lead, factor, block)` rows, grouped by block weight 3, 2, 1.
const TABLE: [((i64, i64), (i64, i64), [i64; 4]); 24] = [
    ((-1, 18), (609, 4), [-1, -1, -1, -1]),
    ((-1, 3), (35, 1), [-1, -1, -2, 1]),
    ((1, 3), (105, 8), [-1, -1, 3, -5]),
    ((-1, 3), (21, 1), [-1, -1, -1, 4]),
    ((-1, 3), (15, 1), [-1, -1, -2, 5]),
    ((1, 3), (15, 1), [-1, -1, 3, -4]),
    ((1, 2), (700, 1), [1, 0, 1, 0]),
    ((1, 2), (175, 4), [1, -3, 1, -3]),
    ((1, 2), (28, 1), [-2, 3, -2, 3]),
    ((-1, 1), (35, 1), [1, -3, -2, 3]),
    ((-1, 1), (140, 1), [-2, 3, 1, 0]),
    ((1, 1), (175, 1), [1, 0, 1, -3]),
    ((1, 2), (700, 1), [1, -2, -1, 2]),
    ((1, 1), (3150, 1), [0, 1, 1, -1]),
    ((1, 2), (1575, 1), [-1, 1, 1, -1]),
    ((-1, 1), (2100, 1), [1, -2, 0, -1]),
    ((1, 2), (6300, 1), [0, 1, 0, -1]),
    ((-1, 1), (1050, 1), [-1, 2, -1, 1]),
    ((-1, 2), (700, 1), [-1, 2, -1, 2]),
    ((-1, 2), (1575, 1), [-1, 1, -1, 1]),
    ((-1, 2), (6300, 1), [0, 1, 0, 1]),
    ((1, 1), (1050, 1), [-1, 2, 1, -1]),
    ((1, 1), (2100, 1), [0, -1, -1, 2]),
    ((-1, 1), (3150, 1), [1, -1, 0, -1]),
];

/// The 24 rows of the explicit form.
pub fn xi7_table() -> Vec<BlockTerm> {
    TABLE
        .iter()
        .map(|&((ln, ld), (fnum, fden), [a, b, c, d])| BlockTerm {
            lead: rat(ln, ld),
            factor: rat(fnum, fden),
            block: BlockKey::new(a, b, c, d),
        })
        .collect()
}

/// `wt(a,b) = (|a| + |a+b| + |2a+b|) / 2`.
pub fn weight_wt(a: i64, b: i64) -> Rational {
    rat(a.abs() + (a + b).abs() + (2 * a + b).abs(), 2)
}

/// `Θ(a,b,c) = (a, -b-c, b-a)`.
pub fn theta(v: IntVec3) -> IntVec3 {
    let [a, b, c] = v;
    [a, -b - c, b - a]
}

/// `ω(α) = 1/(α_1 - α_3)`; undefined on triples with `α_1 = α_3`.
pub fn omega(alpha: IntVec3) -> Result<Rational> {
    let d = alpha[0] - alpha[2];
    if d == 0 {
        return Err(Error::Domain(format!("omega is undefined at {alpha:?}")));
    }
    Ok(rat(1, d))
}

/// Distinct permutations of a triple, sorted.
pub fn permutations(v: IntVec3) -> Vec<IntVec3> {
    let [a, b, c] = v;
    let all = [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
    all.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// `A_k = Θ(S_3 · (k, -1, 1-k))`, sorted.
pub fn a_k_set(k: i64) -> Vec<IntVec3> {
    permutations([k, -1, 1 - k])
        .into_iter()
        .map(theta)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// The sets `A_1, A_2, A_3` and the distinguished `δ = (-1,-1,-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AkSets {
    pub a1: Vec<IntVec3>,
    pub a2: Vec<IntVec3>,
    pub a3: Vec<IntVec3>,
    pub delta: IntVec3,
}

pub fn a_k_sets() -> AkSets {
    AkSets { a1: a_k_set(1), a2: a_k_set(2), a3: a_k_set(3), delta: [-1, -1, -1] }
}

/// `sign * z^ez * (1-z)^e1 * (1-z+z^2)^ed` as a rational function of `var`.
fn factored(var: &str, sign: i64, ez: i64, e1: i64, ed: i64) -> RatFunc {
    let z = MultiPoly::var(var);
    let one_minus = MultiPoly::one().sub(&z);
    let d = MultiPoly::one().sub(&z).add(&z.mul(&z));
    let mut num = MultiPoly::constant(sign);
    let mut den = MultiPoly::one();
    for (base, e) in [(&z, ez), (&one_minus, e1), (&d, ed)] {
        let p = base.pow(e.unsigned_abs() as u32);
        if e >= 0 {
            num = num.mul(&p);
        } else {
            den = den.mul(&p);
        }
    }
    RatFunc::new(num, den).expect("nonzero denominator")
}

/// Exponent data `(sign, e_z, e_(1-z), e_d)` of `f_1, f_2, f_3` and `f`.
const F_EXPS: [(i64, [i64; 3]); 3] = [(-1, [1, 0, -1]), (-1, [0, 1, -1]), (1, [1, 1, -1])];
// f = -f_1 f_2 f_3 = -z^2(1-z)^2/d^3. The closed form z^2(1-z)^2/d^3 has the
// opposite sign and does not give a functional equation.
const F_TOTAL: (i64, [i64; 3]) = (-1, [2, 2, -3]);

fn combine(parts: &[((i64, [i64; 3]), i64)]) -> (i64, [i64; 3]) {
    let mut sign = 1;
    let mut e = [0i64; 3];
    for &((s, ex), k) in parts {
        if s < 0 && k.rem_euclid(2) == 1 {
            sign = -sign;
        }
        for i in 0..3 {
            e[i] += ex[i] * k;
        }
    }
    (sign, e)
}

fn from_exps(var: &str, data: (i64, [i64; 3])) -> RatFunc {
    factored(var, data.0, data.1[0], data.1[1], data.1[2])
}

/// `f_1, f_2, f_3` and `f = -f_1 f_2 f_3` in the variable `var`.
pub fn f_functions(var: &str) -> ([RatFunc; 3], RatFunc) {
    let fs = F_EXPS.map(|d| from_exps(var, d));
    (fs, from_exps(var, F_TOTAL))
}

/// `f(z)^a f_i(z)^(b-a)` (with `i` 0-based).
fn block_factor(a: i64, b: i64, i: usize) -> (i64, [i64; 3]) {
    combine(&[(F_TOTAL, a), (F_EXPS[i], b - a)])
}

fn ratio(t: (i64, [i64; 3]), u: (i64, [i64; 3]), tv: &str, uv: &str) -> RatFunc {
    from_exps(tv, t).div(&from_exps(uv, u)).expect("nonzero")
}

/// `{a,b;c,d}_0(t,u) = sum_(i,j) [f(t)^a f_i(t)^(b-a) / (f(u)^c f_j(u)^(d-c))]`
/// as a list of 9 arguments.
pub fn block0(key: BlockKey, t: &str, u: &str) -> Vec<RatFunc> {
    let mut out = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            out.push(ratio(block_factor(key.a, key.b, i), block_factor(key.c, key.d, j), t, u));
        }
    }
    out
}

/// `{a,b;c,d} = {a,b;c,d}_0(t,u) + {c,d;a,b}_0(t,u)`, 18 arguments.
pub fn block(key: BlockKey, t: &str, u: &str) -> Vec<RatFunc> {
    let mut v = block0(key, t, u);
    v.extend(block0(BlockKey::new(key.c, key.d, key.a, key.b), t, u));
    v
}

/// The explicit 7-logarithm equation in the variables `t`, `u`.
pub fn xi7_explicit_sum(t: &str, u: &str) -> FormalSum {
    let mut s = FormalSum::new();
    for row in xi7_table() {
        let c = row.coefficient();
        for arg in block(row.block, t, u) {
            s.add_term(c.clone(), arg);
        }
    }
    s
}

/// Sign convention for `φ_α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PhiSign {
    /// `(-f_1)^(α_1) f_2^(α_2) f_3^(α_3)`, the literal definition.
    #[default]
    Literal,
    /// `(-1)^a f_1^(α_1) f_2^(α_2) f_3^(α_3)` where `a` is the repeated entry
    /// of `α`, which makes the symbolic sign independent of the ordering.
    RepeatedEntry,
}

fn phi_exps(alpha: IntVec3, sign: PhiSign) -> (i64, [i64; 3]) {
    let (mut s, e) = combine(&[(F_EXPS[0], alpha[0]), (F_EXPS[1], alpha[1]), (F_EXPS[2], alpha[2])]);
    let flip = match sign {
        PhiSign::Literal => alpha[0],
        PhiSign::RepeatedEntry => {
            let mut v = alpha;
            v.sort_unstable();
            v[1]
        }
    };
    if flip.rem_euclid(2) == 1 {
        s = -s;
    }
    (s, e)
}

/// `φ_α(z) = (-f_1(z))^(α_1) f_2(z)^(α_2) f_3(z)^(α_3)`.
pub fn phi_alpha(alpha: IntVec3, var: &str) -> RatFunc {
    phi_alpha_with(alpha, var, PhiSign::Literal)
}

pub fn phi_alpha_with(alpha: IntVec3, var: &str, sign: PhiSign) -> RatFunc {
    from_exps(var, phi_exps(alpha, sign))
}

/// The symmetric form `ξ^(1) + ξ^(2) + ξ^(3)` built from `A_k`, `ω`, `Θ`
/// and `φ_α` with the chosen sign convention.
pub fn xi7_symmetric_sum(t: &str, u: &str, sign: PhiSign) -> FormalSum {
    let sets = a_k_sets();
    let delta = sets.delta;
    let term = |x: IntVec3, y: IntVec3| ratio(phi_exps(x, sign), phi_exps(y, sign), t, u);
    let mut s = FormalSum::new();
    s.add_term(rat(-29, 20), term(delta, delta));
    for &a in sets.a3.iter().filter(|a| **a != delta) {
        let w = omega(a).expect("omega defined off delta");
        for p in permutations(a) {
            s.add_term(w.clone(), term(p, delta));
            s.add_term(w.clone(), term(delta, p));
        }
    }
    for (set, scale) in [(&sets.a2, rat(20, 3)), (&sets.a1, rat(-30, 1))] {
        for &a in set {
            for &b in set {
                let w = (&scale * omega(a).unwrap()) * omega(b).unwrap();
                for p in permutations(a) {
                    for q in permutations(b) {
                        s.add_term(w.clone(), term(p, q));
                    }
                }
            }
        }
    }
    s
}
