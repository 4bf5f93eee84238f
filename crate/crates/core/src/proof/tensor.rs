//! Sparse tensors over the log space: `Sym^2(L) ⊗ Λ^2(L)` as the canonical
//! form, plus the cubic view `Sym^3(L) ⊗ L` and its polarization map.
//!
//! Coordinates are `i128` numerators over one shared denominator per tensor.
//! Every denominator in this model divides a small power of `n`, so this is
//! exact and far cheaper than per-entry big rationals.

use std::fmt;
use std::hash::Hash;

use rug::{Integer, Rational};
use rustc_hash::FxHashMap;

use super::space::{LVec, LogSpace};

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

fn small(q: &Integer) -> i128 {
    q.to_i128().expect("coordinate fits in i128")
}

/// Integer coordinates of a reduced vector and their common denominator.
fn integral(v: &LVec) -> (Vec<(u16, i128)>, i128) {
    let den = v.support().fold(1i128, |d, (_, c)| lcm(d, small(c.denom())));
    let coords = v
        .support()
        .map(|(i, c)| (i, small(c.numer()) * (den / small(c.denom()))))
        .collect();
    (coords, den)
}

/// Sparse map with integer numerators over a shared positive denominator.
#[derive(Clone, Debug)]
pub struct Sparse<K> {
    den: i128,
    map: FxHashMap<K, i128>,
}

impl<K> Default for Sparse<K> {
    fn default() -> Self {
        Sparse { den: 1, map: FxHashMap::default() }
    }
}

impl<K: Hash + Eq + Copy> Sparse<K> {
    fn from_map(den: i128, mut map: FxHashMap<K, i128>) -> Self {
        map.retain(|_, v| *v != 0);
        Sparse { den, map }
    }

    fn push(map: &mut FxHashMap<K, i128>, k: K, v: i128) {
        if v != 0 {
            *map.entry(k).or_insert(0) += v;
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `self += k * o`.
    pub fn add_assign(&mut self, o: &Sparse<K>, k: &Rational) {
        if *k == 0 || o.is_zero() {
            return;
        }
        let (kn, kd) = (small(k.numer()), small(k.denom()));
        let od = o.den * kd;
        let den = lcm(self.den, od);
        let fs = den / self.den;
        if fs != 1 {
            for v in self.map.values_mut() {
                *v *= fs;
            }
        }
        let fo = den / od * kn;
        for (key, v) in &o.map {
            Self::push(&mut self.map, *key, v * fo);
        }
        self.den = den;
        self.map.retain(|_, v| *v != 0);
        if self.map.is_empty() {
            self.den = 1;
        }
    }

    pub fn add(&self, o: &Sparse<K>) -> Sparse<K> {
        let mut r = self.clone();
        r.add_assign(o, &Rational::from(1));
        r
    }

    pub fn sub(&self, o: &Sparse<K>) -> Sparse<K> {
        let mut r = self.clone();
        r.add_assign(o, &Rational::from(-1));
        r
    }

    pub fn scale(&self, k: &Rational) -> Sparse<K> {
        let mut r = Self::zero();
        r.add_assign(self, k);
        r
    }

    pub fn scale_i(&self, k: i64) -> Sparse<K> {
        self.scale(&Rational::from(k))
    }

    /// Coefficient at `key`.
    pub fn get(&self, key: &K) -> Rational {
        let v = self.map.get(key).copied().unwrap_or(0);
        Rational::from((Integer::from(v), Integer::from(self.den)))
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.map.keys()
    }

    fn filtered(&self, pred: impl Fn(&K) -> bool) -> Sparse<K> {
        Sparse {
            den: self.den,
            map: self.map.iter().filter(|(k, _)| pred(k)).map(|(k, v)| (*k, *v)).collect(),
        }
    }
}

impl<K: Hash + Eq + Copy> PartialEq for Sparse<K> {
    fn eq(&self, o: &Self) -> bool {
        self.map.len() == o.map.len()
            && self.map.iter().all(|(k, v)| {
                o.map.get(k).is_some_and(|w| v * o.den == w * self.den)
            })
    }
}

impl<K: Hash + Eq + Copy> Eq for Sparse<K> {}

/// Element of `Λ^2(L)`, keyed by `(a, b)` with `a < b`.
pub type Wedge = Sparse<(u16, u16)>;
/// Element of `Sym^2(L)` in the monomial basis, keyed by `(p, q)` with `p <= q`.
pub type Sym2 = Sparse<(u16, u16)>;
/// Canonical element of `Sym^2(L) ⊗ Λ^2(L)`, keyed by `(p, q, a, b)`.
pub type FormalTensor = Sparse<(u16, u16, u16, u16)>;
/// Element of `Sym^3(L) ⊗ L`, keyed by a sorted triple and a last index.
pub type CubicForm = Sparse<(u16, u16, u16, u16)>;

impl Sparse<(u16, u16)> {
    /// `b ∧ c` for reduced vectors.
    pub fn wedge(b: &LVec, c: &LVec) -> Self {
        let (bi, bd) = integral(b);
        let (ci, cd) = integral(c);
        let mut m = FxHashMap::default();
        for &(i, x) in &bi {
            for &(j, y) in &ci {
                match i.cmp(&j) {
                    std::cmp::Ordering::Less => Self::push(&mut m, (i, j), x * y),
                    std::cmp::Ordering::Greater => Self::push(&mut m, (j, i), -x * y),
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        Self::from_map(bd * cd, m)
    }

    /// `a ⊙ b`.
    pub fn sym(a: &LVec, b: &LVec) -> Self {
        let (ai, ad) = integral(a);
        let (bi, bd) = integral(b);
        let mut m = FxHashMap::default();
        for &(i, x) in &ai {
            for &(j, y) in &bi {
                Self::push(&mut m, (i.min(j), i.max(j)), x * y);
            }
        }
        Self::from_map(ad * bd, m)
    }

    pub fn square(a: &LVec) -> Self {
        Self::sym(a, a)
    }
}

impl Sparse<(u16, u16, u16, u16)> {
    /// `P · w` for a symmetric square `P` and a wedge `w`.
    pub fn product(p: &Sym2, w: &Wedge) -> Self {
        let mut m = FxHashMap::default();
        m.reserve(p.map.len() * w.map.len());
        for (&(a, b), x) in &p.map {
            for (&(c, d), y) in &w.map {
                Self::push(&mut m, (a, b, c, d), x * y);
            }
        }
        Self::from_map(p.den * w.den, m)
    }

    /// `A^2 · (B ∧ C)`.
    pub fn sq_wedge(a: &LVec, b: &LVec, c: &LVec) -> Self {
        Self::product(&Sym2::square(a), &Wedge::wedge(b, c))
    }

    /// `A^3 ∧ B`, read as `A^⊙2 ⊗ (A ∧ B)`.
    pub fn cube_wedge(a: &LVec, b: &LVec) -> Self {
        Self::sq_wedge(a, a, b)
    }

    /// `a ⊙ b ⊙ c ⊗ d` in the cubic view.
    pub fn cubic(a: &LVec, b: &LVec, c: &LVec, d: &LVec) -> Self {
        let ab = Sym2::sym(a, b);
        let (ci, cd) = integral(c);
        let (di, dd) = integral(d);
        let mut sym3: FxHashMap<[u16; 3], i128> = FxHashMap::default();
        for (&(p, q), x) in &ab.map {
            for &(k, z) in &ci {
                let mut t = [p, q, k];
                t.sort_unstable();
                Sparse::<[u16; 3]>::push(&mut sym3, t, x * z);
            }
        }
        let mut m = FxHashMap::default();
        for (t, x) in sym3 {
            for &(l, w) in &di {
                Self::push(&mut m, (t[0], t[1], t[2], l), x * w);
            }
        }
        Self::from_map(ab.den * cd * dd, m)
    }

    /// Polarization `a⊙b⊙c ⊗ d ↦ (b⊙c⊗(a∧d) + a⊙c⊗(b∧d) + a⊙b⊗(c∧d)) / 3`,
    /// which sends `A^⊙3 ⊗ B` to `A^⊙2 ⊗ (A∧B)`. Input is a cubic-view form.
    pub fn polarize(&self) -> FormalTensor {
        let mut m = FxHashMap::default();
        for (&(a, b, c, d), &v) in &self.map {
            for (x, (p, q)) in [(a, (b, c)), (b, (a, c)), (c, (a, b))] {
                match x.cmp(&d) {
                    std::cmp::Ordering::Less => Self::push(&mut m, (p, q, x, d), v),
                    std::cmp::Ordering::Greater => Self::push(&mut m, (p, q, d, x), -v),
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        Self::from_map(self.den * 3, m)
    }

    /// Part whose wedge factor involves only symbols selected by `pred`.
    pub fn restrict_wedge(&self, pred: impl Fn(u16) -> bool) -> FormalTensor {
        self.filtered(|&(_, _, c, d)| pred(c) && pred(d))
    }

    /// Human-readable listing of the nonzero coordinates, sorted.
    pub fn describe(&self, space: &LogSpace) -> String {
        let mut keys: Vec<_> = self.map.keys().copied().collect();
        keys.sort_unstable();
        let name = |k: u16| space.symbol_name(k as usize);
        keys.iter()
            .map(|k @ (a, b, c, d)| {
                format!("{} {}.{} ({} ^ {})", self.get(k), name(*a), name(*b), name(*c), name(*d))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<K> fmt::Display for Sparse<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tensor with {} nonzero coordinates", self.map.len())
    }
}
