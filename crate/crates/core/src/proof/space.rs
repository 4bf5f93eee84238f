//! The additive log model: symbols `ξ_i = log x_i`, `η_j = log y_j` and
//! `ζ_ij = log(x_i - y_j)`, modulo the relations that all row sums and all
//! column sums of `(ζ_ij)` agree.

use std::fmt;

use rug::Rational;

/// Vector in the log space, stored densely over all `2n + n^2` symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LVec(pub(crate) Vec<Rational>);

impl LVec {
    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == 0)
    }

    pub fn add(&self, o: &LVec) -> LVec {
        LVec(self.0.iter().zip(&o.0).map(|(a, b)| Rational::from(a + b)).collect())
    }

    pub fn sub(&self, o: &LVec) -> LVec {
        LVec(self.0.iter().zip(&o.0).map(|(a, b)| Rational::from(a - b)).collect())
    }

    pub fn scale(&self, k: &Rational) -> LVec {
        LVec(self.0.iter().map(|a| Rational::from(a * k)).collect())
    }

    pub fn scale_i(&self, k: i64) -> LVec {
        self.scale(&Rational::from(k))
    }

    pub(crate) fn support(&self) -> impl Iterator<Item = (u16, &Rational)> {
        self.0.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i as u16, c))
    }
}

/// The quotient space for a given `n`, with a fixed echelon form of the
/// relations. Every vector handed out is already reduced.
#[derive(Clone, Debug)]
pub struct LogSpace {
    n: usize,
    /// Fully reduced relation rows with their pivot columns.
    rows: Vec<(usize, Vec<Rational>)>,
}

impl LogSpace {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "the log space needs n >= 2");
        let dim = 2 * n + n * n;
        let zeta = |i: usize, j: usize| 2 * n + i * n + j;
        let row_sum = |l: usize| (0..n).map(move |j| zeta(l, j));
        let col_sum = |m: usize| (0..n).map(move |i| zeta(i, m));
        let mut rels: Vec<Vec<Rational>> = Vec::new();
        let mut diff = |plus: Vec<usize>, minus: Vec<usize>| {
            let mut v = vec![Rational::new(); dim];
            for p in plus {
                v[p] += 1;
            }
            for q in minus {
                v[q] -= 1;
            }
            rels.push(v);
        };
        for m in 1..n {
            diff(col_sum(0).collect(), col_sum(m).collect());
        }
        for l in 1..n {
            diff(row_sum(0).collect(), row_sum(l).collect());
        }
        diff(row_sum(0).collect(), col_sum(0).collect());

        // Preferred pivots: ζ_(n,m) for m < n, then ζ_(l,n), then the rest.
        let mut order: Vec<usize> = (0..n - 1).map(|m| zeta(n - 1, m)).collect();
        order.extend((0..n).map(|l| zeta(l, n - 1)));
        order.extend((0..dim).filter(|c| !order.contains(c)).collect::<Vec<_>>());

        let mut rows: Vec<(usize, Vec<Rational>)> = Vec::new();
        let mut pending = rels;
        for &c in &order {
            let Some(k) = pending.iter().position(|r| r[c] != 0) else {
                continue;
            };
            let mut r = pending.swap_remove(k);
            let inv = Rational::from(r[c].recip_ref());
            for x in r.iter_mut() {
                *x *= &inv;
            }
            for other in pending.iter_mut().chain(rows.iter_mut().map(|(_, v)| v)) {
                if other[c] != 0 {
                    let f = other[c].clone();
                    for (x, y) in other.iter_mut().zip(&r) {
                        *x -= Rational::from(&f * y);
                    }
                }
            }
            rows.push((c, r));
            pending.retain(|r| r.iter().any(|x| *x != 0));
            if pending.is_empty() {
                break;
            }
        }
        LogSpace { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n + self.n * self.n
    }

    /// Number of independent relations.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    /// Projection onto the canonical coordinates.
    pub fn reduce(&self, v: &LVec) -> LVec {
        let mut out = v.0.clone();
        for (c, r) in &self.rows {
            if out[*c] != 0 {
                let f = out[*c].clone();
                for (x, y) in out.iter_mut().zip(r) {
                    *x -= Rational::from(&f * y);
                }
            }
        }
        LVec(out)
    }

    fn unit(&self, k: usize) -> LVec {
        let mut v = vec![Rational::new(); self.dim()];
        v[k] = Rational::from(1);
        self.reduce(&LVec(v))
    }

    pub fn zero(&self) -> LVec {
        LVec(vec![Rational::new(); self.dim()])
    }

    /// `ξ_i`, 0-based.
    pub fn xi(&self, i: usize) -> LVec {
        self.unit(i)
    }

    /// `η_j`, 0-based.
    pub fn eta(&self, j: usize) -> LVec {
        self.unit(self.n + j)
    }

    /// `ζ_ij`, 0-based.
    pub fn zeta(&self, i: usize, j: usize) -> LVec {
        self.unit(2 * self.n + i * self.n + j)
    }

    pub fn symbol_name(&self, k: usize) -> String {
        let n = self.n;
        if k < n {
            format!("xi{}", k + 1)
        } else if k < 2 * n {
            format!("eta{}", k - n + 1)
        } else {
            let z = k - 2 * n;
            format!("zeta{}{}", z / n + 1, z % n + 1)
        }
    }

    pub fn equal(&self, a: &LVec, b: &LVec) -> bool {
        self.reduce(&a.sub(b)).is_zero()
    }
}

impl fmt::Display for LogSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogSpace(n={}, dim={}, relations={})", self.n, self.dim(), self.rank())
    }
}

/// The shorthands `ξ`, `η`, `S = ξ - η`, `s_lm = ξ_l - η_m` and
/// `Z = (1/n) sum ζ_ij`, as reduced vectors.
#[derive(Clone, Debug)]
pub struct DerivedSymbols {
    pub xi: LVec,
    pub eta: LVec,
    pub s_total: LVec,
    pub s: Vec<Vec<LVec>>,
    pub z: LVec,
}

pub fn derived_symbols(space: &LogSpace) -> DerivedSymbols {
    let n = space.n();
    let mut xi = space.zero();
    let mut eta = space.zero();
    for i in 0..n {
        xi = xi.add(&space.xi(i));
        eta = eta.add(&space.eta(i));
    }
    let s_total = xi.sub(&eta);
    let s = (0..n)
        .map(|l| (0..n).map(|m| space.xi(l).sub(&space.eta(m))).collect())
        .collect();
    let mut zsum = space.zero();
    for i in 0..n {
        for j in 0..n {
            zsum = zsum.add(&space.zeta(i, j));
        }
    }
    let z = space.reduce(&zsum.scale(&Rational::from((1, n as u32))));
    DerivedSymbols { xi, eta, s_total, s, z }
}
