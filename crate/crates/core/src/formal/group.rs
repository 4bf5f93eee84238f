use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ratfunc::{parse, Fingerprint, RatFunc};

pub const DEFAULT_CLOSURE_BOUND: usize = 1024;

/// A substitution `x_i -> sigma_i(x)` on a fixed set of variables, acting on
/// functions by `f -> f(sigma(x))`. Images are kept reduced.
#[derive(Clone, Debug)]
pub struct Automorphism {
    images: BTreeMap<String, RatFunc>,
}

impl Automorphism {
    pub fn identity(vars: &[&str]) -> Self {
        Automorphism {
            images: vars.iter().map(|v| (v.to_string(), RatFunc::var(v))).collect(),
        }
    }

    pub fn new(images: BTreeMap<String, RatFunc>) -> Self {
        let images = images.into_iter().map(|(v, f)| (v, f.reduce())).collect();
        Automorphism { images }
    }

    /// From `(variable, expression)` pairs in the expression grammar.
    pub fn parse(pairs: &[(&str, &str)]) -> Result<Self> {
        let mut images = BTreeMap::new();
        for (v, e) in pairs {
            images.insert(v.to_string(), parse(e)?);
        }
        Ok(Self::new(images))
    }

    pub fn images(&self) -> &BTreeMap<String, RatFunc> {
        &self.images
    }

    pub fn image(&self, var: &str) -> Option<&RatFunc> {
        self.images.get(var)
    }

    pub fn apply(&self, f: &RatFunc) -> Result<RatFunc> {
        f.substitute(&self.images)
    }

    /// `self ∘ other`: applying it equals applying `other`, then `self`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        let mut images = BTreeMap::new();
        for v in self.images.keys().chain(other.images.keys()) {
            if images.contains_key(v) {
                continue;
            }
            let inner = other.images.get(v).cloned().unwrap_or_else(|| RatFunc::var(v));
            images.insert(v.clone(), inner.substitute(&self.images)?.reduce());
        }
        Ok(Automorphism { images })
    }

    fn key(&self) -> Vec<Fingerprint> {
        self.images.values().map(RatFunc::fingerprint).collect()
    }

    pub fn equivalent(&self, other: &Automorphism) -> bool {
        self.images.len() == other.images.len()
            && self
                .images
                .iter()
                .all(|(v, f)| other.images.get(v).is_some_and(|g| f.equivalent(g)))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().all(|(v, f)| f.equivalent(&RatFunc::var(v)))
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.equivalent(other)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|(v, g)| format!("{v} -> {g}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Hash-indexed set of automorphisms, exact on collisions.
struct Table {
    items: Vec<Automorphism>,
    index: HashMap<Vec<Fingerprint>, Vec<usize>>,
}

impl Table {
    fn insert(&mut self, a: Automorphism) -> bool {
        let key = a.key();
        if key.contains(&Fingerprint::Unknown) && self.items.iter().any(|b| b.equivalent(&a)) {
            return false;
        }
        let bucket = self.index.entry(key).or_default();
        if bucket.iter().any(|&i| self.items[i].equivalent(&a)) {
            return false;
        }
        bucket.push(self.items.len());
        self.items.push(a);
        true
    }
}

/// Closure of the generators under composition, identity first, then in
/// breadth-first order. Fails once more than `bound` elements appear.
pub fn group_closure(generators: &[Automorphism], bound: usize) -> Result<Vec<Automorphism>> {
    let mut vars: Vec<String> = generators.iter().flat_map(|g| g.images.keys().cloned()).collect();
    vars.sort();
    vars.dedup();
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let mut table = Table {
        items: Vec::new(),
        index: HashMap::new(),
    };
    table.insert(Automorphism::identity(&names));
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let products: Vec<Automorphism> = frontier
            .par_iter()
            .flat_map_iter(|&i| generators.iter().map(move |g| (i, g)))
            .map(|(i, g)| table.items[i].compose(g))
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for p in products {
            if table.insert(p) {
                if table.items.len() > bound {
                    return Err(Error::ClosureBound(bound));
                }
                next.push(table.items.len() - 1);
            }
        }
        frontier = next;
    }
    Ok(table.items)
}

/// Distinct images of `x` under the group, in group order.
pub fn orbit(x: &RatFunc, group: &[Automorphism], up_to_inversion: bool) -> Result<Vec<RatFunc>> {
    let images: Vec<RatFunc> = group
        .par_iter()
        .map(|g| Ok(g.apply(x)?.reduce()))
        .collect::<Result<_>>()?;
    let mut out: Vec<RatFunc> = Vec::new();
    let mut index: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
    for f in images {
        let key = if up_to_inversion { f.inversion_key() } else { f.fingerprint() };
        let same = |g: &RatFunc| {
            if up_to_inversion {
                g.equivalent_up_to_inversion(&f)
            } else {
                g.equivalent(&f)
            }
        };
        let seen = if key == Fingerprint::Unknown {
            out.iter().any(same)
        } else {
            index.get(&key).is_some_and(|v| v.iter().any(|&i| same(&out[i])))
                || index.get(&Fingerprint::Unknown).is_some_and(|v| v.iter().any(|&i| same(&out[i])))
        };
        if !seen {
            index.entry(key).or_default().push(out.len());
            out.push(f);
        }
    }
    Ok(out)
}
