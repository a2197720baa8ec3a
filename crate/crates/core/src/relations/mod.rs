//! Binomial relations among Hilbert basis elements.

mod fixture;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::omega_polynomial;
use crate::laurent::{ExponentLattice, LaurentPoly};
use crate::monoid::HilbertBasis;
use crate::roots::RootSystem;

pub use fixture::{fixture, parse_fixture, RelationFixture};

pub const DEFAULT_FIBER_CAP: usize = 1_000_000;

/// `Π gᵢ^{plusᵢ} = Π gᵢ^{minusᵢ}` over generators `g₁, …, gₖ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Binomial {
    pub plus: Vec<u32>,
    pub minus: Vec<u32>,
}

impl Binomial {
    pub fn new(plus: Vec<u32>, minus: Vec<u32>) -> Result<Self> {
        if plus.len() != minus.len() {
            return Err(Error::DimensionMismatch { expected: plus.len(), got: minus.len() });
        }
        Ok(Self { plus, minus })
    }

    pub fn len(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.iter().chain(&self.minus).all(|&x| x == 0)
    }

    pub fn degree(&self) -> u32 {
        self.plus.iter().sum::<u32>().max(self.minus.iter().sum())
    }

    /// Cancels common factors and puts the larger side first.
    pub fn normalized(&self) -> Self {
        let mut plus = self.plus.clone();
        let mut minus = self.minus.clone();
        for (p, m) in plus.iter_mut().zip(minus.iter_mut()) {
            let c = (*p).min(*m);
            *p -= c;
            *m -= c;
        }
        if side_key(&plus) < side_key(&minus) {
            std::mem::swap(&mut plus, &mut minus);
        }
        Self { plus, minus }
    }

    pub fn reversed(&self) -> Self {
        Self { plus: self.minus.clone(), minus: self.plus.clone() }
    }

    /// Renders with the given generator names.
    pub fn display_with(&self, names: &[String]) -> String {
        format!("{} = {}", monomial(&self.plus, names), monomial(&self.minus, names))
    }
}

fn side_key(v: &[u32]) -> (u32, Vec<u32>) {
    (v.iter().sum(), v.to_vec())
}

fn monomial(e: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(i, &x)| if x == 1 { names[i].clone() } else { format!("{}^{x}", names[i]) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.len()).map(|i| format!("g{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

/// `Σ eᵢ·hᵢ`.
pub fn image(basis: &HilbertBasis, e: &[u32]) -> Vec<i64> {
    let mut out = vec![0i64; basis.dim()];
    for (k, &c) in e.iter().enumerate() {
        for (o, h) in out.iter_mut().zip(&basis.elements[k]) {
            *o += c as i64 * h;
        }
    }
    out
}

pub fn verify_relation(basis: &HilbertBasis, b: &Binomial) -> Result<bool> {
    if b.len() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), got: b.len() });
    }
    Ok(image(basis, &b.plus) == image(basis, &b.minus))
}

/// Both sides expanded as products of orbit-sum invariants `Ω(hᵢ)` must agree exactly.
/// `basis` is in ϖ-coordinates of `rs`.
pub fn verify_relation_laurent(rs: &RootSystem, basis: &HilbertBasis, b: &Binomial, cap: usize) -> Result<bool> {
    if b.len() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), got: b.len() });
    }
    if b.is_empty() {
        return Ok(true);
    }
    let mut cache: FxHashMap<usize, LaurentPoly> = FxHashMap::default();
    let mut side = |e: &[u32]| -> Result<LaurentPoly> {
        let mut acc: Option<LaurentPoly> = None;
        for (k, &c) in e.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(k) {
                e.insert(omega_polynomial(rs, &basis.elements[k], cap)?);
            }
            let p = cache[&k].pow(c)?;
            acc = Some(match acc {
                None => p,
                Some(a) => {
                    let (a, p) = a.common_scale(&p)?;
                    a.mul(&p)?
                }
            });
        }
        Ok(acc.map(|p| p.reduce_scale()).unwrap_or_else(|| {
            LaurentPoly::one(ExponentLattice::alpha(rs.rank()))
        }))
    };
    let lhs = side(&b.plus)?;
    let rhs = side(&b.minus)?;
    Ok(lhs == rhs)
}

/// All multisets of generators of total degree `1..=bound`.
fn factorizations_up_to(k: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            if cur.iter().any(|&x| x > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for c in 0..=left {
            cur[i] = c;
            rec(i + 1, left - c, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, bound, &mut vec![0; k], &mut out);
    out
}

/// Every factorization of `v` over the basis, by bounded knapsack.
pub fn fiber(basis: &HilbertBasis, v: &[i64], cap: usize) -> Result<Vec<Vec<u32>>> {
    fn rec(
        basis: &[Vec<i64>],
        i: usize,
        rest: &mut Vec<i64>,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        cap: usize,
    ) -> Result<()> {
        if rest.iter().all(|&x| x == 0) {
            if out.len() >= cap {
                return Err(Error::FiberCapExceeded { cap });
            }
            out.push(cur.clone());
            return Ok(());
        }
        if i == basis.len() {
            return Ok(());
        }
        let h = &basis[i];
        let max = h
            .iter()
            .zip(rest.iter())
            .filter(|(a, _)| **a > 0)
            .map(|(a, r)| r / a)
            .min()
            .unwrap_or(0)
            .max(0);
        for c in (0..=max).rev() {
            for (r, a) in rest.iter_mut().zip(h) {
                *r -= c * a;
            }
            cur[i] = c as u32;
            let res = rec(basis, i + 1, rest, cur, out, cap);
            for (r, a) in rest.iter_mut().zip(h) {
                *r += c * a;
            }
            res?;
        }
        cur[i] = 0;
        Ok(())
    }
    let mut out = Vec::new();
    rec(&basis.elements, 0, &mut v.to_vec(), &mut vec![0; basis.len()], &mut out, cap)?;
    out.sort_by_key(|a| side_key(a));
    Ok(out)
}

/// Monoid values reached by factorizations of degree ≤ bound, in canonical order.
fn fiber_keys(basis: &HilbertBasis, bound: u32) -> Vec<Vec<i64>> {
    let mut keys: Vec<Vec<i64>> = factorizations_up_to(basis.len(), bound).iter().map(|e| image(basis, e)).collect();
    keys.sort();
    keys.dedup();
    keys
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
    /// Component label per element: the smallest member index.
    fn labels(&mut self) -> Vec<usize> {
        (0..self.0.len()).map(|i| self.find(i)).collect()
    }
}

/// Binomials joining the components of every fiber reached by degree ≤ `bound`.
///
/// Two factorizations sharing a generator are connected through the smaller fiber
/// obtained by removing it; the remaining components need a new move each.
pub fn relations_bounded(basis: &HilbertBasis, bound: u32, fiber_cap: usize) -> Result<Vec<Binomial>> {
    let keys = fiber_keys(basis, bound);
    let per_fiber: Vec<Result<Vec<Binomial>>> = keys
        .par_iter()
        .map(|v| {
            let facts = fiber(basis, v, fiber_cap)?;
            let mut uf = UnionFind::new(facts.len());
            for i in 0..facts.len() {
                for j in i + 1..facts.len() {
                    if facts[i].iter().zip(&facts[j]).any(|(a, b)| *a > 0 && *b > 0) {
                        uf.union(i, j);
                    }
                }
            }
            let mut reps: Vec<usize> = uf.labels();
            reps.sort();
            reps.dedup();
            Ok(reps[1..]
                .iter()
                .map(|&r| Binomial { plus: facts[reps[0]].clone(), minus: facts[r].clone() }.normalized())
                .collect())
        })
        .collect();
    let mut out = Vec::new();
    for r in per_fiber {
        out.extend(r?);
    }
    out.sort_by(|a, b| (a.degree(), a).cmp(&(b.degree(), b)));
    out.dedup();
    Ok(out)
}

/// Component labels of each fiber under the moves `rels` (applied in both directions).
fn fiber_partitions(
    basis: &HilbertBasis,
    rels: &[Binomial],
    keys: &[Vec<i64>],
    fiber_cap: usize,
) -> Result<BTreeMap<Vec<i64>, Vec<usize>>> {
    let moves: Vec<Binomial> = rels.iter().flat_map(|b| [b.clone(), b.reversed()]).collect();
    let parts: Vec<Result<(Vec<i64>, Vec<usize>)>> = keys
        .par_iter()
        .map(|v| {
            let facts = fiber(basis, v, fiber_cap)?;
            let index: FxHashMap<&Vec<u32>, usize> = facts.iter().enumerate().map(|(i, f)| (f, i)).collect();
            let mut uf = UnionFind::new(facts.len());
            for (i, f) in facts.iter().enumerate() {
                for m in &moves {
                    if f.iter().zip(&m.plus).all(|(a, p)| a >= p) {
                        let g: Vec<u32> = f.iter().zip(&m.plus).zip(&m.minus).map(|((a, p), q)| a - p + q).collect();
                        if let Some(&j) = index.get(&g) {
                            uf.union(i, j);
                        }
                    }
                }
            }
            Ok((v.clone(), uf.labels()))
        })
        .collect();
    parts.into_iter().collect()
}

/// Whether the two relation sets connect the same factorizations in every fiber
/// reached by degree ≤ `bound`.
pub fn relations_equivalent(
    r1: &[Binomial],
    r2: &[Binomial],
    basis: &HilbertBasis,
    bound: u32,
    fiber_cap: usize,
) -> Result<bool> {
    let keys = fiber_keys(basis, bound);
    Ok(fiber_partitions(basis, r1, &keys, fiber_cap)? == fiber_partitions(basis, r2, &keys, fiber_cap)?)
}

/// Smallest `k` with `k·h` in the monoid generated by the `zᵢεᵢ`.
pub fn primary_power(h: &[i64], z: &[i64]) -> i64 {
    use num_integer::Integer;
    h.iter().zip(z).fold(1i64, |acc, (&x, &zi)| acc.lcm(&(zi / x.gcd(&zi))))
}
