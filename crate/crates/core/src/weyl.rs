//! Weyl groups as integer matrices acting on α-coordinates.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix, RatVector};
use crate::roots::{Family, RootSystem};

pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;
pub const DEFAULT_GROUP_CAP: usize = 4_000_000;

const MAX_RANK: usize = 8;

/// A Weyl group element as an n×n matrix on α-coordinates (column j is w(αⱼ)).
///
/// Columns are roots, so entries are bounded by the largest root coefficient
/// (6 for E8) and fit in `i8`. Elements are compact and hash by their bytes.
#[derive(Clone, Copy)]
pub struct WeylElement {
    rank: u8,
    entries: [i8; MAX_RANK * MAX_RANK],
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.entries[..self.len()] == other.entries[..other.len()]
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.entries[..self.len()].hash(state);
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rank, &self.entries[..self.len()]).cmp(&(other.rank, &other.entries[..other.len()]))
    }
}

impl WeylElement {
    fn len(&self) -> usize {
        let n = self.rank as usize;
        n * n
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn identity(rank: usize) -> Self {
        assert!(rank <= MAX_RANK, "compact storage supports rank ≤ {MAX_RANK}");
        let mut entries = [0i8; MAX_RANK * MAX_RANK];
        for i in 0..rank {
            entries[i * rank + i] = 1;
        }
        Self { rank: rank as u8, entries }
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n > MAX_RANK {
            return Err(Error::EntryOverflow);
        }
        let mut w = Self::identity(n);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: r.len() });
            }
            for (j, &x) in r.iter().enumerate() {
                w.entries[i * n + j] = i8::try_from(x).map_err(|_| Error::EntryOverflow)?;
            }
        }
        Ok(w)
    }

    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        let rows = m.to_i64_rows().ok_or(Error::EntryOverflow)?;
        if m.rows() != m.cols() {
            return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
        }
        Self::from_rows(&rows)
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.rank() + j] as i64
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.to_rows()).expect("square")
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.rank();
        let mut out = Self::identity(n);
        for i in 0..n {
            for j in 0..n {
                let s: i64 = (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum();
                out.entries[i * n + j] = s as i8;
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|k| self.get(i, k) * v[k]).sum()).collect()
    }

    pub fn apply_rat(&self, v: &RatVector) -> RatVector {
        let n = self.rank();
        let nums = (0..n)
            .map(|i| (0..n).map(|k| BigInt::from(self.get(i, k)) * &v.numerators()[k]).sum())
            .collect();
        RatVector::new(nums, v.denominator().clone())
    }

    pub fn order(&self) -> usize {
        let id = Self::identity(self.rank());
        let mut p = *self;
        let mut k = 1;
        while p != id {
            p = p.mul(self);
            k += 1;
        }
        k
    }

    pub fn inverse(&self) -> Self {
        let k = self.order();
        let mut p = Self::identity(self.rank());
        for _ in 0..k - 1 {
            p = p.mul(self);
        }
        p
    }

    pub fn is_involution(&self) -> bool {
        self.mul(self).is_identity()
    }

    pub fn trace(&self) -> i64 {
        (0..self.rank()).map(|i| self.get(i, i)).sum()
    }

    pub fn determinant(&self) -> BigInt {
        self.to_matrix().determinant().expect("square")
    }

    /// Rows of `1 − w`.
    fn one_minus(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j) - self.get(i, j)).collect())
            .collect()
    }

    /// True iff `1 − w` has rank exactly 1.
    pub fn is_reflection(&self) -> bool {
        let n = self.rank();
        // A finite-order element with rank(1 − w) = 1 has eigenvalues (−1, 1, …, 1).
        if self.trace() != n as i64 - 2 {
            return false;
        }
        let a = self.one_minus();
        let Some((r, c)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| a[i][j] != 0) else {
            return false;
        };
        (0..n).all(|s| (0..n).all(|d| a[r][c] * a[s][d] == a[r][d] * a[s][c]))
    }

    /// Conjugate `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.mul(self).mul(&g.inverse())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl Serialize for WeylElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

/// Simple reflections: sᵢ has column j equal to eⱼ − ⟨αⱼ, αᵢ⟩ eᵢ.
pub fn simple_reflections(rs: &RootSystem) -> Vec<WeylElement> {
    let n = rs.rank();
    (0..n)
        .map(|i| {
            let mut w = WeylElement::identity(n);
            for j in 0..n {
                let v = i64::from(i == j) - rs.cartan_entry(i, j);
                w.entries[i * n + j] = v as i8;
            }
            w
        })
        .collect()
}

/// Order of `H¹(⟨w⟩, L)` for an involution `w` on `L = Zⁿ`.
///
/// `ker(1 + w)` is the saturation of `(1 − w)L`, so the quotient is the torsion
/// of `coker(1 − w)`: the product of the nonzero Smith invariants of `1 − w`.
pub fn h1_cyclic2(w: &WeylElement) -> Result<u64> {
    if !w.is_involution() {
        return Err(Error::NotInvolution);
    }
    let m = IntMatrix::from_rows(&w.one_minus())?;
    let snf = smith_normal_form(&m);
    Ok(snf.invariant_factors().iter().map(|d| d.to_u64().expect("small factor")).product())
}

/// A reflection `s` is diagonalizable iff `1 − s` (rank 1) has content 2.
pub fn is_diagonalizable_reflection(w: &WeylElement) -> bool {
    if !w.is_reflection() {
        return false;
    }
    let content = w.one_minus().iter().flatten().fold(0i64, |g, &x| g.gcd(&x));
    content == 2
}

/// An orbit in both coordinate systems, sorted by ambient coordinates.
#[derive(Clone, Debug)]
pub struct OrbitSet {
    /// Common denominator of the α-coordinates.
    pub scale: i64,
    /// α-coordinates multiplied by `scale`.
    pub alpha_scaled: Vec<Vec<i64>>,
    pub ambient: Vec<RatVector>,
}

impl OrbitSet {
    pub fn len(&self) -> usize {
        self.ambient.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ambient.is_empty()
    }

    pub fn alpha(&self, k: usize) -> RatVector {
        RatVector::from_scaled(&self.alpha_scaled[k], self.scale)
    }
}

/// W-orbit of `v` (α-coordinates) by closure under simple reflections.
pub fn orbit(rs: &RootSystem, v: &RatVector, cap: usize) -> Result<OrbitSet> {
    if v.dim() != rs.rank() {
        return Err(Error::DimensionMismatch { expected: rs.rank(), got: v.dim() });
    }
    let scale = v.denominator_i64();
    let start = v.scaled_to(scale).ok_or(Error::EntryOverflow)?;
    let mut seen: FxHashSet<Vec<i64>> = FxHashSet::default();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for i in 0..rs.rank() {
                let mut q = p.clone();
                rs.reflect_alpha(i, &mut q);
                if !seen.contains(&q) {
                    if seen.len() >= cap {
                        return Err(Error::OrbitCapExceeded { cap });
                    }
                    seen.insert(q.clone());
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    let mut points: Vec<(RatVector, Vec<i64>)> = seen
        .into_par_iter()
        .map(|a| (rs.alpha_to_ambient(&RatVector::from_scaled(&a, scale)), a))
        .collect();
    points.sort();
    let (ambient, alpha_scaled) = points.into_iter().unzip();
    Ok(OrbitSet { scale, alpha_scaled, ambient })
}

/// Orbit of a vector given in ambient coordinates.
pub fn orbit_ambient(rs: &RootSystem, v: &RatVector, cap: usize) -> Result<OrbitSet> {
    orbit(rs, &rs.ambient_to_alpha(v)?, cap)
}

/// All elements of W by breadth-first closure of the simple reflections.
///
/// Left multiplication by sᵢ only rewrites row i, which keeps the inner loop cheap.
pub fn enumerate_group(rs: &RootSystem, cap: usize) -> Result<Vec<WeylElement>> {
    let order = rs.ty.weyl_group_order();
    if order > cap as u128 {
        return Err(Error::GroupCapExceeded { order, cap });
    }
    let n = rs.rank();
    if n > MAX_RANK {
        return Err(Error::EntryOverflow);
    }
    let cartan = rs.cartan_rows();
    let id = WeylElement::identity(n);
    let mut seen: FxHashSet<WeylElement> = FxHashSet::default();
    seen.reserve(order as usize);
    seen.insert(id);
    let mut all = Vec::with_capacity(order as usize);
    all.push(id);
    let mut head = 0;
    while head < all.len() {
        let w = all[head];
        head += 1;
        for (i, crow) in cartan.iter().enumerate() {
            let mut u = w;
            for j in 0..n {
                let s: i64 = (0..n).map(|k| crow[k] * w.get(k, j)).sum();
                u.entries[i * n + j] = (w.get(i, j) - s) as i8;
            }
            if seen.insert(u) {
                if all.len() >= cap {
                    return Err(Error::GroupCapExceeded { order, cap });
                }
                all.push(u);
            }
        }
    }
    Ok(all)
}

/// Reflection `s_β` for a root `β` in α-coordinates.
pub fn root_reflection(rs: &RootSystem, beta: &[i64]) -> WeylElement {
    let n = rs.rank();
    let b = RatVector::from_ints(beta);
    // (v, β) for v = αⱼ and (β, β), from the Gram matrix.
    let pair = |j: usize| -> BigRational { (0..n).map(|k| rs.gram(j, k) * BigRational::from_integer(BigInt::from(beta[k]))).sum() };
    let bb: BigRational = (0..n).map(|j| pair(j) * BigRational::from_integer(BigInt::from(beta[j]))).sum();
    let mut rows = vec![vec![0i64; n]; n];
    for j in 0..n {
        let c = BigRational::from_integer(BigInt::from(2)) * pair(j) / &bb;
        let c = c.to_integer().to_i64().expect("crystallographic");
        for i in 0..n {
            rows[i][j] = i64::from(i == j) - c * b.numerators()[i].to_i64().expect("small");
        }
    }
    WeylElement::from_rows(&rows).expect("reflection entries are small")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ScanMethod {
    /// Every group element was tested.
    Exhaustive,
    /// Only reflections `s_β`, β a positive root, were tested.
    RootReflections,
}

/// The diagonalizable reflections in W and the rank of the group they generate.
#[derive(Clone, Debug, Serialize)]
pub struct DiagonalizableReflections {
    pub elements: Vec<WeylElement>,
    /// `D` is elementary abelian of order `2^rank`.
    pub rank: usize,
    pub method: ScanMethod,
}

impl DiagonalizableReflections {
    pub fn is_trivial(&self) -> bool {
        self.elements.is_empty()
    }
}

fn generated_rank(gens: &[WeylElement], n: usize) -> usize {
    let mut group: FxHashSet<WeylElement> = FxHashSet::default();
    group.insert(WeylElement::identity(n));
    let mut frontier: Vec<WeylElement> = vec![WeylElement::identity(n)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.mul(&x);
            if group.insert(y) {
                frontier.push(y);
            }
        }
    }
    let size = group.len();
    assert!(size.is_power_of_two(), "diagonalizable reflections generate an elementary abelian 2-group");
    size.trailing_zeros() as usize
}

/// Computes `D`. Within `group_cap` every group element is tested; beyond it the
/// scan falls back to root reflections, which are all the reflections of W.
pub fn diagonalizable_reflection_subgroup(rs: &RootSystem, group_cap: usize) -> Result<DiagonalizableReflections> {
    let n = rs.rank();
    let (mut elements, method) = if rs.ty.weyl_group_order() <= group_cap as u128 {
        let group = enumerate_group(rs, group_cap)?;
        let found: Vec<WeylElement> =
            group.par_iter().filter(|w| is_diagonalizable_reflection(w)).copied().collect();
        (found, ScanMethod::Exhaustive)
    } else {
        log::info!("{}: |W| beyond cap {group_cap}, scanning root reflections", rs.ty);
        let found: Vec<WeylElement> = rs
            .positive_roots_alpha()
            .iter()
            .map(|b| root_reflection(rs, b))
            .filter(is_diagonalizable_reflection)
            .collect();
        (found, ScanMethod::RootReflections)
    };
    elements.sort();
    let rank = if elements.is_empty() { 0 } else { generated_rank(&elements, n) };
    Ok(DiagonalizableReflections { elements, rank, method })
}

/// Whether `D` is nontrivial, settled by direct construction where possible.
///
/// For type B the sign change `dₙ = s_{αₙ}` is diagonalizable, so `D ≠ 1` holds
/// without any scan.
pub fn has_diagonalizable_reflection(rs: &RootSystem, group_cap: usize) -> Result<bool> {
    if rs.ty.family == Family::B {
        let s = simple_reflections(rs);
        if is_diagonalizable_reflection(&s[rs.rank() - 1]) {
            return Ok(true);
        }
    }
    Ok(!diagonalizable_reflection_subgroup(rs, group_cap)?.is_trivial())
}

/// Whether `w` maps every root to a root.
pub fn preserves_roots(rs: &RootSystem, w: &WeylElement, roots: &FxHashSet<Vec<i64>>) -> bool {
    rs.roots_alpha.iter().all(|r| roots.contains(&w.apply(r)))
}
