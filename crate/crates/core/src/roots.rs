//! Irreducible root systems in Bourbaki coordinates.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cokernel_invariant_factors, rational_inverse, IntMatrix, RatVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// Family letter plus Lie rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSystemType {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok || rank > 64 {
            return Err(Error::InvalidRank { family: family.letter(), rank });
        }
        Ok(Self { family, rank })
    }

    pub fn a(rank: usize) -> Self {
        Self::new(Family::A, rank).expect("valid rank")
    }
    pub fn b(rank: usize) -> Self {
        Self::new(Family::B, rank).expect("valid rank")
    }
    pub fn c(rank: usize) -> Self {
        Self::new(Family::C, rank).expect("valid rank")
    }
    pub fn d(rank: usize) -> Self {
        Self::new(Family::D, rank).expect("valid rank")
    }
    pub fn e(rank: usize) -> Self {
        Self::new(Family::E, rank).expect("valid rank")
    }
    pub fn f4() -> Self {
        Self { family: Family::F, rank: 4 }
    }
    pub fn g2() -> Self {
        Self { family: Family::G, rank: 2 }
    }

    /// Order of the Weyl group from the classical formulas.
    pub fn weyl_group_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Number of roots from the classical formulas.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    /// Note for low-rank members that coincide with another family.
    pub fn isomorphism_note(&self) -> Option<&'static str> {
        match (self.family, self.rank) {
            (Family::C, 2) => Some("C2 is isomorphic to B2"),
            (Family::D, 3) => Some("D3 is isomorphic to A3"),
            _ => None,
        }
    }

    fn simple_roots(&self) -> (usize, Vec<RatVector>) {
        let n = self.rank;
        // Vectors are written with denominator 2 throughout.
        let unit = |dim: usize, i: usize, c: i64| {
            let mut v = vec![0i64; dim];
            v[i] = 2 * c;
            v
        };
        let diff = |dim: usize, i: usize, j: usize| {
            let mut v = vec![0i64; dim];
            v[i] += 2;
            v[j] -= 2;
            v
        };
        let (dim, raw): (usize, Vec<Vec<i64>>) = match self.family {
            Family::A => (n + 1, (0..n).map(|i| diff(n + 1, i, i + 1)).collect()),
            Family::B | Family::C | Family::D => {
                let mut v: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                v.push(match self.family {
                    Family::B => unit(n, n - 1, 1),
                    Family::C => unit(n, n - 1, 2),
                    _ => {
                        let mut w = unit(n, n - 2, 1);
                        w[n - 1] = 2;
                        w
                    }
                });
                (n, v)
            }
            Family::E => {
                let mut a1 = vec![-1i64; 8];
                a1[0] = 1;
                a1[7] = 1;
                let mut a2 = vec![0i64; 8];
                a2[0] = 2;
                a2[1] = 2;
                let mut v = vec![a1, a2];
                for i in 3..=n {
                    v.push(diff(8, i - 2, i - 3));
                }
                (8, v)
            }
            Family::F => (4, vec![diff(4, 1, 2), diff(4, 2, 3), unit(4, 3, 1), vec![1, -1, -1, -1]]),
            Family::G => (3, vec![diff(3, 0, 1), vec![-4, 2, 2]]),
        };
        (dim, raw.iter().map(|v| RatVector::from_scaled(v, 2)).collect())
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    /// Accepts `E6`, `e6`, `B_4`, `A 3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let parse_err = || Error::Parse { line: 1, msg: format!("unrecognized root system type {s:?}") };
        let family = chars.next().and_then(Family::from_letter).ok_or_else(parse_err)?;
        let rest = chars.as_str().trim_start_matches(['_', ' ']);
        let rank = rest.parse::<usize>().map_err(|_| parse_err())?;
        Self::new(family, rank)
    }
}

/// An irreducible root system with its lattice data.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub ty: RootSystemType,
    pub ambient_dim: usize,
    pub simple_roots: Vec<RatVector>,
    /// Entry (i, j) is ⟨αⱼ, αᵢ⟩ = 2(αⱼ, αᵢ)/(αᵢ, αᵢ).
    pub cartan: IntMatrix,
    cartan_small: Vec<Vec<i64>>,
    /// Inner products (αᵢ, αⱼ).
    gram: Vec<Vec<BigRational>>,
    /// All roots in α-coordinates, sorted.
    pub roots_alpha: Vec<Vec<i64>>,
    /// All roots in ambient coordinates, sorted.
    pub roots: Vec<RatVector>,
    pub fundamental_weights: Vec<RatVector>,
    pub fundamental_weights_alpha: Vec<RatVector>,
    pub warning: Option<String>,
}

impl RootSystem {
    pub fn build(ty: RootSystemType) -> Result<Self> {
        let ty = RootSystemType::new(ty.family, ty.rank)?;
        let n = ty.rank;
        let (ambient_dim, simple_roots) = ty.simple_roots();

        let gram: Vec<Vec<BigRational>> = simple_roots
            .iter()
            .map(|a| simple_roots.iter().map(|b| a.dot(b)).collect())
            .collect();
        let mut cartan = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let q = BigRational::from_integer(BigInt::from(2)) * &gram[j][i] / &gram[i][i];
                debug_assert!(q.is_integer());
                cartan.set(i, j, q.to_integer());
            }
        }
        let cartan_small = cartan.to_i64_rows().expect("Cartan entries are small");

        let inv = rational_inverse(&cartan).expect("Cartan matrix is nonsingular");
        // Column i of C⁻¹ holds the α-coordinates of ϖᵢ.
        let fundamental_weights_alpha: Vec<RatVector> = (0..n)
            .map(|i| RatVector::from_rationals(&(0..n).map(|k| inv[k][i].clone()).collect::<Vec<_>>()))
            .collect();

        let mut rs = RootSystem {
            ty,
            ambient_dim,
            simple_roots,
            cartan,
            cartan_small,
            gram,
            roots_alpha: Vec::new(),
            roots: Vec::new(),
            fundamental_weights: Vec::new(),
            fundamental_weights_alpha,
            warning: ty.isomorphism_note().map(str::to_owned),
        };
        if let Some(w) = &rs.warning {
            log::info!("{w}");
        }
        rs.fundamental_weights = rs.fundamental_weights_alpha.iter().map(|w| rs.alpha_to_ambient(w)).collect();
        rs.roots_alpha = rs.generate_roots();
        let mut roots: Vec<RatVector> = rs.roots_alpha.iter().map(|r| rs.alpha_to_ambient(&RatVector::from_ints(r))).collect();
        roots.sort();
        rs.roots = roots;
        Ok(rs)
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan_small[i][j]
    }

    pub fn cartan_rows(&self) -> &[Vec<i64>] {
        &self.cartan_small
    }

    /// Inner product (αᵢ, αⱼ).
    pub fn gram(&self, i: usize, j: usize) -> &BigRational {
        &self.gram[i][j]
    }

    /// Applies sᵢ to integer α-coordinates in place.
    pub fn reflect_alpha(&self, i: usize, v: &mut [i64]) {
        let pairing: i64 = self.cartan_small[i].iter().zip(v.iter()).map(|(c, x)| c * x).sum();
        v[i] -= pairing;
    }

    fn generate_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut seen: FxHashSet<Vec<i64>> = FxHashSet::default();
        let mut frontier: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        seen.extend(frontier.iter().cloned());
        while let Some(v) = frontier.pop() {
            for i in 0..n {
                let mut w = v.clone();
                self.reflect_alpha(i, &mut w);
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        let sorted: BTreeSet<Vec<i64>> = seen.into_iter().collect();
        sorted.into_iter().collect()
    }

    /// Positive roots in α-coordinates.
    pub fn positive_roots_alpha(&self) -> Vec<Vec<i64>> {
        self.roots_alpha.iter().filter(|r| r.iter().all(|&x| x >= 0)).cloned().collect()
    }

    pub fn alpha_to_ambient(&self, v: &RatVector) -> RatVector {
        let mut acc = RatVector::zero(self.ambient_dim);
        for (k, a) in self.simple_roots.iter().enumerate() {
            let c = v.get(k);
            if !c.is_zero() {
                acc = acc.add(&a.scale(&c));
            }
        }
        acc
    }

    /// Solves for α-coordinates; fails when `v` is outside the rational span of the roots.
    pub fn ambient_to_alpha(&self, v: &RatVector) -> Result<RatVector> {
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: v.dim() });
        }
        let n = self.rank();
        let b: Vec<BigRational> = self.simple_roots.iter().map(|a| v.dot(a)).collect();
        // Gram matrix scaled to integers for the shared inverse routine.
        let den = self.gram.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let mut g = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, (&self.gram[i][j] * BigRational::from_integer(den.clone())).to_integer());
            }
        }
        let inv = rational_inverse(&g).expect("Gram matrix is nonsingular");
        let scale = BigRational::from_integer(den);
        let coords: Vec<BigRational> =
            (0..n).map(|i| (0..n).map(|j| &inv[i][j] * &b[j]).sum::<BigRational>() * &scale).collect();
        let alpha = RatVector::from_rationals(&coords);
        if self.alpha_to_ambient(&alpha) != *v {
            return Err(Error::NotInRootSpan);
        }
        Ok(alpha)
    }

    /// ⟨v, αⱼ⟩ for `v` in α-coordinates.
    pub fn pairing_with_simple(&self, v: &RatVector, j: usize) -> BigRational {
        (0..self.rank())
            .map(|k| v.get(k) * BigRational::from_integer(BigInt::from(self.cartan_small[j][k])))
            .sum()
    }

    /// Orders zᵢ of ϖᵢ modulo the root lattice.
    pub fn weight_orders(&self) -> Vec<u64> {
        self.fundamental_weights_alpha
            .iter()
            .map(|w| w.denominator().to_u64().expect("small denominator"))
            .collect()
    }

    pub fn cartan_determinant(&self) -> BigInt {
        self.cartan.determinant().expect("square").abs()
    }

    /// Invariant factors of Λ/L.
    pub fn weight_lattice_quotient(&self) -> Vec<u64> {
        cokernel_invariant_factors(&self.cartan.transpose())
            .expect("Cartan matrix is nonsingular")
            .iter()
            .map(|x| x.to_u64().expect("small factor"))
            .collect()
    }

    pub fn max_abs_root_coefficient(&self) -> i64 {
        self.roots_alpha.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types() -> Vec<RootSystemType> {
        let mut v = Vec::new();
        for n in 1..=7 {
            v.push(RootSystemType::a(n));
        }
        for n in 2..=7 {
            v.push(RootSystemType::b(n));
            v.push(RootSystemType::c(n));
        }
        for n in 3..=7 {
            v.push(RootSystemType::d(n));
        }
        for n in 6..=8 {
            v.push(RootSystemType::e(n));
        }
        v.push(RootSystemType::f4());
        v.push(RootSystemType::g2());
        v
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn root_counts_match_formulas() {
        for ty in all_types() {
            let rs = RootSystem::build(ty).unwrap();
            assert_eq!(rs.roots.len(), ty.root_count(), "{ty}");
            assert_eq!(rs.roots_alpha.len(), ty.root_count(), "{ty}");
        }
        assert_eq!(RootSystem::build(RootSystemType::e(6)).unwrap().roots.len(), 72);
        assert_eq!(RootSystem::build(RootSystemType::d(4)).unwrap().roots.len(), 24);
    }

    #[test]
    fn a1_roots() {
        let rs = RootSystem::build(RootSystemType::a(1)).unwrap();
        assert_eq!(rs.roots, vec![RatVector::from_ints(&[-1, 1]), RatVector::from_ints(&[1, -1])]);
    }

    #[test]
    fn e6_roots_match_explicit_description() {
        let rs = RootSystem::build(RootSystemType::e(6)).unwrap();
        let mut expected = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let mut v = vec![0; 8];
                    v[i] = 2 * si;
                    v[j] = 2 * sj;
                    expected.push(RatVector::from_scaled(&v, 2));
                }
            }
        }
        for mask in 0u32..32 {
            if mask.count_ones() % 2 != 0 {
                continue;
            }
            let mut v = vec![0i64; 8];
            for (i, x) in v.iter_mut().enumerate().take(5) {
                *x = if mask >> i & 1 == 1 { -1 } else { 1 };
            }
            v[5] = -1;
            v[6] = -1;
            v[7] = 1;
            expected.push(RatVector::from_scaled(&v, 2));
            expected.push(RatVector::from_scaled(&v.iter().map(|x| -x).collect::<Vec<_>>(), 2));
        }
        expected.sort();
        assert_eq!(rs.roots, expected);
    }

    #[test]
    fn fundamental_weights_are_dual() {
        for ty in all_types() {
            let rs = RootSystem::build(ty).unwrap();
            for i in 0..ty.rank {
                for j in 0..ty.rank {
                    let w = &rs.fundamental_weights[i];
                    let a = &rs.simple_roots[j];
                    let pairing = BigRational::from_integer(BigInt::from(2)) * w.dot(a) / a.dot(a);
                    let expected = if i == j { BigRational::one() } else { BigRational::zero() };
                    assert_eq!(pairing, expected, "{ty} ϖ{} α{}", i + 1, j + 1);
                    assert_eq!(rs.pairing_with_simple(&rs.fundamental_weights_alpha[i], j), expected);
                }
                let back = rs.ambient_to_alpha(&rs.fundamental_weights[i]).unwrap();
                assert_eq!(back, rs.fundamental_weights_alpha[i]);
            }
        }
    }

    #[test]
    fn explicit_weight_coordinates() {
        let e6 = RootSystem::build(RootSystemType::e(6)).unwrap();
        assert_eq!(e6.fundamental_weights_alpha[1], RatVector::from_ints(&[1, 2, 2, 3, 2, 1]));
        assert_eq!(e6.fundamental_weights_alpha[0], RatVector::from_scaled(&[4, 3, 5, 6, 4, 2], 3));
        assert_eq!(e6.fundamental_weights_alpha[5], RatVector::from_scaled(&[2, 3, 4, 6, 5, 4], 3));

        let e7 = RootSystem::build(RootSystemType::e(7)).unwrap();
        assert_eq!(e7.fundamental_weights_alpha[0], RatVector::from_ints(&[2, 2, 3, 4, 3, 2, 1]));
        assert_eq!(e7.fundamental_weights[0], RatVector::from_ints(&[0, 0, 0, 0, 0, 0, -1, 1]));
        assert_eq!(e7.fundamental_weights_alpha[1], RatVector::from_scaled(&[4, 7, 8, 12, 9, 6, 3], 2));

        let a1 = RootSystem::build(RootSystemType::a(1)).unwrap();
        assert_eq!(a1.fundamental_weights_alpha[0].get(0), q(1, 2));

        let d5 = RootSystem::build(RootSystemType::d(5)).unwrap();
        assert_eq!(d5.fundamental_weights_alpha[4], RatVector::from_scaled(&[2, 4, 6, 3, 5], 4));
        assert_eq!(d5.fundamental_weights[4], RatVector::from_scaled(&[1, 1, 1, 1, 1], 2));
        assert_eq!(d5.fundamental_weights_alpha[3], RatVector::from_scaled(&[2, 4, 6, 5, 3], 4));
    }

    #[test]
    fn a_family_weight_formula() {
        // ϖᵢ = e₁+⋯+eᵢ − (i/n)Σeⱼ
        for n in 2..=7usize {
            let rs = RootSystem::build(RootSystemType::a(n - 1)).unwrap();
            for i in 1..n {
                let v: Vec<i64> = (0..n).map(|j| if j < i { n as i64 - i as i64 } else { -(i as i64) }).collect();
                assert_eq!(rs.fundamental_weights[i - 1], RatVector::from_scaled(&v, n as i64));
            }
        }
    }

    #[test]
    fn weight_orders() {
        let a3 = RootSystem::build(RootSystemType::a(3)).unwrap();
        assert_eq!(a3.weight_orders(), vec![4, 2, 4]);
        let d6 = RootSystem::build(RootSystemType::d(6)).unwrap();
        assert_eq!(d6.weight_orders(), vec![2, 1, 2, 1, 2, 2]);
        let d4 = RootSystem::build(RootSystemType::d(4)).unwrap();
        assert_eq!(d4.weight_orders(), vec![2, 1, 2, 2]);
        let e8 = RootSystem::build(RootSystemType::e(8)).unwrap();
        assert!(e8.weight_orders().iter().all(|&z| z == 1));
        // Closed form zᵢ = n / gcd(i, n) for A_{n−1}.
        for n in 2..=9u64 {
            let rs = RootSystem::build(RootSystemType::a(n as usize - 1)).unwrap();
            let expected: Vec<u64> = (1..n).map(|i| n / i.gcd(&n)).collect();
            assert_eq!(rs.weight_orders(), expected);
        }
    }

    #[test]
    fn cartan_properties() {
        for ty in all_types() {
            let rs = RootSystem::build(ty).unwrap();
            for i in 0..ty.rank {
                assert_eq!(rs.cartan_entry(i, i), 2);
            }
            let det = rs.cartan_determinant();
            let expected = match ty.family {
                Family::A => ty.rank as i64 + 1,
                Family::B | Family::C => 2,
                Family::D => 4,
                Family::E => 9 - ty.rank as i64,
                _ => 1,
            };
            assert_eq!(det, BigInt::from(expected), "{ty}");
            let prod: u64 = rs.weight_lattice_quotient().iter().product();
            assert_eq!(BigInt::from(prod), det);
        }
        let a2 = RootSystem::build(RootSystemType::a(2)).unwrap();
        assert_eq!(a2.cartan, IntMatrix::from_rows(&[[2, -1], [-1, 2]]).unwrap());
    }

    #[test]
    fn crystallographic_and_integral() {
        for ty in all_types() {
            let rs = RootSystem::build(ty).unwrap();
            for a in &rs.roots {
                for b in &rs.roots {
                    let p = BigRational::from_integer(BigInt::from(2)) * b.dot(a) / a.dot(a);
                    assert!(p.is_integer());
                }
                let alpha = rs.ambient_to_alpha(a).unwrap();
                assert!(alpha.is_integral());
            }
        }
    }

    #[test]
    fn c_and_d_root_lattices_coincide() {
        for n in 3..=7 {
            let c = RootSystem::build(RootSystemType::c(n)).unwrap();
            let d = RootSystem::build(RootSystemType::d(n)).unwrap();
            for r in &c.roots {
                assert!(d.ambient_to_alpha(r).unwrap().is_integral());
            }
            for r in &d.roots {
                assert!(c.ambient_to_alpha(r).unwrap().is_integral());
            }
        }
    }

    #[test]
    fn parsing_and_validation() {
        assert_eq!("E6".parse::<RootSystemType>().unwrap(), RootSystemType::e(6));
        assert_eq!("b_4".parse::<RootSystemType>().unwrap(), RootSystemType::b(4));
        assert_eq!("A 3".parse::<RootSystemType>().unwrap(), RootSystemType::a(3));
        assert!(matches!(RootSystemType::new(Family::B, 1), Err(Error::InvalidRank { .. })));
        assert!(matches!(RootSystemType::new(Family::E, 9), Err(Error::InvalidRank { .. })));
        assert!("X3".parse::<RootSystemType>().is_err());
        assert!(RootSystem::build(RootSystemType::c(2)).unwrap().warning.is_some());
        assert!(RootSystem::build(RootSystemType::d(3)).unwrap().warning.is_some());
    }

    #[test]
    fn outside_root_span() {
        let a2 = RootSystem::build(RootSystemType::a(2)).unwrap();
        assert_eq!(a2.ambient_to_alpha(&RatVector::from_ints(&[1, 0, 0])), Err(Error::NotInRootSpan));
    }
}
