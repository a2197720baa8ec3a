//! Sparse Laurent polynomials with exponents in a scaled lattice `(1/s)Zᵈ`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::RatVector;
use crate::roots::RootSystem;
use crate::weyl::{orbit, simple_reflections, WeylElement};

/// Coordinates the exponents are written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Frame {
    /// Simple-root coordinates; variables `yᵢ = x^{αᵢ}`.
    Alpha,
    /// Ambient Euclidean coordinates; variables `xᵢ = x^{eᵢ}`.
    Ambient,
}

/// Exponents are stored as integer vectors `s·e` for `e ∈ (1/s)Z^dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExponentLattice {
    pub dim: usize,
    pub scale: i64,
    pub frame: Frame,
}

impl ExponentLattice {
    pub fn new(dim: usize, scale: i64, frame: Frame) -> Self {
        assert!(scale >= 1, "scale must be positive");
        Self { dim, scale, frame }
    }

    pub fn alpha(dim: usize) -> Self {
        Self::new(dim, 1, Frame::Alpha)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    ring: ExponentLattice,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

/// Term count above which products are split across threads.
const PARALLEL_PRODUCT_THRESHOLD: usize = 1 << 14;

impl LaurentPoly {
    pub fn zero(ring: ExponentLattice) -> Self {
        Self { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: ExponentLattice, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(vec![0; ring.dim], c.into());
        p
    }

    pub fn one(ring: ExponentLattice) -> Self {
        Self::constant(ring, 1)
    }

    /// `c·x^{e/s}` with `e` already scaled.
    pub fn monomial(ring: ExponentLattice, scaled_exponent: Vec<i64>, c: impl Into<BigInt>) -> Result<Self> {
        if scaled_exponent.len() != ring.dim {
            return Err(Error::DimensionMismatch { expected: ring.dim, got: scaled_exponent.len() });
        }
        let mut p = Self::zero(ring);
        p.add_term(scaled_exponent, c.into());
        Ok(p)
    }

    pub fn ring(&self) -> ExponentLattice {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, scaled_exponent: &[i64]) -> BigInt {
        self.terms.get(scaled_exponent).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.ring.dim])
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale_by(&-BigInt::one()))
    }

    pub fn scale_by(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        Self { ring: self.ring, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn add_constant(&self, c: impl Into<BigInt>) -> Self {
        let mut out = self.clone();
        out.add_term(vec![0; self.ring.dim], c.into());
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let product_chunk = |chunk: &[(&Vec<i64>, &BigInt)]| {
            let mut acc: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
            for (ea, ca) in chunk {
                for (eb, cb) in &other.terms {
                    let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                    *acc.entry(e).or_default() += *ca * cb;
                }
            }
            acc
        };
        let lhs: Vec<(&Vec<i64>, &BigInt)> = self.terms.iter().collect();
        let merged = if lhs.len() * other.terms.len() > PARALLEL_PRODUCT_THRESHOLD {
            let chunk = lhs.len().div_ceil(rayon::current_num_threads().max(1)).max(1);
            lhs.par_chunks(chunk).map(product_chunk).reduce(BTreeMap::new, |mut a, b| {
                for (e, c) in b {
                    *a.entry(e).or_default() += c;
                }
                a
            })
        } else {
            product_chunk(&lhs)
        };
        let terms = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Self { ring: self.ring, terms })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut result = Self::one(self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Re-expresses the polynomial over a finer scale, a multiple of the current one.
    pub fn with_scale(&self, scale: i64) -> Result<Self> {
        if scale < 1 || scale % self.ring.scale != 0 {
            return Err(Error::RingMismatch);
        }
        let f = scale / self.ring.scale;
        let ring = ExponentLattice { scale, ..self.ring };
        let terms = self.terms.iter().map(|(e, c)| (e.iter().map(|x| x * f).collect(), c.clone())).collect();
        Ok(Self { ring, terms })
    }

    /// The coarsest scale that keeps every exponent integral.
    pub fn reduce_scale(&self) -> Self {
        let g = self.terms.keys().flatten().fold(self.ring.scale, |g, &x| g.gcd(&x));
        if g <= 1 {
            return self.clone();
        }
        let ring = ExponentLattice { scale: self.ring.scale / g, ..self.ring };
        let terms = self.terms.iter().map(|(e, c)| (e.iter().map(|x| x / g).collect(), c.clone())).collect();
        Self { ring, terms }
    }

    /// Brings both operands to the lcm of their scales.
    pub fn common_scale(&self, other: &Self) -> Result<(Self, Self)> {
        if self.ring.dim != other.ring.dim || self.ring.frame != other.ring.frame {
            return Err(Error::RingMismatch);
        }
        let s = self.ring.scale.lcm(&other.ring.scale);
        Ok((self.with_scale(s)?, other.with_scale(s)?))
    }

    /// True when every exponent lies in `Z^dim`.
    pub fn has_integral_exponents(&self) -> bool {
        self.terms.keys().flatten().all(|x| x % self.ring.scale == 0)
    }

    /// Exponents as rational vectors.
    pub fn exponents(&self) -> impl Iterator<Item = RatVector> + '_ {
        self.terms.keys().map(|e| RatVector::from_scaled(e, self.ring.scale))
    }

    /// Applies `w` to every exponent (α-frame only).
    pub fn act(&self, w: &WeylElement) -> Result<Self> {
        if self.ring.frame != Frame::Alpha || w.rank() != self.ring.dim {
            return Err(Error::RingMismatch);
        }
        let terms = self.terms.iter().map(|(e, c)| (w.apply(e), c.clone())).collect();
        Ok(Self { ring: self.ring, terms })
    }

    /// Fixed by every simple reflection, hence by W.
    pub fn is_invariant(&self, rs: &RootSystem) -> bool {
        match self.ring.frame {
            Frame::Alpha => {
                self.ring.dim == rs.rank()
                    && simple_reflections(rs).iter().all(|s| self.act(s).is_ok_and(|q| q == *self))
            }
            Frame::Ambient => {
                self.ring.dim == rs.ambient_dim
                    && (0..rs.rank()).all(|i| self.reflect_ambient(rs, i).is_some_and(|q| q == *self))
            }
        }
    }

    /// `sᵢ` on ambient exponents; `None` if an image leaves the scaled lattice.
    fn reflect_ambient(&self, rs: &RootSystem, i: usize) -> Option<Self> {
        let a = &rs.simple_roots[i];
        let aa = a.dot(a);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let v = RatVector::from_scaled(e, self.ring.scale);
            let coeff = BigRational::from_integer(BigInt::from(2)) * v.dot(a) / &aa;
            let image = v.sub(&a.scale(&coeff));
            terms.insert(image.scaled_to(self.ring.scale)?, c.clone());
        }
        Some(Self { ring: self.ring, terms })
    }
}

/// `ô(v) = Σ x^{w(v)}` over the orbit of `v` (α-coordinates), in the α-frame.
pub fn orbit_sum(rs: &RootSystem, v: &RatVector, cap: usize) -> Result<LaurentPoly> {
    let o = orbit(rs, v, cap)?;
    let ring = ExponentLattice::new(rs.rank(), o.scale, Frame::Alpha);
    let mut p = LaurentPoly::zero(ring);
    for e in o.alpha_scaled {
        p.terms.insert(e, BigInt::one());
    }
    Ok(p)
}

/// The same orbit sum written in ambient coordinates.
pub fn orbit_sum_ambient(rs: &RootSystem, v: &RatVector, cap: usize) -> Result<LaurentPoly> {
    let o = orbit(rs, v, cap)?;
    let scale = o.ambient.iter().fold(1i64, |s, x| s.lcm(&x.denominator_i64()));
    let ring = ExponentLattice::new(rs.ambient_dim, scale, Frame::Ambient);
    let mut p = LaurentPoly::zero(ring);
    for e in &o.ambient {
        p.terms.insert(e.scaled_to(scale).expect("scale divides"), BigInt::one());
    }
    Ok(p)
}

/// Checks `ô(ϖᵢ)·x^{(i/n, …, i/n)} = eᵢ(x₁, …, xₙ)` for the root system `A_{n−1}`.
pub fn elementary_symmetric_identity_check(n: usize, i: usize, cap: usize) -> Result<bool> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::InvalidRank { family: 'A', rank: n.saturating_sub(1) });
    }
    let rs = RootSystem::build(crate::roots::RootSystemType::a(n - 1))?;
    let osum = orbit_sum_ambient(&rs, &rs.fundamental_weights_alpha[i - 1], cap)?.with_scale(n as i64)?;
    let ring = osum.ring();
    let shift = LaurentPoly::monomial(ring, vec![i as i64; n], 1)?;
    let lhs = osum.mul(&shift)?;

    let mut rhs = LaurentPoly::zero(ring);
    for mask in 0u64..(1 << n) {
        if mask.count_ones() as usize == i {
            let e = (0..n).map(|j| if mask >> j & 1 == 1 { n as i64 } else { 0 }).collect();
            rhs.add_term(e, BigInt::one());
        }
    }
    Ok(lhs == rhs)
}

fn fmt_exponent(num: i64, scale: i64) -> String {
    let g = num.gcd(&scale);
    let (p, q) = (num / g, scale / g);
    if q == 1 {
        p.to_string()
    } else {
        format!("({p}/{q})")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let var = match self.ring.frame {
            Frame::Alpha => "y",
            Frame::Ambient => "x",
        };
        // Highest exponents first.
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let is_const = e.iter().all(|&x| x == 0);
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || is_const {
                factors.push(mag.to_string());
            }
            for (j, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if x == self.ring.scale {
                    factors.push(format!("{var}{}", j + 1));
                } else {
                    factors.push(format!("{var}{}^{}", j + 1, fmt_exponent(x, self.ring.scale)));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootSystemType;
    use crate::weyl::DEFAULT_ORBIT_CAP;

    fn a2() -> RootSystem {
        RootSystem::build(RootSystemType::a(2)).unwrap()
    }

    fn poly(ring: ExponentLattice, terms: &[(&[i64], i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(ring);
        for (e, c) in terms {
            p.add_term(e.to_vec(), BigInt::from(*c));
        }
        p
    }

    #[test]
    fn arithmetic() {
        let r = ExponentLattice::alpha(1);
        let p = poly(r, &[(&[1], 1), (&[-1], 1)]);
        assert_eq!(p.mul(&p).unwrap(), poly(r, &[(&[2], 1), (&[0], 2), (&[-2], 1)]));
        assert_eq!(p.mul(&LaurentPoly::one(r)).unwrap(), p);
        assert!(p.sub(&p).unwrap().is_zero());
        assert_eq!(p.pow(3).unwrap(), p.mul(&p).unwrap().mul(&p).unwrap());
        let other = LaurentPoly::one(ExponentLattice::alpha(2));
        assert_eq!(p.mul(&other), Err(Error::RingMismatch));
    }

    #[test]
    fn a2_orbit_sums() {
        let rs = a2();
        let o = orbit_sum(&rs, &RatVector::from_ints(&[1, 0]), DEFAULT_ORBIT_CAP).unwrap();
        let r = o.ring();
        let expected = poly(r, &[(&[1, 0], 1), (&[-1, 0], 1), (&[0, 1], 1), (&[0, -1], 1), (&[1, 1], 1), (&[-1, -1], 1)]);
        assert_eq!(o, expected);
        assert_eq!(o.mul(&o).unwrap().constant_term(), BigInt::from(6));

        let o2 = orbit_sum(&rs, &RatVector::from_ints(&[2, 1]), DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(o2, poly(r, &[(&[2, 1], 1), (&[-1, 1], 1), (&[-1, -2], 1)]));

        let zero = orbit_sum(&rs, &RatVector::zero(2), DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(zero, LaurentPoly::one(r));
    }

    #[test]
    fn action() {
        let rs = a2();
        let s = simple_reflections(&rs);
        let r = ExponentLattice::alpha(2);
        let x1 = LaurentPoly::monomial(r, vec![1, 0], 1).unwrap();
        let x2 = LaurentPoly::monomial(r, vec![0, 1], 1).unwrap();
        assert_eq!(x1.act(&s[0]).unwrap(), LaurentPoly::monomial(r, vec![-1, 0], 1).unwrap());
        assert_eq!(x2.act(&s[0]).unwrap(), LaurentPoly::monomial(r, vec![1, 1], 1).unwrap());
        assert!(!x1.is_invariant(&rs));
    }

    #[test]
    fn invariance() {
        let e6 = RootSystem::build(RootSystemType::e(6)).unwrap();
        let o = orbit_sum(&e6, &e6.fundamental_weights_alpha[1], DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(o.len(), 72);
        assert!(o.is_invariant(&e6));

        let b3 = RootSystem::build(RootSystemType::b(3)).unwrap();
        let sigma1 = orbit_sum_ambient(&b3, &b3.fundamental_weights_alpha[0], DEFAULT_ORBIT_CAP).unwrap();
        let r = ExponentLattice::new(3, 1, Frame::Ambient);
        let expected =
            poly(r, &[(&[1, 0, 0], 1), (&[-1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, -1, 0], 1), (&[0, 0, 1], 1), (&[0, 0, -1], 1)]);
        assert_eq!(sigma1, expected);
        assert!(sigma1.is_invariant(&b3));
        assert!(!LaurentPoly::monomial(r, vec![1, 0, 0], 1).unwrap().is_invariant(&b3));
    }

    #[test]
    fn b_spin_square_is_elementary_symmetric() {
        // ô(ϖₙ)² = Σₖ 2^{n−k} σₖ with σₖ the elementary symmetric functions in φⱼ = xⱼ + xⱼ⁻¹.
        for n in 2..=4usize {
            let rs = RootSystem::build(RootSystemType::b(n)).unwrap();
            let spin = orbit_sum_ambient(&rs, &rs.fundamental_weights_alpha[n - 1], DEFAULT_ORBIT_CAP).unwrap();
            let lhs = spin.mul(&spin).unwrap().reduce_scale();
            let r = ExponentLattice::new(n, 1, Frame::Ambient);
            let phi: Vec<LaurentPoly> = (0..n)
                .map(|j| {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    let mut f = vec![0; n];
                    f[j] = -1;
                    poly(r, &[(&e, 1), (&f, 1)])
                })
                .collect();
            let mut rhs = LaurentPoly::zero(r);
            for mask in 0u32..(1 << n) {
                let k = mask.count_ones() as usize;
                let mut term = LaurentPoly::constant(r, BigInt::from(1u64 << (n - k)));
                for (j, p) in phi.iter().enumerate() {
                    if mask >> j & 1 == 1 {
                        term = term.mul(p).unwrap();
                    }
                }
                rhs = rhs.add(&term).unwrap();
            }
            assert_eq!(lhs, rhs, "B{n}");
        }
    }

    #[test]
    fn elementary_symmetric_identity() {
        for n in 2..=6 {
            for i in 1..n {
                assert!(elementary_symmetric_identity_check(n, i, DEFAULT_ORBIT_CAP).unwrap(), "n={n} i={i}");
            }
        }
        assert!(elementary_symmetric_identity_check(3, 3, DEFAULT_ORBIT_CAP).is_err());
    }

    #[test]
    fn scales() {
        let r = ExponentLattice::new(1, 2, Frame::Alpha);
        let p = poly(r, &[(&[2], 1), (&[-4], 3)]);
        let q = p.reduce_scale();
        assert_eq!(q.ring().scale, 1);
        assert_eq!(q.with_scale(2).unwrap(), p);
        assert!(p.has_integral_exponents());
        assert_eq!(poly(r, &[(&[1], 1), (&[-1], 1)]).to_string(), "y1^(1/2) + y1^(-1/2)");
        assert_eq!(poly(ExponentLattice::alpha(2), &[(&[0, 0], -3), (&[1, -1], 2)]).to_string(), "2*y1*y2^-1 - 3");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_poly() -> impl Strategy<Value = LaurentPoly> {
            prop::collection::vec((prop::collection::vec(-2i64..3, 2), -3i64..4), 0..5).prop_map(|ts| {
                let mut p = LaurentPoly::zero(ExponentLattice::alpha(2));
                for (e, c) in ts {
                    p.add_term(e, BigInt::from(c));
                }
                p
            })
        }

        proptest! {
            #[test]
            fn ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
                prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
                prop_assert_eq!(p.mul(&q).unwrap().mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
                prop_assert_eq!(p.mul(&q.add(&r).unwrap()).unwrap(), p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap());
                prop_assert!(p.terms().values().all(|c| !c.is_zero()));
            }

            #[test]
            fn action_is_a_homomorphism(p in small_poly(), q in small_poly(), i in 0usize..2) {
                let s = simple_reflections(&a2())[i];
                prop_assert_eq!(p.mul(&q).unwrap().act(&s).unwrap(), p.act(&s).unwrap().mul(&q.act(&s).unwrap()).unwrap());
            }
        }
    }
}
