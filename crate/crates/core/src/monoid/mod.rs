//! Affine monoids `Z₊ⁿ ∩ L′` for finite-index sublattices `L′ ⊆ Zⁿ` given by congruences.

mod io;
mod kernel;

use std::cmp::Reverse;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cokernel_invariant_factors, hermite_normal_form, integer_kernel, small_vec, IntMatrix};
use crate::roots::RootSystem;

pub use io::{parse_instance, MonoidInstance};
pub use kernel::{hilbert_basis_kernel, DEFAULT_FRONTIER_CAP};

/// The condition `coeffs · l ≡ 0 (mod modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Congruence {
    pub coeffs: Vec<i64>,
    pub modulus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceMonoid {
    n: usize,
    congruences: Vec<Congruence>,
}

impl CongruenceMonoid {
    pub fn new(n: usize, congruences: Vec<(Vec<i64>, i64)>) -> Result<Self> {
        let mut out = Vec::with_capacity(congruences.len());
        for (coeffs, modulus) in congruences {
            if coeffs.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: coeffs.len() });
            }
            if modulus < 1 {
                return Err(Error::InvalidMonoid(format!("modulus {modulus} must be positive")));
            }
            if modulus == 1 {
                continue;
            }
            let coeffs = coeffs.iter().map(|a| a.rem_euclid(modulus)).collect();
            out.push(Congruence { coeffs, modulus });
        }
        Ok(Self { n, congruences: out })
    }

    /// `Z₊ⁿ` itself.
    pub fn free(n: usize) -> Self {
        Self { n, congruences: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    /// Membership of `v` in `L′`, ignoring signs.
    pub fn in_lattice(&self, v: &[i64]) -> bool {
        self.congruences.iter().all(|c| {
            let s: i64 = c.coeffs.iter().zip(v).map(|(a, x)| a * x.rem_euclid(c.modulus)).sum();
            s.rem_euclid(c.modulus) == 0
        })
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: v.len() });
        }
        Ok(v.iter().all(|&x| x >= 0) && self.in_lattice(v))
    }

    /// Orders zᵢ of the unit vectors εᵢ modulo `L′`.
    pub fn unit_orders(&self) -> Vec<i64> {
        (0..self.n)
            .map(|i| {
                self.congruences
                    .iter()
                    .fold(1i64, |acc, c| acc.lcm(&(c.modulus / c.coeffs[i].gcd(&c.modulus))))
            })
            .collect()
    }

    /// A basis of `L′` (rows, Hermite normal form).
    pub fn lattice_basis(&self) -> IntMatrix {
        let k = self.congruences.len();
        if k == 0 {
            return IntMatrix::identity(self.n);
        }
        // L′ is the projection of ker [A | diag(m)] onto the first n coordinates.
        let mut big = IntMatrix::zeros(k, self.n + k);
        for (r, c) in self.congruences.iter().enumerate() {
            for (j, &a) in c.coeffs.iter().enumerate() {
                big.set(r, j, BigInt::from(a));
            }
            big.set(r, self.n + r, BigInt::from(c.modulus));
        }
        let kernel = integer_kernel(&big);
        let mut proj = IntMatrix::zeros(kernel.len(), self.n);
        for (r, v) in kernel.iter().enumerate() {
            for j in 0..self.n {
                proj.set(r, j, v[j].clone());
            }
        }
        hermite_normal_form(&proj)
    }

    /// `[Zⁿ : L′]`.
    pub fn index(&self) -> u64 {
        let b = self.lattice_basis();
        b.determinant().expect("square basis").abs().to_u64().expect("small index")
    }

    pub fn same_lattice(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        let rows = |m: &Self| {
            let b = m.lattice_basis();
            (0..b.rows()).map(|i| small_vec(b.row(i))).collect::<Vec<_>>()
        };
        rows(other).iter().all(|v| self.in_lattice(v)) && rows(self).iter().all(|v| other.in_lattice(v))
    }

    /// Members of the half-open box `0 ≤ vᵢ < zᵢ`, in canonical order.
    pub fn box_members(&self) -> Vec<Vec<i64>> {
        let z = self.unit_orders();
        let mut out = Vec::new();
        let mut v = vec![0i64; self.n];
        loop {
            if self.in_lattice(&v) {
                out.push(v.clone());
            }
            let mut i = 0;
            loop {
                if i == self.n {
                    sort_canonical(&mut out);
                    return out;
                }
                v[i] += 1;
                if v[i] < z[i] {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
        }
    }

    /// Hilbert basis from the box: the indecomposable box members plus the zᵢεᵢ.
    pub fn hilbert_basis_box(&self) -> HilbertBasis {
        let mut found: Vec<Vec<i64>> = Vec::new();
        let mut members = self.box_members();
        members.sort_by_key(|v| v.iter().sum::<i64>());
        for v in members.into_iter().filter(|v| v.iter().any(|&x| x != 0)) {
            // Any nonzero u ≤ v in M leaves v − u in M, and such u dominates a basis element.
            if !found.iter().any(|h| dominated(h, &v)) {
                found.push(v);
            }
        }
        for (i, z) in self.unit_orders().into_iter().enumerate() {
            let mut m = vec![0; self.n];
            m[i] = z;
            found.push(m);
        }
        HilbertBasis::new(found)
    }

    /// Cells `K° ∩ L′` of the Hironaka decomposition over `Z[z₁ε₁, …, zₙεₙ]`.
    pub fn hironaka_cells(&self) -> Vec<Vec<i64>> {
        self.box_members()
    }

    /// The cell whose translate contains `v`.
    pub fn cell_of(&self, v: &[i64]) -> Vec<i64> {
        v.iter().zip(self.unit_orders()).map(|(x, z)| x.rem_euclid(z)).collect()
    }

    /// Coordinates on which no congruence imposes a condition, and the monoid on the rest.
    pub fn split_free_part(&self) -> FreeSplit {
        let (free, constrained): (Vec<usize>, Vec<usize>) =
            (0..self.n).partition(|&i| self.congruences.iter().all(|c| c.coeffs[i] == 0));
        let congruences = self
            .congruences
            .iter()
            .map(|c| Congruence { coeffs: constrained.iter().map(|&i| c.coeffs[i]).collect(), modulus: c.modulus })
            .collect();
        FreeSplit {
            free,
            residual: CongruenceMonoid { n: constrained.len(), congruences },
            residual_indices: constrained,
        }
    }

    /// Divisor class group of the normal monoid algebra `Z[M]`.
    ///
    /// The facet valuations of `M` are `l ↦ lᵢ/gᵢ`, where `gᵢ` generates the i-th
    /// coordinate projection of `L′`; `Cl = Zⁿ / {(lᵢ/gᵢ)ᵢ : l ∈ L′}`.
    pub fn toric_class_group(&self) -> Vec<u64> {
        let b = self.lattice_basis();
        let g: Vec<BigInt> = (0..self.n)
            .map(|j| b.column(j).iter().fold(BigInt::from(0), |acc, x| acc.gcd(x)))
            .collect();
        let mut scaled = IntMatrix::zeros(self.n, b.rows());
        for r in 0..b.rows() {
            for j in 0..self.n {
                scaled.set(j, r, b.get(r, j) / &g[j]);
            }
        }
        cokernel_invariant_factors(&scaled)
            .expect("finite-index lattice")
            .iter()
            .map(|x| x.to_u64().expect("small factor"))
            .collect()
    }

    /// Decomposes `v` as a sum of basis elements, if possible.
    pub fn decompose(basis: &HilbertBasis, v: &[i64]) -> Option<Vec<usize>> {
        let mut failed = FxHashSet::default();
        let mut out = Vec::new();
        decompose_rec(&basis.elements, v.to_vec(), &mut failed, &mut out).then_some(out)
    }

    /// Every monoid element with all coordinates ≤ `bound`.
    pub fn elements_up_to(&self, bound: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut v = vec![0i64; self.n];
        loop {
            if self.in_lattice(&v) {
                out.push(v.clone());
            }
            let mut i = 0;
            loop {
                if i == self.n {
                    return out;
                }
                v[i] += 1;
                if v[i] <= bound {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
        }
    }
}

fn decompose_rec(basis: &[Vec<i64>], v: Vec<i64>, failed: &mut FxHashSet<Vec<i64>>, out: &mut Vec<usize>) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    if failed.contains(&v) {
        return false;
    }
    for (k, h) in basis.iter().enumerate() {
        if h.iter().zip(&v).all(|(a, b)| a <= b) {
            let rest: Vec<i64> = v.iter().zip(h).map(|(a, b)| a - b).collect();
            out.push(k);
            if decompose_rec(basis, rest, failed, out) {
                return true;
            }
            out.pop();
        }
    }
    failed.insert(v);
    false
}

impl fmt::Display for CongruenceMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for c in &self.congruences {
            let coeffs: Vec<String> = c.coeffs.iter().map(i64::to_string).collect();
            writeln!(f, "{} mod {}", coeffs.join(" "), c.modulus)?;
        }
        Ok(())
    }
}

/// Result of splitting off unconstrained coordinates (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeSplit {
    pub free: Vec<usize>,
    pub residual: CongruenceMonoid,
    pub residual_indices: Vec<usize>,
}

/// `u ≤ v` componentwise and `u ≠ v`.
fn dominated(u: &[i64], v: &[i64]) -> bool {
    u != v && u.iter().zip(v).all(|(a, b)| a <= b)
}

/// Degree ascending, then lexicographically descending.
pub fn sort_canonical(v: &mut [Vec<i64>]) {
    v.sort_by(|a, b| {
        let key = |x: &Vec<i64>| x.iter().sum::<i64>();
        key(a).cmp(&key(b)).then_with(|| Reverse(a).cmp(&Reverse(b)))
    });
}

/// Minimal generating set of an affine monoid, canonically ordered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertBasis {
    pub elements: Vec<Vec<i64>>,
}

impl HilbertBasis {
    pub fn new(mut elements: Vec<Vec<i64>>) -> Self {
        sort_canonical(&mut elements);
        elements.dedup();
        Self { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements.first().map_or(0, Vec::len)
    }

    pub fn position(&self, v: &[i64]) -> Option<usize> {
        self.elements.iter().position(|e| e == v)
    }

    /// True when the basis consists of multiples of unit vectors only.
    pub fn is_diagonal(&self) -> bool {
        self.elements.iter().all(|e| e.iter().filter(|&&x| x != 0).count() == 1)
    }

    /// Drops the trailing coordinate from every element.
    pub fn drop_last_coordinate(&self) -> Self {
        Self::new(self.elements.iter().map(|e| e[..e.len() - 1].to_vec()).collect())
    }
}

/// `L ∩ Λ₊` in ϖ-coordinates: `l ∈ Z₊ⁿ` with `Σ lᵢϖᵢ` in the root lattice.
pub fn weight_monoid(rs: &RootSystem) -> CongruenceMonoid {
    let n = rs.rank();
    let w = &rs.fundamental_weights_alpha;
    let mut congruences = Vec::new();
    for k in 0..n {
        let m = w.iter().fold(1i64, |acc, v| acc.lcm(&v.denominator_i64()));
        let coeffs: Vec<i64> = w
            .iter()
            .map(|v| (&v.numerators()[k] * BigInt::from(m / v.denominator_i64())).to_i64().expect("small"))
            .collect();
        congruences.push((coeffs, m));
    }
    let mut out = CongruenceMonoid::new(n, congruences).expect("well-formed");
    out.congruences.retain(|c| c.coeffs.iter().any(|&a| a != 0));
    out.congruences.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootSystemType;

    pub(crate) fn a_monoid(n: i64) -> CongruenceMonoid {
        CongruenceMonoid::new(n as usize - 1, vec![((1..n).collect(), n)]).unwrap()
    }

    #[test]
    fn membership() {
        let m = a_monoid(3);
        assert!(m.contains(&[1, 1]).unwrap());
        assert!(!m.contains(&[1, 0]).unwrap());
        assert!(m.contains(&[0, 0]).unwrap());
        assert!(!m.contains(&[-1, 2]).unwrap());
        assert_eq!(m.contains(&[1]), Err(Error::DimensionMismatch { expected: 2, got: 1 }));
    }

    #[test]
    fn box_hilbert_bases() {
        assert_eq!(a_monoid(3).hilbert_basis_box().elements, vec![vec![1, 1], vec![3, 0], vec![0, 3]]);
        let a3 = a_monoid(4).hilbert_basis_box();
        let mut expected = vec![vec![4, 0, 0], vec![0, 2, 0], vec![0, 0, 4], vec![2, 1, 0], vec![1, 0, 1], vec![0, 1, 2]];
        sort_canonical(&mut expected);
        assert_eq!(a3.elements, expected);

        let parity = CongruenceMonoid::new(3, vec![(vec![1, 1, 1], 2)]).unwrap();
        let mut expected = vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2], vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]];
        sort_canonical(&mut expected);
        assert_eq!(parity.hilbert_basis_box().elements, expected);
        assert_eq!(CongruenceMonoid::free(3).hilbert_basis_box().len(), 3);
    }

    #[test]
    fn cells() {
        assert_eq!(a_monoid(3).hironaka_cells(), vec![vec![0, 0], vec![1, 1], vec![2, 2]]);
        let parity = CongruenceMonoid::new(2, vec![(vec![1, 1], 2)]).unwrap();
        assert_eq!(parity.hironaka_cells(), vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(CongruenceMonoid::free(4).hironaka_cells(), vec![vec![0; 4]]);
    }

    #[test]
    fn cell_count_formula() {
        for n in 2..=8 {
            let m = a_monoid(n);
            let prod: i64 = m.unit_orders().iter().product();
            assert_eq!(m.hironaka_cells().len() as i64, prod / m.index() as i64);
            assert_eq!(m.index(), n as u64);
        }
    }

    #[test]
    fn splitting() {
        let c6 = CongruenceMonoid::new(6, vec![((1..=6).collect(), 2)]).unwrap();
        let s = c6.split_free_part();
        assert_eq!(s.free, vec![1, 3, 5]);
        assert_eq!(s.residual, CongruenceMonoid::new(3, vec![(vec![1, 1, 1], 2)]).unwrap());
        let e6 = CongruenceMonoid::new(6, vec![(vec![1, 0, 2, 0, 1, 2], 3)]).unwrap();
        assert_eq!(e6.split_free_part().free, vec![1, 3]);
        assert_eq!(CongruenceMonoid::free(3).split_free_part().free, vec![0, 1, 2]);
    }

    #[test]
    fn toric_class_groups() {
        assert_eq!(a_monoid(4).toric_class_group(), vec![4]);
        assert_eq!(a_monoid(2).toric_class_group(), Vec::<u64>::new());
        let c5 = CongruenceMonoid::new(5, vec![((1..=5).collect(), 2)]).unwrap();
        assert_eq!(c5.toric_class_group(), vec![2]);
        let e6 = CongruenceMonoid::new(6, vec![(vec![1, 0, 2, 0, 1, 2], 3)]).unwrap();
        assert_eq!(e6.toric_class_group(), vec![3]);
        let b = CongruenceMonoid::new(3, vec![(vec![0, 0, 1], 2)]).unwrap();
        assert_eq!(b.toric_class_group(), Vec::<u64>::new());
    }

    #[test]
    fn weight_monoids_match_closed_forms() {
        for n in 2..=8i64 {
            let rs = RootSystem::build(RootSystemType::a(n as usize - 1)).unwrap();
            assert!(weight_monoid(&rs).same_lattice(&a_monoid(n)), "A{}", n - 1);
        }
        let e6 = RootSystem::build(RootSystemType::e(6)).unwrap();
        let expected = CongruenceMonoid::new(6, vec![(vec![1, 0, 2, 0, 1, 2], 3)]).unwrap();
        assert!(weight_monoid(&e6).same_lattice(&expected));
        assert!(!weight_monoid(&e6).same_lattice(&CongruenceMonoid::free(6)));
        let e8 = RootSystem::build(RootSystemType::e(8)).unwrap();
        assert!(weight_monoid(&e8).congruences().is_empty());
    }

    #[test]
    fn decomposition() {
        let m = a_monoid(3);
        let b = m.hilbert_basis_box();
        let parts = CongruenceMonoid::decompose(&b, &[4, 1]).unwrap();
        let mut sum = vec![0, 0];
        for k in parts {
            sum[0] += b.elements[k][0];
            sum[1] += b.elements[k][1];
        }
        assert_eq!(sum, vec![4, 1]);
        assert!(CongruenceMonoid::decompose(&b, &[1, 0]).is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn monoid() -> impl Strategy<Value = CongruenceMonoid> {
            (1usize..4, 2i64..6).prop_flat_map(|(n, m)| {
                prop::collection::vec(0i64..6, n)
                    .prop_map(move |a| CongruenceMonoid::new(n, vec![(a, m)]).unwrap())
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn basis_is_indecomposable_and_generating(m in monoid()) {
                let b = m.hilbert_basis_box();
                for h in &b.elements {
                    prop_assert!(m.contains(h).unwrap());
                    // No nonzero proper member lies below h.
                    for u in m.elements_up_to(*h.iter().max().unwrap()) {
                        if u.iter().any(|&x| x != 0) && dominated(&u, h) {
                            prop_assert!(false, "{:?} decomposes via {:?}", h, u);
                        }
                    }
                }
                for v in m.elements_up_to(6) {
                    prop_assert!(CongruenceMonoid::decompose(&b, &v).is_some());
                }
            }

            #[test]
            fn cells_partition(m in monoid()) {
                let cells = m.hironaka_cells();
                let z = m.unit_orders();
                for v in m.elements_up_to(6) {
                    let hits = cells.iter().filter(|c| {
                        c.iter().zip(&v).zip(&z).all(|((a, b), z)| a <= b && (b - a) % z == 0)
                    }).count();
                    prop_assert_eq!(hits, 1);
                }
                let prod: i64 = z.iter().product();
                prop_assert_eq!(cells.len() as i64 * m.index() as i64, prod);
            }

            #[test]
            fn box_matches_kernel(m in monoid()) {
                let c = &m.congruences().first().cloned();
                if let Some(c) = c {
                    let mut row = c.coeffs.clone();
                    row.push(-c.modulus);
                    let a = IntMatrix::from_rows(&[row]).unwrap();
                    let k = hilbert_basis_kernel(&a, DEFAULT_FRONTIER_CAP).unwrap().drop_last_coordinate();
                    prop_assert_eq!(k, m.hilbert_basis_box());
                }
            }
        }
    }
}
