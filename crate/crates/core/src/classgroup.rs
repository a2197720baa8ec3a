//! Divisor class groups of `Z[L]^W`.
//!
//! With `D` the subgroup generated by the diagonalizable reflections: `Cl ≅ Λ/L` when
//! `D = 1`, and `Cl = 0` when `D ≠ 1` (W irreducible). The toric class group of the
//! weight monoid is an independent route to the same answer.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::monoid::weight_monoid;
use crate::roots::{Family, RootSystem, RootSystemType};
use crate::weyl::{diagonalizable_reflection_subgroup, is_diagonalizable_reflection, simple_reflections};

/// `Z/d₁ × Z/d₂ × ⋯` with `d₁ | d₂ | ⋯` and every `dᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroupStructure {
    pub invariant_factors: Vec<u64>,
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        Self { invariant_factors: Vec::new() }
    }

    /// Drops unit factors; the rest must already form a divisibility chain.
    pub fn new(factors: impl IntoIterator<Item = u64>) -> Self {
        let invariant_factors: Vec<u64> = factors.into_iter().filter(|&d| d != 1).collect();
        debug_assert!(invariant_factors.windows(2).all(|w| w[1] % w[0] == 0));
        Self { invariant_factors }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" × "))
    }
}

/// How `D` was determined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReflectionScan {
    /// All of W was enumerated and tested.
    Exhaustive,
    /// Only root reflections were tested (|W| beyond the cap).
    RootReflections,
    /// The sign change `dₙ` of type B was tested directly.
    SignChange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassGroup {
    pub root_system: String,
    pub group: AbelianGroupStructure,
    /// `Λ/L`.
    pub weight_quotient: AbelianGroupStructure,
    /// `D ≠ 1`.
    pub has_diagonalizable_reflections: bool,
    /// `log₂ |D|`, when `D` was computed in full.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reflection_rank: Option<usize>,
    pub scan: ReflectionScan,
}

pub fn class_group(ty: RootSystemType, group_cap: usize) -> Result<ClassGroup> {
    let rs = RootSystem::build(ty)?;
    let weight_quotient = AbelianGroupStructure::new(rs.weight_lattice_quotient());
    let within_cap = ty.weyl_group_order() <= group_cap as u128;
    let (nontrivial, reflection_rank, scan) = if ty.family == Family::B && !within_cap {
        let s = simple_reflections(&rs);
        if is_diagonalizable_reflection(&s[ty.rank - 1]) {
            (true, None, ReflectionScan::SignChange)
        } else {
            let d = diagonalizable_reflection_subgroup(&rs, group_cap)?;
            (!d.is_trivial(), Some(d.rank), ReflectionScan::RootReflections)
        }
    } else {
        let d = diagonalizable_reflection_subgroup(&rs, group_cap)?;
        let scan = if within_cap { ReflectionScan::Exhaustive } else { ReflectionScan::RootReflections };
        (!d.is_trivial(), Some(d.rank), scan)
    };
    let group = if nontrivial { AbelianGroupStructure::trivial() } else { weight_quotient.clone() };
    Ok(ClassGroup {
        root_system: ty.to_string(),
        group,
        weight_quotient,
        has_diagonalizable_reflections: nontrivial,
        reflection_rank,
        scan,
    })
}

/// Class group of the monoid algebra of `L ∩ Λ₊`, from its facets.
pub fn toric_class_group(ty: RootSystemType) -> Result<AbelianGroupStructure> {
    let rs = RootSystem::build(ty)?;
    Ok(AbelianGroupStructure::new(weight_monoid(&rs).toric_class_group()))
}

/// Whether the reflection-based and toric computations agree.
pub fn class_group_cross_check(ty: RootSystemType, group_cap: usize) -> Result<bool> {
    Ok(class_group(ty, group_cap)?.group == toric_class_group(ty)?)
}
