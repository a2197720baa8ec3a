//! Replays the reference computations and reports one line per check.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::classgroup::{class_group, toric_class_group};
use crate::error::Result;
use crate::invariants::{c_generator_count, d_generator_count, report, veronese_structure};
use crate::laurent::{orbit_sum, LaurentPoly};
use crate::linalg::{IntMatrix, RatVector};
use crate::monoid::{hilbert_basis_kernel, weight_monoid, CongruenceMonoid, HilbertBasis, DEFAULT_FRONTIER_CAP};
use crate::relations::{fixture, relations_bounded, relations_equivalent, verify_relation, DEFAULT_FIBER_CAP};
use crate::roots::{Family, RootSystem, RootSystemType};
use crate::weyl::{enumerate_group, simple_reflections};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug)]
pub struct SelfcheckOptions {
    /// Enumerate `W(E7)` and scan it exhaustively; otherwise E7 uses root reflections.
    pub with_e7: bool,
    pub orbit_cap: usize,
    pub group_cap: usize,
}

impl Default for SelfcheckOptions {
    fn default() -> Self {
        Self { with_e7: false, orbit_cap: crate::weyl::DEFAULT_ORBIT_CAP, group_cap: crate::weyl::DEFAULT_GROUP_CAP }
    }
}

fn check(criterion: u8, name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Check { criterion, name: name.to_string(), passed, detail }
}

fn set(v: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    v.iter().cloned().collect()
}

fn a_monoid(n: i64) -> CongruenceMonoid {
    CongruenceMonoid::new(n as usize - 1, vec![((1..n).collect(), n)]).expect("well-formed")
}

/// Hilbert basis of `ker [1, 2, …, n−1, −n]` with the last coordinate dropped.
pub fn a_kernel_basis(n: i64) -> Result<HilbertBasis> {
    let mut row: Vec<i64> = (1..n).collect();
    row.push(-n);
    Ok(hilbert_basis_kernel(&IntMatrix::from_rows(&[row])?, DEFAULT_FRONTIER_CAP)?.drop_last_coordinate())
}

pub fn kernel_fixtures() -> Result<(bool, String)> {
    let cases: [(&[i64], Vec<Vec<i64>>); 3] = [
        (&[1, 2, -3], vec![vec![1, 1, 1], vec![3, 0, 1], vec![0, 3, 2]]),
        (
            &[1, 2, 3, -4],
            vec![vec![4, 0, 0, 1], vec![0, 2, 0, 1], vec![0, 0, 4, 3], vec![2, 1, 0, 1], vec![1, 0, 1, 1], vec![0, 1, 2, 2]],
        ),
        (
            &[1, 2, 1, 2, -3],
            vec![
                vec![3, 0, 0, 0, 1],
                vec![0, 3, 0, 0, 2],
                vec![0, 0, 3, 0, 1],
                vec![0, 0, 0, 3, 2],
                vec![1, 1, 0, 0, 1],
                vec![1, 0, 0, 1, 1],
                vec![0, 1, 1, 0, 1],
                vec![0, 0, 1, 1, 1],
                vec![1, 0, 2, 0, 1],
                vec![0, 1, 0, 2, 2],
                vec![0, 2, 0, 1, 2],
                vec![2, 0, 1, 0, 1],
            ],
        ),
    ];
    let mut ok = true;
    let mut sizes = Vec::new();
    for (row, expected) in cases {
        let got = hilbert_basis_kernel(&IntMatrix::from_rows(&[row])?, DEFAULT_FRONTIER_CAP)?;
        ok &= set(&got.elements) == set(&expected);
        sizes.push(got.len().to_string());
    }
    Ok((ok, format!("sizes {}", sizes.join(", "))))
}

pub fn box_kernel_agreement(max_n: i64) -> Result<(bool, String)> {
    let mut sizes = Vec::new();
    for n in 3..=max_n {
        let by_box = a_monoid(n).hilbert_basis_box();
        let by_kernel = a_kernel_basis(n)?;
        if by_box != by_kernel {
            return Ok((false, format!("n = {n} differs")));
        }
        sizes.push(by_box.len().to_string());
    }
    Ok((true, format!("sizes {}", sizes.join(", "))))
}

/// `μ³ = π₁π₂`, `μ − 3 = ô(α₁)`, `π₁ − 3μ + 3 = ô(2α₁+α₂)`, `π₂ − 3μ + 3 = ô(α₁+2α₂)`.
pub fn a2_identities(cap: usize) -> Result<(bool, String)> {
    let rs = RootSystem::build(RootSystemType::a(2))?;
    let om = |m: &[i64]| crate::invariants::omega_polynomial(&rs, m, cap);
    let (mu, p1, p2) = (om(&[1, 1])?, om(&[3, 0])?, om(&[0, 3])?);
    let root_sum = |v: &[i64]| orbit_sum(&rs, &RatVector::from_ints(v), cap).map(|p| p.reduce_scale());
    let lhs = |p: &LaurentPoly| -> Result<LaurentPoly> { Ok(p.sub(&mu.scale_by(&3.into()))?.add_constant(3)) };
    let checks = [
        mu.pow(3)? == p1.mul(&p2)?,
        mu.add_constant(-3) == root_sum(&[1, 0])?,
        lhs(&p1)? == root_sum(&[2, 1])?,
        lhs(&p2)? == root_sum(&[1, 2])?,
    ];
    Ok((checks.iter().all(|&c| c), format!("{checks:?}")))
}

pub fn relation_fixture(name: &str, basis: &HilbertBasis, bound: u32) -> Result<(bool, String)> {
    let paper = fixture(name).expect("bundled").reindex(basis)?;
    let all_valid = paper.iter().all(|b| verify_relation(basis, b).unwrap_or(false));
    let ours = relations_bounded(basis, bound, DEFAULT_FIBER_CAP)?;
    let eq = relations_equivalent(&ours, &paper, basis, bound, DEFAULT_FIBER_CAP)?;
    Ok((all_valid && eq, format!("{} reference, {} regenerated, equivalent {eq}", paper.len(), ours.len())))
}

/// The E6 monoid restricted to the coordinates that carry its congruence.
pub fn e6_residual_basis() -> Result<HilbertBasis> {
    let rs = RootSystem::build(RootSystemType::e(6))?;
    Ok(weight_monoid(&rs).split_free_part().residual.hilbert_basis_box())
}

pub fn generator_counts() -> Result<(bool, String)> {
    for n in 2..=12 {
        let r = report(RootSystemType::c(n))?;
        if r.generator_count != c_generator_count(n) || r.closed_form_generators_agree != Some(true) {
            return Ok((false, format!("C{n}: {} generators", r.generator_count)));
        }
    }
    for n in 4..=12 {
        let r = report(RootSystemType::d(n))?;
        if r.generator_count != d_generator_count(n) || r.closed_form_generators_agree != Some(true) {
            return Ok((false, format!("D{n}: {} generators", r.generator_count)));
        }
    }
    Ok((true, "C2..C12, D4..D12".into()))
}

pub fn e7_structure() -> Result<(bool, String)> {
    let r = report(RootSystemType::e(7))?;
    let split = r.monoid.split_free_part();
    let residual = split.residual.hilbert_basis_box();
    let veronese = veronese_structure(3)?.basis();
    let ok = residual.len() == 6 && residual == veronese && split.free.len() == 4 && r.generator_count == 10;
    Ok((ok, format!("{} free + {} residual generators", split.free.len(), residual.len())))
}

pub fn weyl_order(ty: RootSystemType, cap: usize) -> Result<(bool, String)> {
    let rs = RootSystem::build(ty)?;
    let g = enumerate_group(&rs, cap)?;
    Ok((g.len() as u128 == ty.weyl_group_order(), format!("|W| = {}", g.len())))
}

/// Expected class groups as invariant factors.
pub fn expected_class_group(ty: RootSystemType) -> Vec<u64> {
    let n = ty.rank;
    match ty.family {
        Family::A if n >= 2 => vec![n as u64 + 1],
        Family::C if n >= 3 => vec![2],
        Family::D if n.is_multiple_of(2) => vec![2, 2],
        Family::D => vec![4],
        Family::E if n == 6 => vec![3],
        Family::E if n == 7 => vec![2],
        _ => Vec::new(),
    }
}

pub fn class_group_table(opts: &SelfcheckOptions) -> Result<(bool, String)> {
    let mut types: Vec<RootSystemType> = Vec::new();
    types.extend((2..=8).map(|n| RootSystemType::a(n - 1)));
    types.extend((2..=8).map(RootSystemType::b));
    types.extend((3..=6).map(RootSystemType::c));
    types.extend((4..=7).map(RootSystemType::d));
    types.extend([RootSystemType::e(6), RootSystemType::e(7), RootSystemType::g2(), RootSystemType::f4(), RootSystemType::e(8)]);
    let mut failures = Vec::new();
    for ty in types {
        let cap = if ty == RootSystemType::e(7) && !opts.with_e7 { 100_000 } else { opts.group_cap };
        let cl = class_group(ty, cap)?;
        let mut expected = expected_class_group(ty);
        if ty == RootSystemType::a(1) {
            // W = {±1} contains the diagonalizable reflection −1.
            expected.clear();
        }
        let toric = toric_class_group(ty)?;
        if cl.group.invariant_factors != expected || toric != cl.group {
            failures.push(format!("{ty}: {} (toric {})", cl.group, toric));
        }
    }
    Ok((failures.is_empty(), if failures.is_empty() { "all agree".into() } else { failures.join("; ") }))
}

pub fn orbit_sum_invariance(cap: usize) -> Result<(bool, String)> {
    let mut types = Vec::new();
    for n in 1..=5 {
        types.push(RootSystemType::a(n));
    }
    for n in 2..=5 {
        types.push(RootSystemType::b(n));
        types.push(RootSystemType::c(n));
    }
    types.extend([RootSystemType::d(4), RootSystemType::d(5), RootSystemType::e(6)]);
    for ty in types {
        let rs = RootSystem::build(ty)?;
        let s = simple_reflections(&rs);
        for w in &rs.fundamental_weights_alpha {
            let p = orbit_sum(&rs, w, cap)?;
            if !s.iter().all(|r| p.act(r).is_ok_and(|q| q == p)) {
                return Ok((false, format!("{ty}: ô({w}) not invariant")));
            }
        }
    }
    Ok((true, "A1..A5, B2..B5, C2..C5, D4, D5, E6".into()))
}

/// Every monoid element with coordinates ≤ `bound` lies in exactly one translate `c + M₀`.
pub fn cell_partition(ty: RootSystemType, bound: i64) -> Result<(bool, String)> {
    let rs = RootSystem::build(ty)?;
    let m = weight_monoid(&rs);
    let z = m.unit_orders();
    let cells: BTreeSet<Vec<i64>> = m.hironaka_cells().into_iter().collect();
    let elements = m.elements_up_to(bound);
    for v in &elements {
        let hits = cells
            .iter()
            .filter(|c| c.iter().zip(v).zip(&z).all(|((c, x), z)| x >= c && (x - c) % z == 0))
            .count();
        if hits != 1 {
            return Ok((false, format!("{ty}: {v:?} lies in {hits} cells")));
        }
    }
    Ok((true, format!("{ty}: {} elements, {} cells", elements.len(), cells.len())))
}

pub fn selfcheck(opts: &SelfcheckOptions) -> Vec<Check> {
    let mut out = vec![
        check(1, "kernel Hilbert bases", kernel_fixtures),
        check(2, "box and kernel bases agree for A_{n-1}, n = 3..7", || box_kernel_agreement(7)),
        check(3, "A2 orbit-sum identities", || a2_identities(opts.orbit_cap)),
        check(4, "A2 relations", || relation_fixture("a2", &a_monoid(3).hilbert_basis_box(), 4)),
        check(4, "A3 relations", || relation_fixture("a3", &a_monoid(4).hilbert_basis_box(), 4)),
        check(4, "E6 relations", || relation_fixture("e6", &e6_residual_basis()?, 3)),
        check(5, "C and D generator counts", generator_counts),
        check(6, "E7 structure", e7_structure),
    ];
    if opts.with_e7 {
        out.push(check(7, "|W(E6)|", || weyl_order(RootSystemType::e(6), opts.group_cap)));
        out.push(check(7, "|W(E7)|", || weyl_order(RootSystemType::e(7), opts.group_cap)));
    }
    out.push(check(8, "class group table", || class_group_table(opts)));
    out.push(check(9, "orbit sums are invariant", || orbit_sum_invariance(opts.orbit_cap)));
    let mut partition: Vec<RootSystemType> = (3..=5).map(|n| RootSystemType::a(n - 1)).collect();
    partition.extend((2..=6).map(RootSystemType::c));
    partition.extend((4..=6).map(RootSystemType::d));
    for ty in partition {
        out.push(check(9, &format!("{ty} cell partition"), || cell_partition(ty, 10)));
    }
    out
}
