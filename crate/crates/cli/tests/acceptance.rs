//! One line per acceptance criterion: verdict, detail, elapsed time against its limit.
//! Run with `cargo test -p rootinv-cli --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rootinv::classgroup::{class_group, toric_class_group};
use rootinv::invariants::{c_generator_count, closed_form, d_generator_count, omega_polynomial, report, veronese_structure};
use rootinv::laurent::{orbit_sum, ExponentLattice, LaurentPoly};
use rootinv::monoid::{hilbert_basis_kernel, weight_monoid, CongruenceMonoid, DEFAULT_FRONTIER_CAP};
use rootinv::relations::{fixture, relations_bounded, relations_equivalent, verify_relation, DEFAULT_FIBER_CAP};
use rootinv::selfcheck::{cell_partition, e6_residual_basis};
use rootinv::weyl::{enumerate_group, simple_reflections};
use rootinv::{IntMatrix, RatVector, RootSystem, RootSystemType, DEFAULT_GROUP_CAP, DEFAULT_ORBIT_CAP};

struct Verdict {
    id: u8,
    passed: bool,
    detail: String,
    elapsed: Duration,
    limit: Duration,
}

fn criterion(id: u8, limit_secs: u64, f: impl FnOnce() -> (bool, String)) -> Verdict {
    let start = Instant::now();
    let (passed, detail) = f();
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_secs);
    Verdict { id, passed: passed && elapsed <= limit, detail, elapsed, limit }
}

fn set(v: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    v.iter().cloned().collect()
}

fn kernel(row: &[i64]) -> Vec<Vec<i64>> {
    hilbert_basis_kernel(&IntMatrix::from_rows(&[row]).unwrap(), DEFAULT_FRONTIER_CAP).unwrap().elements
}

fn a_monoid(n: i64) -> CongruenceMonoid {
    CongruenceMonoid::new(n as usize - 1, vec![((1..n).collect(), n)]).unwrap()
}

fn drop_last(v: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    v.iter().map(|x| x[..x.len() - 1].to_vec()).collect()
}

fn c1() -> (bool, String) {
    let mut worst = Duration::ZERO;
    let mut timed = |row: &[i64]| {
        let t = Instant::now();
        let out = kernel(row);
        worst = worst.max(t.elapsed());
        out
    };
    let a2 = timed(&[1, 2, -3]);
    let a3 = timed(&[1, 2, 3, -4]);
    let e6 = timed(&[1, 2, 1, 2, -3]);
    let ok = drop_last(&a2) == set(&[vec![1, 1], vec![3, 0], vec![0, 3]])
        && drop_last(&a3) == set(&[vec![0, 2, 0], vec![1, 0, 1], vec![2, 1, 0], vec![0, 1, 2], vec![4, 0, 0], vec![0, 0, 4]])
        && drop_last(&e6)
            == set(&[
                vec![0, 0, 1, 1],
                vec![1, 0, 0, 1],
                vec![0, 1, 1, 0],
                vec![1, 1, 0, 0],
                vec![0, 0, 3, 0],
                vec![1, 0, 2, 0],
                vec![2, 0, 1, 0],
                vec![3, 0, 0, 0],
                vec![0, 0, 0, 3],
                vec![0, 1, 0, 2],
                vec![0, 2, 0, 1],
                vec![0, 3, 0, 0],
            ]);
    (ok && worst < Duration::from_secs(1), format!("sizes {}/{}/{}, slowest {worst:.2?}", a2.len(), a3.len(), e6.len()))
}

fn c2() -> (bool, String) {
    let mut sizes = Vec::new();
    for n in 3..=7i64 {
        let by_box = set(&a_monoid(n).hilbert_basis_box().elements);
        let mut row: Vec<i64> = (1..n).collect();
        row.push(-n);
        if by_box != drop_last(&kernel(&row)) {
            return (false, format!("n = {n} differs"));
        }
        sizes.push(by_box.len().to_string());
    }
    (true, format!("basis sizes {}", sizes.join(",")))
}

/// The right-hand sides are written out monomial by monomial.
fn c3() -> (bool, String) {
    let rs = RootSystem::build(RootSystemType::a(2)).unwrap();
    let ring = ExponentLattice::alpha(2);
    let poly = |terms: &[[i64; 2]]| {
        terms.iter().fold(LaurentPoly::zero(ring), |acc, e| acc.add(&LaurentPoly::monomial(ring, e.to_vec(), 1).unwrap()).unwrap())
    };
    let om = |m: &[i64]| omega_polynomial(&rs, m, DEFAULT_ORBIT_CAP).unwrap();
    let (mu, p1, p2) = (om(&[1, 1]), om(&[3, 0]), om(&[0, 3]));
    let three_mu = mu.scale_by(&3.into());
    let o_a1 = poly(&[[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]]);
    let o_2a1a2 = poly(&[[2, 1], [-1, 1], [-1, -2]]);
    let o_a12a2 = poly(&[[1, 2], [1, -1], [-2, -1]]);
    let checks = [
        mu.pow(3).unwrap() == p1.mul(&p2).unwrap(),
        mu.add_constant(-3) == o_a1,
        p1.sub(&three_mu).unwrap().add_constant(3) == o_2a1a2,
        p2.sub(&three_mu).unwrap().add_constant(3) == o_a12a2,
        orbit_sum(&rs, &RatVector::from_ints(&[2, 1]), DEFAULT_ORBIT_CAP).unwrap() == o_2a1a2,
    ];
    (checks.iter().all(|&c| c), format!("{checks:?}"))
}

fn c4() -> (bool, String) {
    let cases = [
        ("a2", a_monoid(3).hilbert_basis_box(), 4, 1),
        ("a3", a_monoid(4).hilbert_basis_box(), 4, 6),
        ("e6", e6_residual_basis().unwrap(), 3, 35),
    ];
    let mut details = Vec::new();
    let mut ok = true;
    for (name, basis, bound, count) in cases {
        let reference = fixture(name).unwrap().reindex(&basis).unwrap();
        let valid = reference.iter().all(|b| verify_relation(&basis, b).unwrap());
        let ours = relations_bounded(&basis, bound, DEFAULT_FIBER_CAP).unwrap();
        let eq = relations_equivalent(&ours, &reference, &basis, bound, DEFAULT_FIBER_CAP).unwrap();
        ok &= valid && eq && reference.len() == count;
        details.push(format!("{name}: {}/{} equivalent={eq}", ours.len(), reference.len()));
    }
    (ok, details.join("; "))
}

fn c5() -> (bool, String) {
    for n in 2..=12 {
        let r = report(RootSystemType::c(n)).unwrap();
        let described = closed_form(RootSystemType::c(n)).generators.unwrap();
        if r.generator_count != c_generator_count(n) || set(&r.hilbert_basis.elements) != described.iter().map(|g| g.exponent.clone()).collect() {
            return (false, format!("C{n}"));
        }
    }
    for n in 4..=12 {
        let expected = if n % 2 == 0 { (n * n + 6 * n) / 8 } else { (n * n + 12 * n + 3) / 8 };
        let r = report(RootSystemType::d(n)).unwrap();
        let described = closed_form(RootSystemType::d(n)).generators.unwrap();
        if r.generator_count != expected
            || expected != d_generator_count(n)
            || set(&r.hilbert_basis.elements) != described.iter().map(|g| g.exponent.clone()).collect()
        {
            return (false, format!("D{n}"));
        }
    }
    (true, "C2..C12 and D4..D12 match elementwise".into())
}

fn c6() -> (bool, String) {
    let r = report(RootSystemType::e(7)).unwrap();
    let split = r.monoid.split_free_part();
    let residual = split.residual.hilbert_basis_box();
    let v = veronese_structure(3).unwrap();
    let bijective = residual.len() == 6
        && v.generators.iter().all(|g| residual.position(&g.exponent).is_some())
        && set(&residual.elements).len() == v.generator_count();
    (
        bijective && split.free.len() == 4 && r.generator_count == 10,
        format!("{} free + {} residual, total {}", split.free.len(), residual.len(), r.generator_count),
    )
}

/// Peak resident set size of this process, in bytes (Linux only).
fn peak_rss() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

fn c7() -> (bool, String) {
    let e6 = enumerate_group(&RootSystem::build(RootSystemType::e(6)).unwrap(), DEFAULT_GROUP_CAP).unwrap().len();
    let e7 = enumerate_group(&RootSystem::build(RootSystemType::e(7)).unwrap(), DEFAULT_GROUP_CAP).unwrap().len();
    let rss = peak_rss();
    let mem_ok = rss.is_none_or(|b| b < 4 << 30);
    (
        e6 == 51_840 && e7 == 2_903_040 && mem_ok,
        format!("|W(E6)| = {e6}, |W(E7)| = {e7}, peak RSS {} MiB", rss.map_or("?".into(), |b| (b >> 20).to_string())),
    )
}

fn c8() -> (bool, String) {
    let mut rows: Vec<(RootSystemType, &str)> = Vec::new();
    let names: Vec<String> = (2..=8).map(|n| format!("Z/{n}")).collect();
    for (n, name) in (2..=8).zip(&names) {
        // A₁ (n = 2) contains the diagonalizable reflection −1 and has trivial class group.
        rows.push((RootSystemType::a(n - 1), if n == 2 { "0" } else { name }));
    }
    rows.extend((2..=8).map(|n| (RootSystemType::b(n), "0")));
    rows.extend((3..=6).map(|n| (RootSystemType::c(n), "Z/2")));
    rows.extend((4..=7).map(|n| (RootSystemType::d(n), if n % 2 == 0 { "Z/2 × Z/2" } else { "Z/4" })));
    rows.extend([
        (RootSystemType::e(6), "Z/3"),
        (RootSystemType::e(7), "Z/2"),
        (RootSystemType::g2(), "0"),
        (RootSystemType::f4(), "0"),
        (RootSystemType::e(8), "0"),
    ]);
    let mut bad = Vec::new();
    for (ty, expected) in &rows {
        let cl = class_group(*ty, DEFAULT_GROUP_CAP).unwrap();
        let toric = toric_class_group(*ty).unwrap();
        if cl.group.to_string() != *expected || toric != cl.group {
            bad.push(format!("{ty}: {} / toric {toric}", cl.group));
        }
    }
    (bad.is_empty(), if bad.is_empty() { format!("{} types agree", rows.len()) } else { bad.join("; ") })
}

fn c9() -> (bool, String) {
    let mut types: Vec<RootSystemType> = Vec::new();
    types.extend((1..=5).map(RootSystemType::a));
    types.extend((2..=5).map(RootSystemType::b));
    types.extend((2..=5).map(RootSystemType::c));
    types.extend((3..=5).map(RootSystemType::d));
    types.push(RootSystemType::e(6));
    for ty in &types {
        let rs = RootSystem::build(*ty).unwrap();
        for w in &rs.fundamental_weights_alpha {
            let p = orbit_sum(&rs, w, DEFAULT_ORBIT_CAP).unwrap();
            if !simple_reflections(&rs).iter().all(|s| p.act(s).unwrap() == p) {
                return (false, format!("{ty}: ô({w}) not invariant"));
            }
        }
    }
    let mut partition: Vec<RootSystemType> = (3..=5).map(|n| RootSystemType::a(n - 1)).collect();
    partition.extend((2..=6).map(RootSystemType::c));
    partition.extend((4..=6).map(RootSystemType::d));
    let mut elements = 0;
    for ty in &partition {
        let (ok, detail) = cell_partition(*ty, 10).unwrap();
        if !ok {
            return (false, detail);
        }
        elements += weight_monoid(&RootSystem::build(*ty).unwrap()).elements_up_to(10).len();
    }
    (true, format!("{} weight systems invariant; {elements} monoid elements partitioned", types.len()))
}

fn c10() -> (bool, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rootinv")).arg("selfcheck").output().expect("binary runs");
    let stderr = String::from_utf8_lossy(&out.stderr);
    let failed = stderr.lines().filter(|l| l.starts_with("FAIL")).count();
    (out.status.success() && failed == 0, format!("exit {:?}, {} checks, {failed} failed", out.status.code(), stderr.lines().count()))
}

#[test]
fn acceptance() {
    let verdicts = vec![
        criterion(1, 3, c1),
        criterion(2, 10, c2),
        criterion(3, 1, c3),
        criterion(4, 60, c4),
        criterion(5, 30, c5),
        criterion(6, 1, c6),
        criterion(7, 120, c7),
        criterion(8, 150, c8),
        criterion(9, 60, c9),
        criterion(10, 120, c10),
    ];
    for v in &verdicts {
        println!(
            "criterion {:>2}: {} ({:.2}s of {}s) {}",
            v.id,
            if v.passed { "PASS" } else { "FAIL" },
            v.elapsed.as_secs_f64(),
            v.limit.as_secs(),
            v.detail
        );
    }
    let failed: Vec<u8> = verdicts.iter().filter(|v| !v.passed).map(|v| v.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn empty_monoid_element_maps_to_one() {
    let rs = RootSystem::build(RootSystemType::d(4)).unwrap();
    assert_eq!(omega_polynomial(&rs, &[0; 4], DEFAULT_ORBIT_CAP).unwrap(), LaurentPoly::one(ExponentLattice::alpha(4)));
}
