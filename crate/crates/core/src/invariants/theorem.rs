//! Closed-form descriptions of the weight monoids and their generators per family.

use crate::monoid::CongruenceMonoid;
use crate::roots::{Family, RootSystemType};

/// A generator given as an exponent vector in ϖ-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGenerator {
    pub label: String,
    pub exponent: Vec<i64>,
    /// The invariant in the family's customary notation.
    pub expression: String,
}

/// A relation `Π gᵢ^{aᵢ} = Π gⱼ^{bⱼ}` over the indices of a generator list.
pub type NamedRelation = (Vec<(usize, u32)>, Vec<(usize, u32)>);

#[derive(Clone, Debug, Default)]
pub struct ClosedForm {
    pub monoid: Option<CongruenceMonoid>,
    pub generators: Option<Vec<NamedGenerator>>,
    pub relations: Vec<NamedRelation>,
}

fn unit(n: usize, i: usize, c: i64) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i - 1] = c;
    e
}

fn plus(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn gen(label: String, exponent: Vec<i64>, expression: String) -> NamedGenerator {
    NamedGenerator { label, exponent, expression }
}

fn power(base: &str, k: i64) -> String {
    if k == 1 {
        base.to_string()
    } else {
        format!("{base}^{k}")
    }
}

pub fn closed_form(ty: RootSystemType) -> ClosedForm {
    let n = ty.rank;
    match ty.family {
        Family::A => {
            let m = n as i64 + 1;
            ClosedForm {
                monoid: CongruenceMonoid::new(n, vec![((1..m).collect(), m)]).ok(),
                ..Default::default()
            }
        }
        Family::B => b_form(n),
        Family::C => c_form(n),
        Family::D if n >= 4 => d_form(n),
        Family::E if n == 6 => ClosedForm {
            monoid: CongruenceMonoid::new(6, vec![(vec![1, 0, 2, 0, 1, 2], 3)]).ok(),
            ..Default::default()
        },
        Family::E if n == 7 => ClosedForm {
            monoid: CongruenceMonoid::new(7, vec![(vec![0, 1, 0, 0, 1, 0, 1], 2)]).ok(),
            ..Default::default()
        },
        Family::E | Family::F | Family::G => ClosedForm {
            monoid: Some(CongruenceMonoid::free(n)),
            generators: Some(
                (1..=n).map(|i| gen(format!("ô(ϖ{i})"), unit(n, i, 1), format!("ô(ϖ{i})"))).collect(),
            ),
            relations: Vec::new(),
        },
        Family::D => ClosedForm::default(),
    }
}

fn b_form(n: usize) -> ClosedForm {
    let mut generators: Vec<NamedGenerator> =
        (1..n).map(|i| gen(format!("σ{i}"), unit(n, i, 1), format!("σ{i}"))).collect();
    generators.push(gen(format!("σ{n}"), unit(n, n, 2), format!("σ{n}")));
    ClosedForm {
        monoid: CongruenceMonoid::new(n, vec![(unit(n, n, 1), 2)]).ok(),
        generators: Some(generators),
        relations: Vec::new(),
    }
}

fn c_form(n: usize) -> ClosedForm {
    let mut generators = Vec::new();
    for i in 1..=n {
        let k = if i % 2 == 0 { 1 } else { 2 };
        generators.push(gen(format!("π{i}"), unit(n, i, k), power(&format!("σ{i}"), k)));
    }
    let odd: Vec<usize> = (1..=n).step_by(2).collect();
    let mut relations = Vec::new();
    for (a, &i) in odd.iter().enumerate() {
        for &j in &odd[a + 1..] {
            relations.push((vec![(i - 1, 1), (j - 1, 1)], vec![(generators.len(), 2)]));
            generators.push(gen(format!("γ{i},{j}"), plus(&unit(n, i, 1), &unit(n, j, 1)), format!("σ{i}·σ{j}")));
        }
    }
    ClosedForm {
        monoid: CongruenceMonoid::new(n, vec![((1..=n as i64).collect(), 2)]).ok(),
        generators: Some(generators),
        relations,
    }
}

fn d_form(n: usize) -> ClosedForm {
    let even = n.is_multiple_of(2);
    let ni = n as i64;
    let mut mod4 = vec![0i64; n];
    for i in (1..=n - 2).step_by(2) {
        mod4[i - 1] = 2;
    }
    mod4[n - 2] = ni + 2;
    mod4[n - 1] = ni;
    let monoid = CongruenceMonoid::new(n, vec![(plus(&unit(n, n - 1, 1), &unit(n, n, 1)), 2), (mod4, 4)]).ok();

    let sigma = |i: usize| format!("σ{i}");
    let mut generators = Vec::new();
    for i in 1..=n - 2 {
        let k = if i % 2 == 0 { 1 } else { 2 };
        generators.push(gen(format!("π{i}"), unit(n, i, k), power(&sigma(i), k)));
    }
    let tk = if even { 2 } else { 4 };
    let pm = generators.len();
    generators.push(gen(format!("π{}", n - 1), unit(n, n - 1, tk), power("τ₋", tk)));
    generators.push(gen(format!("π{n}"), unit(n, n, tk), power("τ₊", tk)));
    let (pm, pp) = (pm, pm + 1);

    let odd: Vec<usize> = (1..=n - 2).step_by(2).collect();
    let mut relations = Vec::new();
    for (a, &i) in odd.iter().enumerate() {
        for &j in &odd[a + 1..] {
            relations.push((vec![(generators.len(), 2)], vec![(i - 1, 1), (j - 1, 1)]));
            generators.push(gen(format!("γ{i},{j}"), plus(&unit(n, i, 1), &unit(n, j, 1)), format!("σ{i}·σ{j}")));
        }
    }
    if even {
        for &i in &odd {
            relations.push((vec![(generators.len(), 2)], vec![(i - 1, 1), (pm, 1), (pp, 1)]));
            let e = plus(&plus(&unit(n, i, 1), &unit(n, n - 1, 1)), &unit(n, n, 1));
            generators.push(gen(format!("γ{i}"), e, format!("σ{i}·τ₋·τ₊")));
        }
    } else {
        relations.push((vec![(generators.len(), 4)], vec![(pm, 1), (pp, 1)]));
        generators.push(gen(
            format!("γ{},{n}", n - 1),
            plus(&unit(n, n - 1, 1), &unit(n, n, 1)),
            "τ₋·τ₊".to_string(),
        ));
        for &i in &odd {
            relations.push((vec![(generators.len(), 2)], vec![(i - 1, 1), (pm, 1)]));
            generators.push(gen(
                format!("γ{i},{}", n - 1),
                plus(&unit(n, i, 1), &unit(n, n - 1, 2)),
                format!("σ{i}·τ₋^2"),
            ));
            relations.push((vec![(generators.len(), 2)], vec![(i - 1, 1), (pp, 1)]));
            generators.push(gen(format!("γ{i},{n}"), plus(&unit(n, i, 1), &unit(n, n, 2)), format!("σ{i}·τ₊^2")));
        }
    }
    ClosedForm { monoid, generators: Some(generators), relations }
}

/// `n + C(⌈n/2⌉, 2)`.
pub fn c_generator_count(n: usize) -> usize {
    let h = n.div_ceil(2);
    n + h * (h - 1) / 2
}

/// `(n² + 6n)/8` for even `n`, `(n² + 12n + 3)/8` for odd `n`.
pub fn d_generator_count(n: usize) -> usize {
    if n.is_multiple_of(2) {
        (n * n + 6 * n) / 8
    } else {
        (n * n + 12 * n + 3) / 8
    }
}
