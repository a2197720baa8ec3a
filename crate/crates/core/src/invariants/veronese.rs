//! The second Veronese subring of `Z[t₁, …, t_d]`, as the monoid `{k ∈ Z₊ᵈ : Σ kᵢ even}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::{CongruenceMonoid, HilbertBasis};
use crate::relations::Binomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VeroneseGenerator {
    pub label: String,
    /// 1-based `(i, i)` for `xᵢ = tᵢ²`, `(i, j)` with `i < j` for `x_{i,j} = tᵢtⱼ`.
    pub pair: (usize, usize),
    pub exponent: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VeroneseStructure {
    pub d: usize,
    /// The `xᵢ` first, then the `x_{i,j}` in lexicographic order.
    pub generators: Vec<VeroneseGenerator>,
    /// `xᵢxⱼ = x_{i,j}²`, indexed over `generators`.
    pub relations: Vec<Binomial>,
    /// Chains `i₁ < j₁ < i₂ < j₂ < …` (1-based); the empty chain is the unit cell.
    pub cells: Vec<Vec<usize>>,
}

impl VeroneseStructure {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn monoid(&self) -> CongruenceMonoid {
        CongruenceMonoid::new(self.d, vec![(vec![1; self.d], 2)]).expect("well-formed")
    }

    /// Exponent of the cell monomial `x_{i₁,j₁} x_{i₂,j₂} ⋯`.
    pub fn cell_exponent(&self, chain: &[usize]) -> Vec<i64> {
        let mut e = vec![0; self.d];
        for &i in chain {
            e[i - 1] += 1;
        }
        e
    }

    pub fn basis(&self) -> HilbertBasis {
        HilbertBasis::new(self.generators.iter().map(|g| g.exponent.clone()).collect())
    }
}

pub fn veronese_structure(d: usize) -> Result<VeroneseStructure> {
    if d < 2 {
        return Err(Error::InvalidRank { family: 'V', rank: d });
    }
    let unit = |i: usize| {
        let mut e = vec![0i64; d];
        e[i - 1] = 1;
        e
    };
    let mut generators = Vec::new();
    for i in 1..=d {
        let mut e = unit(i);
        e[i - 1] = 2;
        generators.push(VeroneseGenerator { label: format!("x{i}"), pair: (i, i), exponent: e });
    }
    for i in 1..=d {
        for j in i + 1..=d {
            let e: Vec<i64> = unit(i).iter().zip(unit(j)).map(|(a, b)| a + b).collect();
            generators.push(VeroneseGenerator { label: format!("x{i}{j}"), pair: (i, j), exponent: e });
        }
    }
    let k = generators.len();
    let mut relations = Vec::new();
    for (m, g) in generators.iter().enumerate().skip(d) {
        let (i, j) = g.pair;
        let mut plus = vec![0u32; k];
        plus[i - 1] = 1;
        plus[j - 1] = 1;
        let mut minus = vec![0u32; k];
        minus[m] = 2;
        relations.push(Binomial { plus, minus });
    }
    Ok(VeroneseStructure { d, generators, relations, cells: chains(d) })
}

/// Strictly increasing sequences of even length in `1..=d`.
fn chains(d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for len in (2..=d).step_by(2) {
        let mut cur = Vec::with_capacity(len);
        subsets(1, d, len, &mut cur, &mut out);
    }
    out
}

fn subsets(start: usize, d: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for i in start..=d {
        cur.push(i);
        subsets(i + 1, d, len, cur, out);
        cur.pop();
    }
}
