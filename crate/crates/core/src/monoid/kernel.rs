//! Hilbert bases of `{x ∈ Z₊ˢ : A·x = 0}` by Contejean–Devie completion.

use rustc_hash::FxHashSet;

use super::HilbertBasis;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub const DEFAULT_FRONTIER_CAP: usize = 5_000_000;

/// Completion search: a partial vector `x` with defect `A·x ≠ 0` is extended by
/// `eⱼ` only when `⟨A·x, A·eⱼ⟩ < 0`. Levels are processed by degree, so a zero-defect
/// vector is minimal unless it dominates a solution found earlier.
pub fn hilbert_basis_kernel(a: &IntMatrix, frontier_cap: usize) -> Result<HilbertBasis> {
    let rows = a.to_i64_rows().ok_or(Error::EntryOverflow)?;
    let s = a.cols();
    let columns: Vec<Vec<i64>> = (0..s).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let dot = |u: &[i64], v: &[i64]| -> i64 { u.iter().zip(v).map(|(x, y)| x * y).sum() };

    let mut solutions: Vec<Vec<i64>> = Vec::new();
    let mut frontier: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    for j in 0..s {
        let mut x = vec![0i64; s];
        x[j] = 1;
        frontier.push((x, columns[j].clone()));
    }

    while !frontier.is_empty() {
        let mut next: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        let mut seen: FxHashSet<Vec<i64>> = FxHashSet::default();
        let mut level_solutions = Vec::new();
        for (x, defect) in &frontier {
            if solutions.iter().any(|h| dominates(x, h)) {
                continue;
            }
            if defect.iter().all(|&d| d == 0) {
                level_solutions.push(x.clone());
                continue;
            }
            for (j, col) in columns.iter().enumerate() {
                if dot(defect, col) >= 0 {
                    continue;
                }
                let mut y = x.clone();
                y[j] += 1;
                if seen.contains(&y) {
                    continue;
                }
                let d: Vec<i64> = defect.iter().zip(col).map(|(p, q)| p + q).collect();
                seen.insert(y.clone());
                next.push((y, d));
                if next.len() > frontier_cap {
                    return Err(Error::Divergence { cap: frontier_cap });
                }
            }
        }
        solutions.extend(level_solutions);
        frontier = next;
    }
    Ok(HilbertBasis::new(solutions))
}

/// `x ≥ h` componentwise.
fn dominates(x: &[i64], h: &[i64]) -> bool {
    x.iter().zip(h).all(|(a, b)| a >= b)
}
