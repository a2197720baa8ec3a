//! Text format for monoid instances.
//!
//! ```text
//! # comment
//! 3
//! 1 2 3 mod 4
//! ```
//!
//! or one or more kernel rows:
//!
//! ```text
//! ker: 1 2 -3
//! ```

use super::CongruenceMonoid;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidInstance {
    Congruence(CongruenceMonoid),
    Kernel(IntMatrix),
}

fn parse_ints(s: &str, line: usize) -> Result<Vec<i64>> {
    s.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| Error::Parse { line, msg: format!("expected an integer, got {t:?}") }))
        .collect()
}

pub fn parse_instance(text: &str) -> Result<MonoidInstance> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let Some(&(first_no, first)) = lines.first() else {
        return Err(Error::Parse { line: 1, msg: "empty instance".into() });
    };

    if first.starts_with("ker:") {
        let mut rows = Vec::new();
        for &(no, l) in &lines {
            let body = l
                .strip_prefix("ker:")
                .ok_or_else(|| Error::Parse { line: no, msg: "expected a `ker:` row".into() })?;
            rows.push(parse_ints(body, no)?);
        }
        let width = rows[0].len();
        if width == 0 {
            return Err(Error::Parse { line: first_no, msg: "empty kernel row".into() });
        }
        for (row, &(no, _)) in rows.iter().zip(&lines) {
            if row.len() != width {
                return Err(Error::Parse { line: no, msg: format!("expected {width} entries, got {}", row.len()) });
            }
        }
        return Ok(MonoidInstance::Kernel(IntMatrix::from_rows(&rows)?));
    }

    let n: usize = first
        .parse()
        .map_err(|_| Error::Parse { line: first_no, msg: format!("expected the dimension, got {first:?}") })?;
    let mut congruences = Vec::new();
    for &(no, l) in &lines[1..] {
        let (lhs, rhs) = l
            .split_once("mod")
            .ok_or_else(|| Error::Parse { line: no, msg: "expected `a₁ … aₙ mod m`".into() })?;
        let coeffs = parse_ints(lhs, no)?;
        if coeffs.len() != n {
            return Err(Error::Parse { line: no, msg: format!("expected {n} coefficients, got {}", coeffs.len()) });
        }
        let m = rhs
            .trim()
            .parse::<i64>()
            .map_err(|_| Error::Parse { line: no, msg: format!("bad modulus {:?}", rhs.trim()) })?;
        if m < 1 {
            return Err(Error::Parse { line: no, msg: "modulus must be positive".into() });
        }
        congruences.push((coeffs, m));
    }
    Ok(MonoidInstance::Congruence(CongruenceMonoid::new(n, congruences)?))
}
