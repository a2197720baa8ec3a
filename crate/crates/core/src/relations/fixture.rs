//! Reference relation lists.
//!
//! ```text
//! # comment
//! gen 3 0
//! gen 0 3
//! gen 1 1
//! g3^3 = g1*g2
//! ```

use super::Binomial;
use crate::error::{Error, Result};
use crate::monoid::HilbertBasis;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFixture {
    pub generators: Vec<Vec<i64>>,
    /// Exponent vectors indexed like `generators`.
    pub relations: Vec<(Vec<u32>, Vec<u32>)>,
}

const A2: &str = include_str!("../../fixtures/a2_relations.txt");
const A3: &str = include_str!("../../fixtures/a3_relations.txt");
const E6: &str = include_str!("../../fixtures/e6_relations.txt");

/// Bundled fixtures: `a2`, `a3`, `e6`.
pub fn fixture(name: &str) -> Option<RelationFixture> {
    let text = match name {
        "a2" => A2,
        "a3" => A3,
        "e6" => E6,
        _ => return None,
    };
    Some(parse_fixture(text).expect("bundled fixture parses"))
}

fn parse_side(s: &str, k: usize, line: usize) -> Result<Vec<u32>> {
    let mut e = vec![0u32; k];
    let s = s.trim();
    if s == "1" {
        return Ok(e);
    }
    for factor in s.split(['*', '·']) {
        let factor = factor.trim();
        let (name, pow) = match factor.split_once('^') {
            Some((n, p)) => (
                n,
                p.trim().parse::<u32>().map_err(|_| Error::Parse { line, msg: format!("bad exponent in {factor:?}") })?,
            ),
            None => (factor, 1),
        };
        let idx = name
            .trim()
            .strip_prefix('g')
            .and_then(|i| i.parse::<usize>().ok())
            .filter(|&i| (1..=k).contains(&i))
            .ok_or_else(|| Error::Parse { line, msg: format!("unknown generator {name:?}") })?;
        e[idx - 1] += pow;
    }
    Ok(e)
}

pub fn parse_fixture(text: &str) -> Result<RelationFixture> {
    let mut generators = Vec::new();
    let mut raw = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        let l = l.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        if let Some(body) = l.strip_prefix("gen") {
            if !raw.is_empty() {
                return Err(Error::Parse { line, msg: "generators must precede relations".into() });
            }
            let v = body
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse { line, msg: "bad generator".into() })?;
            if generators.first().is_some_and(|g: &Vec<i64>| g.len() != v.len()) {
                return Err(Error::Parse { line, msg: "generator dimension mismatch".into() });
            }
            generators.push(v);
        } else {
            raw.push((line, l.to_string()));
        }
    }
    let k = generators.len();
    let mut relations = Vec::with_capacity(raw.len());
    for (line, l) in raw {
        let (lhs, rhs) = l.split_once('=').ok_or_else(|| Error::Parse { line, msg: "expected `lhs = rhs`".into() })?;
        relations.push((parse_side(lhs, k, line)?, parse_side(rhs, k, line)?));
    }
    Ok(RelationFixture { generators, relations })
}

impl RelationFixture {
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// The relations rewritten in the index order of `basis`, which must hold the same generators.
    pub fn reindex(&self, basis: &HilbertBasis) -> Result<Vec<Binomial>> {
        if basis.len() != self.generators.len() {
            return Err(Error::DimensionMismatch { expected: basis.len(), got: self.generators.len() });
        }
        let map: Vec<usize> = self
            .generators
            .iter()
            .map(|g| basis.position(g).ok_or_else(|| Error::InvalidMonoid(format!("{g:?} is not a basis element"))))
            .collect::<Result<_>>()?;
        let permute = |e: &[u32]| {
            let mut out = vec![0u32; basis.len()];
            for (i, &c) in e.iter().enumerate() {
                out[map[i]] += c;
            }
            out
        };
        Ok(self.relations.iter().map(|(p, m)| Binomial { plus: permute(p), minus: permute(m) }).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled() {
        assert_eq!(fixture("a2").unwrap().len(), 1);
        assert_eq!(fixture("a3").unwrap().len(), 6);
        let e6 = fixture("e6").unwrap();
        assert_eq!(e6.generators.len(), 12);
        assert_eq!(e6.len(), 35);
        assert!(fixture("b7").is_none());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_fixture("gen 1\ng2 = g1"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_fixture("gen 1\ng1 g1"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_fixture("gen 1\ngen 1 2"), Err(Error::Parse { line: 2, .. })));
        assert_eq!(parse_fixture("gen 2\ngen 1\ng1 = g2·g2").unwrap().relations, vec![(vec![1, 0], vec![0, 2])]);
    }
}
