//! Hyperrings `(Z_n, q)`: the pair sets `{(x∘y, x∘y + q)}` (additive) and
//! `{(x·y, x·y·q)}` (multiplicative) inside `Z_n × Z_n`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HyperOp {
    Additive,
    Multiplicative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperPairSet {
    pub n: usize,
    pub q: usize,
    pub op: HyperOp,
    pub pairs: BTreeSet<(usize, usize)>,
}

pub fn hyperring(n: usize, q: usize, op: HyperOp) -> Result<HyperPairSet> {
    if n < 1 || q >= n {
        return Err(Error::InvalidArgument(format!("hyperring needs 0 <= q < n, got n={n}, q={q}")));
    }
    let mut pairs = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            let pair = match op {
                HyperOp::Additive => {
                    let s = (x + y) % n;
                    (s, (s + q) % n)
                }
                HyperOp::Multiplicative => {
                    let p = x * y % n;
                    (p, p * q % n)
                }
            };
            pairs.insert(pair);
        }
    }
    Ok(HyperPairSet { n, q, op, pairs })
}

impl HyperPairSet {
    /// Whether the pair set is a subring of `Z_n × Z_n` under componentwise
    /// operations.
    pub fn is_subring(&self) -> bool {
        let n = self.n;
        if !self.pairs.contains(&(0, 0)) {
            return false;
        }
        self.pairs.iter().all(|&(a, b)| {
            self.pairs.contains(&((n - a) % n, (n - b) % n))
                && self
                    .pairs
                    .iter()
                    .all(|&(c, d)| self.pairs.contains(&((a + c) % n, (b + d) % n)) && self.pairs.contains(&(a * c % n, b * d % n)))
        })
    }
}

/// Whether the pair sets for `q = 0..n` are pairwise disjoint and cover
/// `Z_n × Z_n`.
pub fn partitions_square(n: usize, op: HyperOp) -> Result<bool> {
    let mut seen = BTreeSet::new();
    for q in 0..n {
        for p in hyperring(n, q, op)?.pairs {
            if !seen.insert(p) {
                return Ok(false);
            }
        }
    }
    Ok(seen.len() == n * n)
}
