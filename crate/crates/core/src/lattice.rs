//! Inclusion posets of substructure families, lattice operations computed
//! inside the family, identity checks and forbidden-sublattice search.
//!
//! Meet and join are the family's own infimum and supremum, not set
//! intersection and generated sum: S-families are generally not closed
//! under intersection.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// Node count above which the exact pentagon/diamond search is skipped.
pub const FORBIDDEN_SEARCH_CAP: usize = 64;
/// Node count above which four-variable identities are not checked.
pub const QUADRUPLE_CAP: usize = 256;

#[derive(Debug, Clone)]
pub struct PosetModel {
    pub nodes: Vec<ElementSet>,
    /// `down[i]` = nodes `j` with `nodes[j] ⊆ nodes[i]`.
    down: Vec<ElementSet>,
    up: Vec<ElementSet>,
    pub bottom: usize,
    pub top: usize,
}

impl PosetModel {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.down[j].contains(i)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Covering pairs `(i, j)`: `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for j in 0..n {
            for i in self.down[j].iter().filter(|&i| i != j) {
                if !self.down[j].iter().any(|k| k != i && k != j && self.lt(i, k)) {
                    out.push((i, j));
                }
            }
        }
        out.sort();
        out
    }

    pub fn index_of(&self, s: &ElementSet) -> Option<usize> {
        self.nodes.iter().position(|x| x == s)
    }
}

/// Inclusion order on a family with a least and a greatest member.
pub fn poset_from_family(family: &[ElementSet]) -> Result<PosetModel> {
    if family.is_empty() {
        return Err(Error::InvalidArgument("empty family".into()));
    }
    let n = family.len();
    let down: Vec<ElementSet> = family
        .par_iter()
        .map(|a| ElementSet::from_elements(n, (0..n).filter(|&j| family[j].is_subset(a))))
        .collect();
    let up: Vec<ElementSet> = (0..n)
        .map(|i| ElementSet::from_elements(n, (0..n).filter(|&j| down[j].contains(i))))
        .collect();
    let bottom = (0..n)
        .find(|&i| up[i].len() == n)
        .ok_or_else(|| Error::InvalidArgument("family has no least member".into()))?;
    let top = (0..n)
        .find(|&i| down[i].len() == n)
        .ok_or_else(|| Error::InvalidArgument("family has no greatest member".into()))?;
    Ok(PosetModel {
        nodes: family.to_vec(),
        down,
        up,
        bottom,
        top,
    })
}

#[derive(Debug, Clone)]
pub struct LatticeModel {
    pub poset: PosetModel,
    meet: Vec<u32>,
    join: Vec<u32>,
}

/// Two nodes without a unique greatest lower (or least upper) bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotALattice {
    pub pair: (usize, usize),
    pub operation: &'static str,
}

impl LatticeModel {
    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }
}

fn bound(bounds: &ElementSet, cone: &[ElementSet], nodes: &[ElementSet], largest: bool) -> Option<usize> {
    let pick = if largest {
        bounds.iter().max_by_key(|&k| nodes[k].len())
    } else {
        bounds.iter().min_by_key(|&k| nodes[k].len())
    }?;
    bounds.is_subset(&cone[pick]).then_some(pick)
}

pub fn lattice_from_poset(p: PosetModel) -> std::result::Result<LatticeModel, NotALattice> {
    let n = p.len();
    let rows: Vec<std::result::Result<(Vec<u32>, Vec<u32>), NotALattice>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut m = Vec::with_capacity(n);
            let mut j = Vec::with_capacity(n);
            for b in 0..n {
                let lower = p.down[a].intersection(&p.down[b]);
                let upper = p.up[a].intersection(&p.up[b]);
                let mk = bound(&lower, &p.down, &p.nodes, true).ok_or(NotALattice {
                    pair: (a, b),
                    operation: "meet",
                })?;
                let jk = bound(&upper, &p.up, &p.nodes, false).ok_or(NotALattice {
                    pair: (a, b),
                    operation: "join",
                })?;
                m.push(mk as u32);
                j.push(jk as u32);
            }
            Ok((m, j))
        })
        .collect();
    let mut meet = Vec::with_capacity(n * n);
    let mut join = Vec::with_capacity(n * n);
    for row in rows {
        let (m, j) = row?;
        meet.extend(m);
        join.extend(j);
    }
    Ok(LatticeModel { poset: p, meet, join })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Modular,
    Distributive,
    QuasiDistributive,
    Supermodular,
}

impl Identity {
    pub const ALL: [Identity; 4] = [Identity::Modular, Identity::Distributive, Identity::QuasiDistributive, Identity::Supermodular];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Modular => "modular",
            Identity::Distributive => "distributive",
            Identity::QuasiDistributive => "quasi_distributive",
            Identity::Supermodular => "supermodular",
        }
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "modular" => Ok(Identity::Modular),
            "distributive" => Ok(Identity::Distributive),
            "quasi_distributive" | "quasi" => Ok(Identity::QuasiDistributive),
            "supermodular" => Ok(Identity::Supermodular),
            other => Err(Error::InvalidArgument(format!("unknown lattice identity '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityVerdict {
    pub identity: Identity,
    pub holds: bool,
    /// Canonically least failing tuple of node indices.
    pub counterexample: Option<Vec<usize>>,
}

fn modular_fails(l: &LatticeModel, x: usize, y: usize, z: usize) -> bool {
    l.poset.leq(x, z) && l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z)
}

fn distributive_fails(l: &LatticeModel, x: usize, y: usize, z: usize) -> bool {
    l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))
}

/// `(x∨y)∧(z∨u) = (x∧(z∨u)) ∨ (y∧(z∨u)) ∨ (z∧(x∨y)) ∨ (u∧(x∨y))` together
/// with its order dual.
fn quasi_distributive_fails(l: &LatticeModel, x: usize, y: usize, z: usize, u: usize) -> bool {
    let (j, m) = (|a, b| l.join(a, b), |a, b| l.meet(a, b));
    let xy = j(x, y);
    let zu = j(z, u);
    let lhs = m(xy, zu);
    let rhs = j(j(m(x, zu), m(y, zu)), j(m(z, xy), m(u, xy)));
    if lhs != rhs {
        return true;
    }
    let xy = m(x, y);
    let zu = m(z, u);
    let lhs = j(xy, zu);
    let rhs = m(m(j(x, zu), j(y, zu)), m(j(z, xy), j(u, xy)));
    lhs != rhs
}

/// `(a∨b)∧(a∨c)∧(a∨d) = a ∨ (b∧c∧(a∨d)) ∨ (b∧d∧(a∨c)) ∨ (d∧c∧(a∨b))`.
fn supermodular_fails(l: &LatticeModel, a: usize, b: usize, c: usize, d: usize) -> bool {
    let (j, m) = (|x, y| l.join(x, y), |x, y| l.meet(x, y));
    let (ab, ac, ad) = (j(a, b), j(a, c), j(a, d));
    let lhs = m(m(ab, ac), ad);
    let rhs = j(j(a, m(m(b, c), ad)), j(m(m(b, d), ac), m(m(d, c), ab)));
    lhs != rhs
}

pub fn check_identity(l: &LatticeModel, identity: Identity) -> Result<IdentityVerdict> {
    let n = l.len();
    let counterexample: Option<Vec<usize>> = match identity {
        Identity::Modular | Identity::Distributive => {
            let f = if identity == Identity::Modular { modular_fails } else { distributive_fails };
            (0..n)
                .into_par_iter()
                .filter_map(|x| {
                    (0..n).find_map(|y| (0..n).find(|&z| f(l, x, y, z)).map(|z| vec![x, y, z]))
                })
                .min()
        }
        Identity::QuasiDistributive | Identity::Supermodular => {
            if n > QUADRUPLE_CAP {
                return Err(Error::capacity(format!("{} check", identity.name()), n as u128, QUADRUPLE_CAP as u128));
            }
            let f = if identity == Identity::QuasiDistributive {
                quasi_distributive_fails
            } else {
                supermodular_fails
            };
            (0..n)
                .into_par_iter()
                .filter_map(|a| {
                    (0..n).find_map(|b| {
                        (0..n).find_map(|c| (0..n).find(|&d| f(l, a, b, c, d)).map(|d| vec![a, b, c, d]))
                    })
                })
                .min()
        }
    };
    Ok(IdentityVerdict {
        identity,
        holds: counterexample.is_none(),
        counterexample,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Pentagon,
    Diamond,
}

/// Every pentagon sublattice, as `[bottom, a, c, b, top]` with `a < c` and
/// `b` incomparable to both, in canonical index order.
pub fn pentagons(l: &LatticeModel) -> Result<Vec<[usize; 5]>> {
    let n = l.len();
    if n > FORBIDDEN_SEARCH_CAP {
        return Err(Error::capacity("pentagon search", n as u128, FORBIDDEN_SEARCH_CAP as u128));
    }
    let p = &l.poset;
    let mut out = Vec::new();
    for a in 0..n {
        for c in 0..n {
            if !p.lt(a, c) {
                continue;
            }
            for b in 0..n {
                if p.comparable(a, b) || p.comparable(b, c) {
                    continue;
                }
                if l.meet(a, b) == l.meet(c, b) && l.join(a, b) == l.join(c, b) {
                    out.push([l.meet(a, b), a, c, b, l.join(a, b)]);
                }
            }
        }
    }
    Ok(out)
}

/// Every diamond sublattice as `[bottom, x, y, z, top]` with `x < y < z`.
pub fn diamonds(l: &LatticeModel) -> Result<Vec<[usize; 5]>> {
    let n = l.len();
    if n > FORBIDDEN_SEARCH_CAP {
        return Err(Error::capacity("diamond search", n as u128, FORBIDDEN_SEARCH_CAP as u128));
    }
    let p = &l.poset;
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if p.comparable(x, y) {
                continue;
            }
            let (o, i) = (l.meet(x, y), l.join(x, y));
            for z in y + 1..n {
                if !p.comparable(x, z)
                    && !p.comparable(y, z)
                    && l.meet(x, z) == o
                    && l.meet(y, z) == o
                    && l.join(x, z) == i
                    && l.join(y, z) == i
                {
                    out.push([o, x, y, z, i]);
                }
            }
        }
    }
    Ok(out)
}

/// The first forbidden sublattice of the given shape in canonical order,
/// or `None` when the lattice has none.
pub fn find_forbidden_sublattice(l: &LatticeModel, shape: Shape) -> Result<Option<[usize; 5]>> {
    Ok(match shape {
        Shape::Pentagon => pentagons(l)?.into_iter().next(),
        Shape::Diamond => diamonds(l)?.into_iter().next(),
    })
}

/// Whether `nodes` (any order) is closed under meet and join and is
/// isomorphic to the given shape.
pub fn is_sublattice_of_shape(l: &LatticeModel, nodes: &[usize], shape: Shape) -> bool {
    let mut v = nodes.to_vec();
    v.sort();
    v.dedup();
    if v.len() != 5 {
        return false;
    }
    let closed = v.iter().all(|&a| v.iter().all(|&b| v.contains(&l.meet(a, b)) && v.contains(&l.join(a, b))));
    if !closed {
        return false;
    }
    let p = &l.poset;
    let Some(&bottom) = v.iter().find(|&&a| v.iter().all(|&b| p.leq(a, b))) else { return false };
    let Some(&top) = v.iter().find(|&&a| v.iter().all(|&b| p.leq(b, a))) else { return false };
    let mid: Vec<usize> = v.iter().copied().filter(|&a| a != bottom && a != top).collect();
    let comparable_pairs = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p.comparable(mid[i], mid[j])).count();
    match shape {
        Shape::Pentagon => comparable_pairs == 1,
        Shape::Diamond => comparable_pairs == 0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainStats {
    /// Number of nodes on a longest chain.
    pub longest_chain: usize,
    pub total_order: bool,
}

pub fn chain_stats(p: &PosetModel) -> ChainStats {
    let n = p.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| p.down[i].len());
    let mut best = vec![1usize; n];
    for (pos, &j) in order.iter().enumerate() {
        for &i in &order[..pos] {
            if p.lt(i, j) {
                best[j] = best[j].max(best[i] + 1);
            }
        }
    }
    ChainStats {
        longest_chain: best.into_iter().max().unwrap_or(0),
        total_order: (0..n).all(|i| (0..n).all(|j| p.comparable(i, j))),
    }
}

/// Hasse diagram as DOT text. Node `i` is `n<i>`; edges are covering pairs
/// drawn from the smaller to the larger member.
pub fn export_hasse<F>(p: &PosetModel, label: F) -> String
where
    F: Fn(usize) -> String,
{
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..p.len() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", label(i).replace('"', "\\\""));
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}
