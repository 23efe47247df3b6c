//! Finite groups and semigroups given by Cayley tables.
//!
//! These feed the group-ring and semigroup-ring constructions and carry the
//! semigroup-level Smarandache predicates (S-semigroups, S-normal subgroups).
//! Permutations compose right-to-left: `(p∘q)(i) = p(q(i))`, and symmetric
//! groups index their elements in lexicographic (Lehmer) order, so index 0 is
//! always the identity.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    Group,
    Semigroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    Dihedral(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SemigroupSpec {
    /// All self-maps of an n-element set under composition.
    SymmetricSemigroup(usize),
    /// `{0, …, n-1}` under multiplication mod n.
    ZnMultiplicative(usize),
    Explicit(Vec<Vec<usize>>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
        }
    }
}

impl fmt::Display for SemigroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemigroupSpec::SymmetricSemigroup(n) => write!(f, "S({n})"),
            SemigroupSpec::ZnMultiplicative(n) => write!(f, "Zn*{n}"),
            SemigroupSpec::Explicit(rows) => write!(f, "table[{}]", rows.len()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureLimits {
    /// Largest structure whose Cayley table is materialised.
    pub max_size: usize,
    /// Associativity is checked on every triple up to this size.
    pub associativity_cap: usize,
    /// Hard cap on the size of any enumerated subset family.
    pub family_cap: usize,
}

impl Default for StructureLimits {
    fn default() -> Self {
        Self {
            max_size: 1024,
            associativity_cap: 512,
            family_cap: 1_000_000,
        }
    }
}

/// A finite magma with an associative operation, stored as a Cayley table.
#[derive(Clone)]
pub struct CayleyStructure {
    size: usize,
    table: Vec<u32>,
    identity: Option<usize>,
    kind: StructureKind,
    label: String,
    /// For permutation and self-map structures: the map each element denotes.
    maps: Option<Vec<Vec<usize>>>,
}

impl fmt::Debug for CayleyStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CayleyStructure")
            .field("label", &self.label)
            .field("size", &self.size)
            .field("kind", &self.kind)
            .field("identity", &self.identity)
            .finish()
    }
}

impl CayleyStructure {
    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b] as usize
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The self-map denoted by element `x`, for permutation and full
    /// transformation structures.
    pub fn map_of(&self, x: usize) -> Option<&[usize]> {
        self.maps.as_ref().map(|m| m[x].as_slice())
    }

    /// Index of the element denoting `images` (0-based images of 0..n).
    pub fn element_of_map(&self, images: &[usize]) -> Option<usize> {
        self.maps.as_ref()?.iter().position(|m| m == images)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|a| (a + 1..self.size).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// The absorbing element `z` (`z·a = a·z = z` for all `a`), if any.
    pub fn zero(&self) -> Option<usize> {
        (0..self.size).find(|&z| (0..self.size).all(|a| self.op(z, a) == z && self.op(a, z) == z))
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&e| self.op(e, e) == e).collect()
    }

    fn from_table(
        size: usize,
        table: Vec<u32>,
        kind: StructureKind,
        label: String,
        maps: Option<Vec<Vec<usize>>>,
        limits: &StructureLimits,
    ) -> Result<Self> {
        let identity = (0..size).find(|&e| (0..size).all(|a| table[e * size + a] as usize == a && table[a * size + e] as usize == a));
        let s = Self {
            size,
            table,
            identity,
            kind,
            label,
            maps,
        };
        if size <= limits.associativity_cap {
            s.check_associative()?;
        }
        if kind == StructureKind::Group {
            let e = s
                .identity
                .ok_or_else(|| Error::InvalidArgument(format!("{} has no identity", s.label)))?;
            for a in 0..size {
                if !(0..size).any(|b| s.op(a, b) == e && s.op(b, a) == e) {
                    return Err(Error::InvalidArgument(format!("{}: element {a} has no inverse", s.label)));
                }
            }
        }
        Ok(s)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    if self.op(ab, c) != self.op(a, self.op(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    /// Closure of `gens` under the operation.
    pub fn closure(&self, gens: &ElementSet) -> ElementSet {
        let mut set = gens.clone();
        let mut frontier: Vec<usize> = gens.to_vec();
        while let Some(x) = frontier.pop() {
            let members = set.to_vec();
            for y in members {
                for z in [self.op(x, y), self.op(y, x)] {
                    if set.insert(z) {
                        frontier.push(z);
                    }
                }
            }
        }
        set
    }

    pub fn is_closed(&self, s: &ElementSet) -> bool {
        s.iter().all(|a| s.iter().all(|b| s.contains(self.op(a, b))))
    }

    /// If `s` is a group under the induced operation, its identity.
    pub fn group_identity_of(&self, s: &ElementSet) -> Option<usize> {
        if s.is_empty() || !self.is_closed(s) {
            return None;
        }
        let e = s.iter().find(|&e| s.iter().all(|a| self.op(e, a) == a && self.op(a, e) == a))?;
        s.iter()
            .all(|a| s.iter().any(|b| self.op(a, b) == e && self.op(b, a) == e))
            .then_some(e)
    }

    /// The maximal subgroup `H_e` with identity the idempotent `e`.
    pub fn maximal_subgroup(&self, e: usize) -> ElementSet {
        let n = self.size;
        let local: Vec<usize> = (0..n).filter(|&x| self.op(e, x) == x && self.op(x, e) == x).collect();
        ElementSet::from_elements(
            n,
            local
                .iter()
                .copied()
                .filter(|&x| local.iter().any(|&y| self.op(x, y) == e && self.op(y, x) == e)),
        )
    }

    /// All subgroups contained in `h`, a group with identity `e`.
    fn subgroups_within(&self, h: &ElementSet, e: usize, cap: usize) -> Result<Vec<ElementSet>> {
        let start = ElementSet::singleton(self.size, e);
        let mut seen: HashSet<ElementSet> = HashSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            for g in h.iter().filter(|&g| !k.contains(g)) {
                let mut gens = k.clone();
                gens.insert(g);
                let next = self.closure(&gens);
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(Error::capacity("subgroup family", seen.len() as u128 + 1, cap as u128));
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<ElementSet> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<CayleyStructure> {
    build_group_with(spec, &StructureLimits::default())
}

pub fn build_group_with(spec: &GroupSpec, limits: &StructureLimits) -> Result<CayleyStructure> {
    let n = match *spec {
        GroupSpec::Cyclic(n) | GroupSpec::Symmetric(n) | GroupSpec::Dihedral(n) => n,
    };
    if n < 1 {
        return Err(Error::InvalidArgument(format!("{spec}: n must be at least 1")));
    }
    let size = match *spec {
        GroupSpec::Cyclic(n) => Some(n),
        GroupSpec::Symmetric(n) => (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k)),
        GroupSpec::Dihedral(n) => n.checked_mul(2),
    };
    let size = size.filter(|&s| s <= limits.max_size).ok_or_else(|| {
        Error::capacity(format!("group {spec}"), size.map_or(u128::MAX, |s| s as u128), limits.max_size as u128)
    })?;
    let label = spec.to_string();
    match *spec {
        GroupSpec::Cyclic(n) => {
            let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
            CayleyStructure::from_table(size, table, StructureKind::Group, label, None, limits)
        }
        GroupSpec::Symmetric(n) => {
            let perms = lexicographic_permutations(n);
            let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
            let mut table = Vec::with_capacity(size * size);
            for p in &perms {
                for q in &perms {
                    let pq: Vec<usize> = (0..n).map(|i| p[q[i]]).collect();
                    table.push(index[pq.as_slice()] as u32);
                }
            }
            CayleyStructure::from_table(size, table, StructureKind::Group, label, Some(perms), limits)
        }
        GroupSpec::Dihedral(n) => {
            // element k + n*f denotes r^k s^f, with s r s = r^{-1}
            let mut table = Vec::with_capacity(size * size);
            for x in 0..size {
                let (a, e) = (x % n, x / n);
                for y in 0..size {
                    let (b, f) = (y % n, y / n);
                    let rot = if e == 0 { (a + b) % n } else { (a + n - b) % n };
                    table.push((rot + n * ((e + f) % 2)) as u32);
                }
            }
            CayleyStructure::from_table(size, table, StructureKind::Group, label, None, limits)
        }
    }
}

pub fn build_semigroup(spec: &SemigroupSpec) -> Result<CayleyStructure> {
    build_semigroup_with(spec, &StructureLimits::default())
}

pub fn build_semigroup_with(spec: &SemigroupSpec, limits: &StructureLimits) -> Result<CayleyStructure> {
    let label = spec.to_string();
    match spec {
        SemigroupSpec::SymmetricSemigroup(n) => {
            let n = *n;
            if n < 1 {
                return Err(Error::InvalidArgument("S(n) needs n >= 1".into()));
            }
            let size = (n as u32)
                .checked_pow(n as u32)
                .map(|s| s as usize)
                .filter(|&s| s <= limits.max_size)
                .ok_or_else(|| Error::capacity(format!("semigroup {label}"), (n as u128).saturating_pow(n as u32), limits.max_size as u128))?;
            // little-endian mixed radix: code = sum f(i) n^i
            let maps: Vec<Vec<usize>> = (0..size)
                .map(|mut c| {
                    (0..n)
                        .map(|_| {
                            let d = c % n;
                            c /= n;
                            d
                        })
                        .collect()
                })
                .collect();
            let encode = |m: &[usize]| m.iter().rev().fold(0usize, |acc, &d| acc * n + d);
            let mut table = Vec::with_capacity(size * size);
            for f in &maps {
                for g in &maps {
                    let fg: Vec<usize> = (0..n).map(|i| f[g[i]]).collect();
                    table.push(encode(&fg) as u32);
                }
            }
            CayleyStructure::from_table(size, table, StructureKind::Semigroup, label, Some(maps), limits)
        }
        SemigroupSpec::ZnMultiplicative(n) => {
            let n = *n;
            if n < 1 {
                return Err(Error::InvalidArgument("Zn* needs n >= 1".into()));
            }
            if n > limits.max_size {
                return Err(Error::capacity(format!("semigroup {label}"), n as u128, limits.max_size as u128));
            }
            let table = (0..n * n).map(|i| ((i / n) * (i % n) % n) as u32).collect();
            CayleyStructure::from_table(n, table, StructureKind::Semigroup, label, None, limits)
        }
        SemigroupSpec::Explicit(rows) => {
            let size = rows.len();
            if size == 0 {
                return Err(Error::InvalidArgument("empty semigroup table".into()));
            }
            if size > limits.max_size {
                return Err(Error::capacity("explicit semigroup", size as u128, limits.max_size as u128));
            }
            let mut table = Vec::with_capacity(size * size);
            for (i, row) in rows.iter().enumerate() {
                if row.len() != size {
                    return Err(Error::InvalidArgument(format!("row {i} has {} entries, expected {size}", row.len())));
                }
                for &v in row {
                    if v >= size {
                        return Err(Error::InvalidArgument(format!("entry {v} out of range in row {i}")));
                    }
                    table.push(v as u32);
                }
            }
            CayleyStructure::from_table(size, table, StructureKind::Semigroup, label, None, limits)
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn lexicographic_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// A subset of a structure that is a group under the induced operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSubset {
    pub members: Vec<usize>,
    pub identity: usize,
    #[serde(skip)]
    pub set: ElementSet,
}

#[derive(Debug, Clone, Serialize)]
pub struct SSemigroupVerdict {
    pub is_s_semigroup: bool,
    pub witness: Option<GroupSubset>,
}

/// Every proper subset of size at least `min_group_size` that is a group
/// under the induced operation, in canonical order.
pub fn group_subsets(s: &CayleyStructure, min_group_size: usize, limits: &StructureLimits) -> Result<Vec<GroupSubset>> {
    let full = ElementSet::full(s.size());
    let mut found = Vec::new();
    for g in subgroups(s, limits)? {
        if g.len() >= min_group_size && g != full {
            let identity = s.group_identity_of(&g).expect("subgroup family member must be a group");
            found.push(GroupSubset {
                members: g.to_vec(),
                identity,
                set: g,
            });
        }
    }
    Ok(found)
}

/// Decides whether `s` is an S-semigroup: a semigroup with a proper subset
/// of at least `min_group_size` elements that is a group.
///
/// The reported witness prefers group subsets whose identity is not the
/// semigroup's own identity, then smaller subsets, then canonical order.
pub fn is_s_semigroup(s: &CayleyStructure, min_group_size: usize) -> Result<SSemigroupVerdict> {
    is_s_semigroup_with(s, min_group_size, &StructureLimits::default())
}

pub fn is_s_semigroup_with(s: &CayleyStructure, min_group_size: usize, limits: &StructureLimits) -> Result<SSemigroupVerdict> {
    let mut candidates = group_subsets(s, min_group_size, limits)?;
    candidates.sort_by(|a, b| {
        let own = |g: &GroupSubset| Some(g.identity) == s.identity();
        own(a)
            .cmp(&own(b))
            .then(a.members.len().cmp(&b.members.len()))
            .then(a.set.cmp(&b.set))
    });
    let witness = candidates.into_iter().next();
    Ok(SSemigroupVerdict {
        is_s_semigroup: witness.is_some(),
        witness,
    })
}

/// S-normal subgroups: proper group subsets `X` (of at least
/// `min_group_size` elements) such that for every `a`, either `aX ⊆ X` and
/// `Xa ⊆ X`, or `aX = Xa = {0}` for the absorbing element `0`.
///
/// Groups have no S-normal subgroups by convention.
pub fn s_normal_subgroups(s: &CayleyStructure, min_group_size: usize) -> Result<Vec<GroupSubset>> {
    s_normal_subgroups_with(s, min_group_size, &StructureLimits::default())
}

pub fn s_normal_subgroups_with(s: &CayleyStructure, min_group_size: usize, limits: &StructureLimits) -> Result<Vec<GroupSubset>> {
    if s.kind() == StructureKind::Group {
        return Ok(Vec::new());
    }
    let zero = s.zero();
    Ok(group_subsets(s, min_group_size, limits)?
        .into_iter()
        .filter(|g| is_s_normal(s, &g.set, zero))
        .collect())
}

fn is_s_normal(s: &CayleyStructure, x: &ElementSet, zero: Option<usize>) -> bool {
    (0..s.size()).all(|a| {
        let absorbs = x.iter().all(|m| x.contains(s.op(a, m)) && x.contains(s.op(m, a)));
        let kills = zero.is_some_and(|z| x.iter().all(|m| s.op(a, m) == z && s.op(m, a) == z));
        absorbs || kills
    })
}

/// Every subgroup of `s`. For semigroups these are the subgroups of the
/// maximal subgroups `H_e`, one per idempotent `e`; singletons `{e}` are
/// included.
pub fn subgroups(s: &CayleyStructure, limits: &StructureLimits) -> Result<Vec<ElementSet>> {
    let mut all = Vec::new();
    for e in s.idempotents() {
        let h = s.maximal_subgroup(e);
        all.extend(s.subgroups_within(&h, e, limits.family_cap)?);
        if all.len() > limits.family_cap {
            return Err(Error::capacity("subgroup family", all.len() as u128, limits.family_cap as u128));
        }
    }
    all.sort();
    all.dedup();
    Ok(all)
}

/// Every nonempty subset closed under the operation.
pub fn subsemigroups(s: &CayleyStructure, limits: &StructureLimits) -> Result<Vec<ElementSet>> {
    let n = s.size();
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut queue = VecDeque::new();
    for x in 0..n {
        let c = s.closure(&ElementSet::singleton(n, x));
        if seen.insert(c.clone()) {
            queue.push_back(c);
        }
    }
    while let Some(k) = queue.pop_front() {
        for g in (0..n).filter(|&g| !k.contains(g)) {
            let mut gens = k.clone();
            gens.insert(g);
            let next = s.closure(&gens);
            if !seen.contains(&next) {
                if seen.len() >= limits.family_cap {
                    return Err(Error::capacity("subsemigroup family", seen.len() as u128 + 1, limits.family_cap as u128));
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<ElementSet> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct SubstructureFamilies {
    pub subgroups: Vec<ElementSet>,
    pub subsemigroups: Vec<ElementSet>,
}

pub fn subgroups_and_subsemigroups(s: &CayleyStructure, limits: &StructureLimits) -> Result<SubstructureFamilies> {
    Ok(SubstructureFamilies {
        subgroups: subgroups(s, limits)?,
        subsemigroups: subsemigroups(s, limits)?,
    })
}
