//! Subrings, ideals, field and domain subsets, and their Smarandache
//! refinements.
//!
//! Families are enumerated by closure growth: starting from `{0}`, each
//! member `H` is extended by every element `g ∉ H` that is least in its
//! coset `g + H`, and the closure of `H ∪ {g}` joins the family. Results
//! are sorted canonically (bitset integer order), so they do not depend on
//! thread scheduling.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::ring::{self, Elem, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// How "a proper subset B of A is a field" is read.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// The certificate must be a proper subset of the substructure.
    #[default]
    Strict,
    /// The certificate may equal the substructure, but not the whole ring.
    Lax,
}

/// Level I certificates are fields; level II certificates are integral
/// domains or division rings.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub enum Level {
    #[default]
    I,
    II,
}

macro_rules! parse_enum {
    ($ty:ty, $what:literal, $($text:literal => $val:expr),+) => {
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s.to_ascii_lowercase().as_str() {
                    $($text => Ok($val),)+
                    other => Err(Error::InvalidArgument(format!(concat!("unknown ", $what, " '{}'"), other))),
                }
            }
        }
    };
}

parse_enum!(Side, "side", "left" => Side::Left, "right" => Side::Right, "two-sided" => Side::TwoSided, "two_sided" => Side::TwoSided, "both" => Side::TwoSided);
parse_enum!(Mode, "mode", "strict" => Mode::Strict, "lax" => Mode::Lax);
parse_enum!(Level, "level", "i" => Level::I, "1" => Level::I, "ii" => Level::II, "2" => Level::II);

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::Lax => "lax",
        })
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::I => "I",
            Level::II => "II",
        })
    }
}

/// A field or domain subset together with its internal identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateSubset {
    pub set: ElementSet,
    pub identity: Elem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubstructureKind {
    SSubring,
    SIdeal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubstructureVerdict {
    pub set: ElementSet,
    pub kind: SubstructureKind,
    pub level: Level,
    pub mode: Mode,
    /// `{0}` or the whole ring, admitted by convention.
    pub trivial: bool,
    pub certificate: Option<CertificateSubset>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SOptions {
    pub level: Level,
    pub mode: Mode,
    pub include_trivial: bool,
}

impl Default for SOptions {
    fn default() -> Self {
        Self {
            level: Level::I,
            mode: Mode::Strict,
            include_trivial: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealAnnotation {
    pub set: ElementSet,
    pub maximal: bool,
    pub minimal: bool,
    pub prime: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SExtremal {
    pub set: ElementSet,
    pub s_maximal: bool,
    pub s_minimal: bool,
}

type Family = Result<Arc<Vec<ElementSet>>>;

/// Lazily computed substructure data for one ring. All families are cached
/// after the first request.
pub struct RingAnalysis {
    ring: Ring,
    generators: OnceLock<Vec<Elem>>,
    additive: OnceLock<Family>,
    subrings: OnceLock<Family>,
    ideals: [OnceLock<Family>; 3],
    fields: OnceLock<Result<Arc<Vec<CertificateSubset>>>>,
    domains: OnceLock<Result<Arc<Vec<CertificateSubset>>>>,
}

impl RingAnalysis {
    pub fn new(ring: Ring) -> Self {
        Self {
            ring,
            generators: OnceLock::new(),
            additive: OnceLock::new(),
            subrings: OnceLock::new(),
            ideals: Default::default(),
            fields: OnceLock::new(),
            domains: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `H + Z·g` for an additive subgroup `H`.
    pub fn additive_closure(&self, h: &ElementSet, g: Elem) -> ElementSet {
        let r = &self.ring;
        let mut out = h.clone();
        let mut m = g;
        while !h.contains(m) {
            for x in h.iter() {
                out.insert(r.add(m, x));
            }
            m = r.add(m, g);
        }
        out
    }

    /// A generating set of `(R, +)`, chosen greedily in code order.
    pub fn additive_generators(&self) -> &[Elem] {
        self.generators.get_or_init(|| {
            let mut span = self.ring.zero_set();
            let mut gens = Vec::new();
            for x in self.ring.elements() {
                if !span.contains(x) {
                    span = self.additive_closure(&span, x);
                    gens.push(x);
                }
            }
            gens
        })
    }

    fn closure_family<F>(&self, what: &str, grow: F) -> Result<Vec<ElementSet>>
    where
        F: Fn(&ElementSet, Elem) -> ElementSet + Sync,
    {
        let r = &self.ring;
        r.require_enumerable(what)?;
        let cap = r.limits().family_cap;
        let start = grow(&ElementSet::empty(r.cardinality()), r.zero());
        let mut seen: HashSet<ElementSet> = HashSet::new();
        seen.insert(start.clone());
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            let children: Vec<ElementSet> = frontier
                .par_iter()
                .flat_map_iter(|h| {
                    r.elements()
                        .filter(|&g| !h.contains(g) && h.iter().all(|x| r.add(g, x) >= g))
                        .map(|g| grow(h, g))
                        .collect::<Vec<_>>()
                })
                .collect();
            frontier.clear();
            for c in children {
                if !seen.contains(&c) {
                    seen.insert(c.clone());
                    frontier.push(c);
                    if seen.len() > cap {
                        return Err(Error::capacity(format!("{what} of {}", r.label()), seen.len() as u128, cap as u128));
                    }
                }
            }
        }
        let mut out: Vec<ElementSet> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    pub fn additive_subgroups(&self) -> Result<Arc<Vec<ElementSet>>> {
        self.additive
            .get_or_init(|| {
                self.closure_family("additive subgroups", |h, g| {
                    if h.is_empty() {
                        self.ring.zero_set()
                    } else {
                        self.additive_closure(h, g)
                    }
                })
                .map(Arc::new)
            })
            .clone()
    }

    pub fn is_multiplicatively_closed(&self, s: &ElementSet) -> bool {
        s.iter().all(|a| s.iter().all(|b| s.contains(self.ring.mul(a, b))))
    }

    pub fn subrings(&self) -> Result<Arc<Vec<ElementSet>>> {
        self.subrings
            .get_or_init(|| {
                let groups = self.additive_subgroups()?;
                Ok(Arc::new(groups.par_iter().filter(|s| self.is_multiplicatively_closed(s)).cloned().collect()))
            })
            .clone()
    }

    /// Least ideal of the given side containing `gens`.
    pub fn ideal_generated(&self, gens: &ElementSet, side: Side) -> Result<ElementSet> {
        self.ring.require_enumerable("ideal generation")?;
        Ok(self.grow_ideal(&self.ring.zero_set(), gens.iter(), side))
    }

    /// Extends an ideal `base` of the given side by `new` elements.
    fn grow_ideal(&self, base: &ElementSet, new: impl Iterator<Item = Elem>, side: Side) -> ElementSet {
        let r = &self.ring;
        let ring_gens = self.additive_generators();
        let mut ideal = base.clone();
        let mut pending: Vec<Elem> = new.collect();
        while let Some(x) = pending.pop() {
            if ideal.contains(x) {
                continue;
            }
            ideal = self.additive_closure(&ideal, x);
            for &s in ring_gens {
                if side != Side::Right {
                    pending.push(r.mul(s, x));
                }
                if side != Side::Left {
                    pending.push(r.mul(x, s));
                }
            }
        }
        ideal
    }

    pub fn ideals(&self, side: Side) -> Result<Arc<Vec<ElementSet>>> {
        let slot = match side {
            Side::Left => &self.ideals[0],
            Side::Right => &self.ideals[1],
            Side::TwoSided => &self.ideals[2],
        };
        slot.get_or_init(|| {
            self.closure_family("ideals", |h, g| {
                if h.is_empty() {
                    self.ring.zero_set()
                } else {
                    self.grow_ideal(h, std::iter::once(g), side)
                }
            })
            .map(Arc::new)
        })
        .clone()
    }

    pub fn is_ideal(&self, s: &ElementSet, side: Side) -> bool {
        let r = &self.ring;
        ring::is_additive_subgroup(r, s)
            && s.iter().all(|a| {
                r.elements()
                    .all(|x| (side == Side::Right || s.contains(r.mul(x, a))) && (side == Side::Left || s.contains(r.mul(a, x))))
            })
    }

    /// Internal identity of a subring, if it has one.
    pub fn internal_identity(&self, s: &ElementSet) -> Option<Elem> {
        let r = &self.ring;
        s.iter().find(|&e| s.iter().all(|f| r.mul(e, f) == f && r.mul(f, e) == f))
    }

    /// Whether a subring is a field under the induced operations.
    pub fn field_identity(&self, s: &ElementSet) -> Option<Elem> {
        let r = &self.ring;
        if s.len() < 2 {
            return None;
        }
        let commutative = s.iter().all(|a| s.iter().all(|b| r.mul(a, b) == r.mul(b, a)));
        if !commutative {
            return None;
        }
        let e = self.internal_identity(s)?;
        let invertible = s.iter().filter(|&a| a != r.zero()).all(|a| s.iter().any(|b| r.mul(a, b) == e));
        invertible.then_some(e)
    }

    pub fn field_subsets(&self) -> Result<Arc<Vec<CertificateSubset>>> {
        self.fields
            .get_or_init(|| {
                let subrings = self.subrings()?;
                Ok(Arc::new(
                    subrings
                        .iter()
                        .filter_map(|s| {
                            self.field_identity(s).map(|identity| CertificateSubset {
                                set: s.clone(),
                                identity,
                            })
                        })
                        .collect(),
                ))
            })
            .clone()
    }

    /// Subrings with at least two elements and no zero divisors among their
    /// own members. Every such finite subring has an internal identity.
    pub fn domain_subsets(&self) -> Result<Arc<Vec<CertificateSubset>>> {
        self.domains
            .get_or_init(|| {
                let r = &self.ring;
                let subrings = self.subrings()?;
                Ok(Arc::new(
                    subrings
                        .iter()
                        .filter(|s| {
                            s.len() >= 2
                                && s.iter()
                                    .filter(|&a| a != r.zero())
                                    .all(|a| s.iter().filter(|&b| b != r.zero()).all(|b| r.mul(a, b) != r.zero()))
                        })
                        .map(|s| CertificateSubset {
                            set: s.clone(),
                            identity: self.internal_identity(s).expect("finite domain has an identity"),
                        })
                        .collect(),
                ))
            })
            .clone()
    }

    pub fn certificates(&self, level: Level) -> Result<Arc<Vec<CertificateSubset>>> {
        match level {
            Level::I => self.field_subsets(),
            Level::II => self.domain_subsets(),
        }
    }

    /// Least certificate of the given level inside `s` that the mode admits.
    pub fn s_certificate(&self, s: &ElementSet, level: Level, mode: Mode) -> Result<Option<CertificateSubset>> {
        let full = self.ring.full_set();
        Ok(self
            .certificates(level)?
            .iter()
            .find(|c| {
                c.set.is_subset(s)
                    && match mode {
                        Mode::Strict => c.set != *s,
                        Mode::Lax => c.set != full,
                    }
            })
            .cloned())
    }

    /// A proper field (level I) or domain (level II) subset of the ring.
    pub fn s_ring_certificate(&self, level: Level) -> Result<Option<CertificateSubset>> {
        let full = self.ring.full_set();
        Ok(self.certificates(level)?.iter().find(|c| c.set != full).cloned())
    }

    fn s_family(&self, kind: SubstructureKind, members: &[ElementSet], opts: SOptions) -> Result<Vec<SubstructureVerdict>> {
        let zero = self.ring.zero_set();
        let full = self.ring.full_set();
        let mut out = Vec::new();
        for s in members {
            let trivial = *s == zero || *s == full;
            if trivial {
                if opts.include_trivial {
                    out.push(SubstructureVerdict {
                        set: s.clone(),
                        kind,
                        level: opts.level,
                        mode: opts.mode,
                        trivial: true,
                        certificate: None,
                    });
                }
                continue;
            }
            if let Some(c) = self.s_certificate(s, opts.level, opts.mode)? {
                out.push(SubstructureVerdict {
                    set: s.clone(),
                    kind,
                    level: opts.level,
                    mode: opts.mode,
                    trivial: false,
                    certificate: Some(c),
                });
            }
        }
        Ok(out)
    }

    pub fn s_subrings(&self, opts: SOptions) -> Result<Vec<SubstructureVerdict>> {
        let subrings = self.subrings()?;
        self.s_family(SubstructureKind::SSubring, &subrings, opts)
    }

    pub fn s_ideals(&self, opts: SOptions) -> Result<Vec<SubstructureVerdict>> {
        let ideals = self.ideals(Side::TwoSided)?;
        self.s_family(SubstructureKind::SIdeal, &ideals, opts)
    }

    /// Whether an ideal is a genuine S-ideal (no trivial convention).
    pub fn is_s_ideal(&self, s: &ElementSet, level: Level, mode: Mode) -> Result<Option<CertificateSubset>> {
        if *s == self.ring.zero_set() {
            return Ok(None);
        }
        self.s_certificate(s, level, mode)
    }

    /// Additive subgroups `S` with `SB ⊆ S` (right), `BS ⊆ S` (left) or both,
    /// relative to the field subset `b`, which must be proper.
    pub fn s_pseudo_ideals(&self, b: &ElementSet, side: Side) -> Result<Vec<ElementSet>> {
        let r = &self.ring;
        if !self.field_subsets()?.iter().any(|f| f.set == *b) || *b == r.full_set() {
            return Err(Error::NotAFieldSubset);
        }
        let groups = self.additive_subgroups()?;
        Ok(groups
            .iter()
            .filter(|s| {
                s.iter().all(|x| {
                    b.iter()
                        .all(|y| (side == Side::Left || s.contains(r.mul(x, y))) && (side == Side::Right || s.contains(r.mul(y, x))))
                })
            })
            .cloned()
            .collect())
    }

    /// Maximal/minimal/prime flags for every proper ideal of the given side.
    pub fn ideal_annotations(&self, side: Side) -> Result<Vec<IdealAnnotation>> {
        let r = &self.ring;
        let ideals = self.ideals(side)?;
        let full = r.full_set();
        let zero = r.zero_set();
        Ok(ideals
            .iter()
            .filter(|i| **i != full)
            .map(|i| {
                let maximal = !ideals.iter().any(|j| i.is_proper_subset(j) && *j != full);
                let minimal = *i != zero && !ideals.iter().any(|j| j.is_proper_subset(i) && *j != zero);
                let prime = r.elements().all(|x| r.elements().all(|y| !i.contains(r.mul(x, y)) || i.contains(x) || i.contains(y)));
                IdealAnnotation {
                    set: i.clone(),
                    maximal,
                    minimal,
                    prime,
                }
            })
            .collect())
    }

    /// `{r : 1 − rx is a unit for all x}`.
    pub fn jacobson_radical(&self) -> Result<ElementSet> {
        let r = &self.ring;
        r.require_enumerable("Jacobson radical")?;
        let one = r.require_one()?;
        let units = unit_set(r, one);
        Ok(ElementSet::from_elements(
            r.cardinality(),
            r.elements().filter(|&a| r.elements().all(|x| units.contains(r.sub(one, r.mul(a, x))))),
        ))
    }

    /// Characteristics of all field (level I) or domain (level II) subsets.
    pub fn s_characteristic(&self, level: Level) -> Result<BTreeSet<u64>> {
        Ok(self.certificates(level)?.iter().map(|c| ring::additive_exponent(&self.ring, &c.set)).collect())
    }

    /// `None` when the ring is not an S-ring at this level; otherwise whether
    /// it has no nontrivial S-ideals.
    pub fn s_simplicity(&self, level: Level, mode: Mode) -> Result<Option<bool>> {
        if self.s_ring_certificate(level)?.is_none() {
            return Ok(None);
        }
        let opts = SOptions {
            level,
            mode,
            include_trivial: false,
        };
        Ok(Some(self.s_ideals(opts)?.is_empty()))
    }
}

/// S-maximal and S-minimal flags inside an S-family's own inclusion poset.
/// A member `M ∉ {{0}, R}` is S-maximal when no member lies strictly between
/// it and `R`, and S-minimal when no member lies strictly inside it. Trivial
/// members, when present, take part in the comparison.
pub fn s_maximal_minimal(r: &Ring, family: &[SubstructureVerdict]) -> Vec<SExtremal> {
    let full = r.full_set();
    let zero = r.zero_set();
    family
        .iter()
        .filter(|v| v.set != full && v.set != zero)
        .map(|v| SExtremal {
            set: v.set.clone(),
            s_maximal: !family.iter().any(|w| v.set.is_proper_subset(&w.set) && w.set != full),
            s_minimal: !family.iter().any(|w| w.set.is_proper_subset(&v.set)),
        })
        .collect()
}

pub(crate) fn unit_set(r: &Ring, one: Elem) -> ElementSet {
    ElementSet::from_elements(r.cardinality(), r.elements().filter(|&x| r.elements().any(|y| r.mul(x, y) == one)))
}
