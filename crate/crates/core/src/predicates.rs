//! Ring-level classifications: basic flags, S-ring levels, commutativity
//! flavours, element-law ring classes and their localized (S-) versions,
//! chain and dispotent flags. Every verdict carries the evidence that
//! decided it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bitset::ElementSet;
use crate::elements::{classify_idempotents, classify_nilpotents, classify_zero_divisors};
use crate::error::{Error, Result};
use crate::ring::{self, Construction, Elem, Ring};
use crate::structure;
use crate::substructures::{Level, Mode, RingAnalysis, SOptions, Side, SubstructureVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// A precondition of the definition (e.g. "R is an S-ring") is absent.
    NotApplicable,
}

impl Verdict {
    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Holds => Some(true),
            Verdict::Fails => Some(false),
            Verdict::NotApplicable => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "true",
            Verdict::Fails => "false",
            Verdict::NotApplicable => "not_applicable",
        })
    }
}

// true / false / "not_applicable"
impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_bool() {
            Some(b) => s.serialize_bool(b),
            None => s.serialize_str("not_applicable"),
        }
    }
}

/// Subsets and elements backing a verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Evidence {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sets: Vec<ElementSet>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<Elem>,
}

impl Evidence {
    fn sets(sets: Vec<ElementSet>) -> Option<Self> {
        Some(Self { sets, elements: vec![] })
    }

    fn elements(elements: Vec<Elem>) -> Option<Self> {
        Some(Self { sets: vec![], elements })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredicateVerdict {
    pub id: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Evidence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Evidence>,
    /// Minimal exponent or degree reported by element-law predicates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u64>,
}

impl PredicateVerdict {
    fn new(id: impl Into<String>, verdict: Verdict) -> Self {
        Self {
            id: id.into(),
            verdict,
            mode: None,
            witness: None,
            counterexample: None,
            exponent: None,
        }
    }

    fn na(id: impl Into<String>) -> Self {
        Self::new(id, Verdict::NotApplicable)
    }

    fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = Some(mode);
        self
    }

    fn witness(mut self, w: Option<Evidence>) -> Self {
        self.witness = w;
        self
    }

    fn counter(mut self, c: Option<Evidence>) -> Self {
        self.counterexample = c;
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

// ------------------------------------------------------------- basic

fn noncommuting_pair(r: &Ring, s: &ElementSet) -> Option<(Elem, Elem)> {
    s.iter().find_map(|a| s.iter().filter(|&b| b > a).find(|&b| r.mul(a, b) != r.mul(b, a)).map(|b| (a, b)))
}

fn zero_divisor_pair(r: &Ring) -> Option<(Elem, Elem)> {
    let z = r.zero();
    r.elements()
        .filter(|&a| a != z)
        .find_map(|a| r.elements().find(|&b| b != z && r.mul(a, b) == z).map(|b| (a, b)))
}

pub fn commutative(r: &Ring) -> Result<PredicateVerdict> {
    r.require_enumerable("commutativity")?;
    let pair = noncommuting_pair(r, &r.full_set());
    Ok(PredicateVerdict::new("commutative", Verdict::from_bool(pair.is_none())).counter(pair.and_then(|(a, b)| Evidence::elements(vec![a, b]))))
}

/// Finite rings with 1 ≠ 0 and no zero divisors are division rings; fields
/// additionally commute.
fn division_like(r: &Ring, id: &str, need_commutative: bool) -> Result<PredicateVerdict> {
    r.require_enumerable(id)?;
    if r.one().is_none() || r.cardinality() < 2 {
        return Ok(PredicateVerdict::new(id, Verdict::Fails));
    }
    if need_commutative {
        if let Some((a, b)) = noncommuting_pair(r, &r.full_set()) {
            return Ok(PredicateVerdict::new(id, Verdict::Fails).counter(Evidence::elements(vec![a, b])));
        }
    }
    let pair = zero_divisor_pair(r);
    Ok(PredicateVerdict::new(id, Verdict::from_bool(pair.is_none())).counter(pair.and_then(|(a, b)| Evidence::elements(vec![a, b]))))
}

pub fn field(r: &Ring) -> Result<PredicateVerdict> {
    division_like(r, "field", true)
}

pub fn integral_domain(r: &Ring) -> Result<PredicateVerdict> {
    division_like(r, "integral_domain", true)
}

pub fn division_ring(r: &Ring) -> Result<PredicateVerdict> {
    division_like(r, "division_ring", false)
}

#[derive(Debug, Clone, Serialize)]
pub struct BasicCensus {
    pub commutative: PredicateVerdict,
    pub field: PredicateVerdict,
    pub integral_domain: PredicateVerdict,
    pub division_ring: PredicateVerdict,
    pub boolean: PredicateVerdict,
}

pub fn basic_census(r: &Ring) -> Result<BasicCensus> {
    Ok(BasicCensus {
        commutative: commutative(r)?,
        field: field(r)?,
        integral_domain: integral_domain(r)?,
        division_ring: division_ring(r)?,
        boolean: boolean(r)?,
    })
}

pub fn boolean(r: &Ring) -> Result<PredicateVerdict> {
    r.require_enumerable("boolean")?;
    let bad = r.elements().find(|&x| r.mul(x, x) != x);
    Ok(PredicateVerdict::new("boolean", Verdict::from_bool(bad.is_none())).counter(bad.and_then(|x| Evidence::elements(vec![x]))))
}

// ------------------------------------------------------------ S-rings

pub fn s_ring(a: &RingAnalysis, level: Level) -> Result<PredicateVerdict> {
    let id = match level {
        Level::I => "s_ring_i",
        Level::II => "s_ring_ii",
    };
    let cert = a.s_ring_certificate(level)?;
    Ok(PredicateVerdict::new(id, Verdict::from_bool(cert.is_some())).witness(cert.and_then(|c| Evidence::sets(vec![c.set]))))
}

fn nontrivial_s_subrings(a: &RingAnalysis, level: Level, mode: Mode) -> Result<Vec<SubstructureVerdict>> {
    a.s_subrings(SOptions {
        level,
        mode,
        include_trivial: false,
    })
}

/// Standard: some proper domain/division subset commutes. Strong: every
/// S-subring II commutes.
pub fn s_commutative_ii(a: &RingAnalysis, mode: Mode) -> Result<[PredicateVerdict; 2]> {
    let r = a.ring();
    if a.s_ring_certificate(Level::II)?.is_none() {
        return Ok([PredicateVerdict::na("s_commutative_ii"), PredicateVerdict::na("strong_s_commutative_ii").with_mode(mode)]);
    }
    let full = r.full_set();
    let certs = a.domain_subsets()?;
    let comm = certs.iter().find(|c| c.set != full && noncommuting_pair(r, &c.set).is_none());
    let standard = PredicateVerdict::new("s_commutative_ii", Verdict::from_bool(comm.is_some())).witness(comm.and_then(|c| Evidence::sets(vec![c.set.clone()])));
    let subs = nontrivial_s_subrings(a, Level::II, mode)?;
    let bad = subs.iter().find_map(|v| noncommuting_pair(r, &v.set).map(|p| (v.set.clone(), p)));
    let strong = PredicateVerdict::new("strong_s_commutative_ii", Verdict::from_bool(bad.is_none()))
        .with_mode(mode)
        .counter(bad.map(|(s, (x, y))| Evidence {
            sets: vec![s],
            elements: vec![x, y],
        }));
    Ok([standard, strong])
}

// -------------------------------------------------------- element laws

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    /// `x^p = x` and `px = 0`.
    PRing(u64),
    /// `x^(2^n) = x` and `2x = 0`.
    ERing,
    /// `x^n(x) = x` with `n(x) > 1`.
    JRing,
    WeaklyBoolean,
    /// `a^n b = a b^n` for one uniform `n ≥ 2`.
    PreJRing,
    ZeroSquare,
}

impl Law {
    pub fn name(self) -> String {
        match self {
            Law::PRing(p) => format!("p_ring({p})"),
            Law::ERing => "e_ring".into(),
            Law::JRing => "j_ring".into(),
            Law::WeaklyBoolean => "weakly_boolean".into(),
            Law::PreJRing => "pre_j_ring".into(),
            Law::ZeroSquare => "zero_square".into(),
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Law {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace('-', "_");
        if let Some(p) = t.strip_prefix("p_ring(").and_then(|u| u.strip_suffix(')')) {
            let p: u64 = p.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad prime in '{s}'")))?;
            if p < 2 {
                return Err(Error::InvalidArgument(format!("p_ring needs p >= 2, got {p}")));
            }
            return Ok(Law::PRing(p));
        }
        match t.as_str() {
            "e_ring" => Ok(Law::ERing),
            "j_ring" => Ok(Law::JRing),
            "weakly_boolean" => Ok(Law::WeaklyBoolean),
            "pre_j_ring" => Ok(Law::PreJRing),
            "zero_square" => Ok(Law::ZeroSquare),
            _ => Err(Error::InvalidArgument(format!("unknown law '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub holds: bool,
    /// Element (or pair, for pre-J) violating the law.
    pub counterexample: Vec<Elem>,
    /// Minimal uniform exponent (degree for E-rings).
    pub exponent: Option<u64>,
    /// Least exponent per element, for J/weakly Boolean and E laws.
    pub per_element: BTreeMap<Elem, u64>,
}

impl LawCheck {
    fn fail(counterexample: Vec<Elem>) -> Self {
        Self {
            holds: false,
            counterexample,
            exponent: None,
            per_element: BTreeMap::new(),
        }
    }
}

fn checked_lcm(a: u64, b: u64) -> Option<u64> {
    (a / ring::gcd(a, b)).checked_mul(b)
}

/// Evaluates `law` on the elements of `s` (normally a subring).
pub fn law_on(r: &Ring, s: &ElementSet, law: Law) -> LawCheck {
    let z = r.zero();
    let bound = r.cardinality() as u64 + 1;
    match law {
        Law::PRing(p) => match s.iter().find(|&x| r.pow(x, p) != x || r.times(p, x) != z) {
            Some(x) => LawCheck::fail(vec![x]),
            None => LawCheck {
                holds: true,
                counterexample: vec![],
                exponent: Some(p),
                per_element: BTreeMap::new(),
            },
        },
        Law::ZeroSquare => match s.iter().find(|&x| r.mul(x, x) != z) {
            Some(x) => LawCheck::fail(vec![x]),
            None => LawCheck {
                holds: true,
                counterexample: vec![],
                exponent: None,
                per_element: BTreeMap::new(),
            },
        },
        Law::ERing => {
            let mut per = BTreeMap::new();
            let mut degree = Some(1u64);
            for x in s.iter() {
                if r.times(2, x) != z {
                    return LawCheck::fail(vec![x]);
                }
                // squaring orbit of x
                let mut y = x;
                let found = (1..=bound).find(|_| {
                    y = r.mul(y, y);
                    y == x
                });
                let Some(n) = found else { return LawCheck::fail(vec![x]) };
                per.insert(x, n);
                degree = degree.and_then(|d| checked_lcm(d, n));
            }
            LawCheck {
                holds: true,
                counterexample: vec![],
                exponent: degree,
                per_element: per,
            }
        }
        Law::JRing | Law::WeaklyBoolean => {
            let mut per = BTreeMap::new();
            // x^n = x exactly for n ≡ 1 mod (m(x) − 1), so a uniform
            // exponent always exists: 1 + lcm(m(x) − 1)
            let mut step = Some(1u64);
            for x in s.iter() {
                let mut p = x;
                let found = (2..=bound + 1).find(|_| {
                    p = r.mul(p, x);
                    p == x
                });
                let Some(m) = found else { return LawCheck::fail(vec![x]) };
                per.insert(x, m);
                step = step.and_then(|d| checked_lcm(d, m - 1));
            }
            LawCheck {
                holds: true,
                counterexample: vec![],
                exponent: step.and_then(|d| d.checked_add(1)),
                per_element: per,
            }
        }
        Law::PreJRing => pre_j(r, s),
    }
}

/// Powers `a^k` are eventually periodic; beyond the largest preperiod `T`
/// the pattern repeats with period `L = lcm` of the periods, so testing
/// `n ∈ [2, T + L + 1]` is exhaustive.
fn pre_j(r: &Ring, s: &ElementSet) -> LawCheck {
    let members = s.to_vec();
    let mut tail = 0u64;
    let mut period = Some(1u64);
    for &a in &members {
        let mut seen: BTreeMap<Elem, u64> = BTreeMap::new();
        let mut p = a;
        let mut k = 1u64;
        while let std::collections::btree_map::Entry::Vacant(e) = seen.entry(p) {
            e.insert(k);
            p = r.mul(p, a);
            k += 1;
        }
        let start = seen[&p];
        tail = tail.max(start);
        period = period.and_then(|l| checked_lcm(l, k - start));
    }
    const MAX_N: u64 = 1 << 16;
    let limit = period.and_then(|l| l.checked_add(tail + 1)).unwrap_or(MAX_N).min(MAX_N);
    let mut cur: Vec<Elem> = members.iter().map(|&a| r.mul(a, a)).collect();
    let mut first_failure = None;
    for n in 2..=limit.max(2) {
        let bad = (0..members.len()).find_map(|i| {
            (0..members.len())
                .find(|&j| r.mul(cur[i], members[j]) != r.mul(members[i], cur[j]))
                .map(|j| (members[i], members[j]))
        });
        match bad {
            None => {
                return LawCheck {
                    holds: true,
                    counterexample: vec![],
                    exponent: Some(n),
                    per_element: BTreeMap::new(),
                }
            }
            Some((a, b)) => {
                first_failure.get_or_insert(vec![a, b]);
            }
        }
        for (c, &a) in cur.iter_mut().zip(&members) {
            *c = r.mul(*c, a);
        }
    }
    LawCheck::fail(first_failure.unwrap_or_default())
}

fn law_verdict(id: String, check: LawCheck, witness: Option<Evidence>) -> PredicateVerdict {
    let mut v = PredicateVerdict::new(id, Verdict::from_bool(check.holds));
    if check.holds {
        v.exponent = check.exponent;
        v.witness = witness;
    } else {
        v.counterexample = Evidence::elements(check.counterexample);
    }
    v
}

pub fn elementwise_law(r: &Ring, law: Law) -> Result<PredicateVerdict> {
    r.require_enumerable("element law")?;
    Ok(law_verdict(law.name(), law_on(r, &r.full_set(), law), None))
}

/// Law check on an explicit subset: holds iff the subset is a subring and
/// satisfies the law.
pub fn subset_law(a: &RingAnalysis, s: &ElementSet, law: Law) -> Result<PredicateVerdict> {
    let r = a.ring();
    r.require_enumerable("element law")?;
    let id = format!("subset_{}", law.name());
    if !ring::is_additive_subgroup(r, s) || !a.is_multiplicatively_closed(s) {
        let escape = s
            .iter()
            .find_map(|x| s.iter().find(|&y| !s.contains(r.add(x, y)) || !s.contains(r.mul(x, y))).map(|y| vec![x, y]))
            .unwrap_or_default();
        return Ok(PredicateVerdict::new(id, Verdict::Fails).counter(Evidence::elements(escape)));
    }
    Ok(law_verdict(id, law_on(r, s, law), Evidence::sets(vec![s.clone()])))
}

/// Where the law-satisfying subring `B` must sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    /// `R` is an S-ring and `B` is any subring of `R`.
    SubringOfSRing,
    /// `B` is a subring of some S-subring `A`.
    SubringOfSSubring,
    /// `B = A` is itself an S-subring.
    SSubring,
}

impl Placement {
    /// The placement each localized class uses.
    pub fn for_law(law: Law) -> Self {
        match law {
            Law::PRing(_) => Placement::SubringOfSRing,
            Law::JRing | Law::WeaklyBoolean => Placement::SSubring,
            Law::ERing | Law::PreJRing | Law::ZeroSquare => Placement::SubringOfSSubring,
        }
    }
}

/// Subrings `B` of size at least 2 are considered; `{0}` satisfies every
/// law vacuously. S-subrings are the nontrivial ones of level I.
pub fn s_localized_law(a: &RingAnalysis, law: Law, placement: Placement, mode: Mode) -> Result<PredicateVerdict> {
    let r = a.ring();
    let id = format!("s_{}", law.name());
    let subrings = a.subrings()?;
    match placement {
        Placement::SubringOfSRing => {
            if a.s_ring_certificate(Level::I)?.is_none() {
                return Ok(PredicateVerdict::na(id));
            }
            for b in subrings.iter().filter(|b| b.len() >= 2) {
                let c = law_on(r, b, law);
                if c.holds {
                    return Ok(law_verdict(id, c, Evidence::sets(vec![b.clone()])));
                }
            }
            Ok(PredicateVerdict::new(id, Verdict::Fails))
        }
        Placement::SubringOfSSubring | Placement::SSubring => {
            let outer = nontrivial_s_subrings(a, Level::I, mode)?;
            if outer.is_empty() {
                return Ok(PredicateVerdict::na(id).with_mode(mode));
            }
            for v in &outer {
                let inner: Vec<&ElementSet> = match placement {
                    Placement::SSubring => vec![&v.set],
                    _ => subrings.iter().filter(|b| b.len() >= 2 && b.is_subset(&v.set)).collect(),
                };
                for b in inner {
                    let c = law_on(r, b, law);
                    if c.holds {
                        return Ok(law_verdict(id, c, Evidence::sets(vec![v.set.clone(), b.clone()])).with_mode(mode));
                    }
                }
            }
            Ok(PredicateVerdict::new(id, Verdict::Fails).with_mode(mode))
        }
    }
}

// ------------------------------------------------------- domain flags

#[derive(Debug, Clone, Serialize)]
pub struct DomainFlags {
    pub s_integral_domain: PredicateVerdict,
    pub s_division_ring: PredicateVerdict,
    pub s_semiprime: PredicateVerdict,
    pub reduced: PredicateVerdict,
    pub s_reduced: PredicateVerdict,
}

pub fn s_domain_flags(a: &RingAnalysis, mode: Mode) -> Result<DomainFlags> {
    let r = a.ring();
    let commutative = r.is_commutative();
    let zd = classify_zero_divisors(r)?;
    let s_pair = zd.s_pair_witnesses.first().map(|w| {
        let mut e = w.subject.clone();
        e.extend([w.role("a").unwrap_or_default(), w.role("b").unwrap_or_default()]);
        e
    });
    let no_s_pairs = Verdict::from_bool(s_pair.is_none());
    let s_integral_domain = if commutative {
        PredicateVerdict::new("s_integral_domain", no_s_pairs).counter(s_pair.clone().and_then(Evidence::elements))
    } else {
        PredicateVerdict::na("s_integral_domain")
    };
    let s_division_ring = if commutative {
        PredicateVerdict::na("s_division_ring")
    } else {
        PredicateVerdict::new("s_division_ring", no_s_pairs).counter(s_pair.and_then(Evidence::elements))
    };

    let ideals = a.s_ideals(SOptions {
        level: Level::I,
        mode,
        include_trivial: false,
    })?;
    let square_zero = ideals
        .iter()
        .find(|v| v.set.iter().all(|x| v.set.iter().all(|y| r.mul(x, y) == r.zero())));
    let s_semiprime = PredicateVerdict::new("s_semiprime", Verdict::from_bool(square_zero.is_none()))
        .with_mode(mode)
        .counter(square_zero.and_then(|v| Evidence::sets(vec![v.set.clone()])));

    let nil = classify_nilpotents(r)?;
    let reduced = PredicateVerdict::new("reduced", Verdict::from_bool(nil.nilpotents.is_empty()))
        .counter(nil.nilpotents.first().and_then(|&x| Evidence::elements(vec![x])));
    let s_nil = nil.s_nilpotents.first().map(|&x| {
        let w = &nil.s_nilpotent_witnesses[&x];
        vec![x, w.role("y").unwrap_or_default()]
    });
    let s_reduced = PredicateVerdict::new("s_reduced", Verdict::from_bool(s_nil.is_none())).counter(s_nil.and_then(Evidence::elements));
    Ok(DomainFlags {
        s_integral_domain,
        s_division_ring,
        s_semiprime,
        reduced,
        s_reduced,
    })
}

// -------------------------------------------------------- chain flags

fn incomparable(family: &[ElementSet]) -> Option<(ElementSet, ElementSet)> {
    family.iter().enumerate().find_map(|(i, x)| {
        family[i + 1..]
            .iter()
            .find(|y| !x.is_subset(y) && !y.is_subset(x))
            .map(|y| (x.clone(), (*y).clone()))
    })
}

fn chain_verdict(id: &str, family: &[ElementSet]) -> PredicateVerdict {
    let bad = incomparable(family);
    PredicateVerdict::new(id, Verdict::from_bool(bad.is_none())).counter(bad.and_then(|(x, y)| Evidence::sets(vec![x, y])))
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainFlags {
    pub chain_ring: PredicateVerdict,
    pub s_chain_ring: PredicateVerdict,
    pub s_weakly_chain_ring: PredicateVerdict,
}

pub fn chain_ring_flags(a: &RingAnalysis, mode: Mode) -> Result<ChainFlags> {
    let r = a.ring();
    let ideals = a.ideals(Side::TwoSided)?;
    let chain_ring = chain_verdict("chain_ring", &ideals);
    let opts = SOptions {
        level: Level::I,
        mode,
        include_trivial: true,
    };
    let s_ideals: Vec<ElementSet> = a.s_ideals(opts)?.into_iter().map(|v| v.set).collect();
    let s_chain_ring = chain_verdict("s_chain_ring", &s_ideals).with_mode(mode);

    let outer = nontrivial_s_subrings(a, Level::I, mode)?;
    let mut s_weakly = if outer.is_empty() {
        PredicateVerdict::na("s_weakly_chain_ring")
    } else {
        PredicateVerdict::new("s_weakly_chain_ring", Verdict::Fails)
    };
    for v in &outer {
        let (sub, back) = r.restrict(&v.set, "S-subring")?;
        let inner = RingAnalysis::new(sub);
        let fam: Vec<ElementSet> = inner.s_ideals(opts)?.into_iter().map(|w| w.set).collect();
        if incomparable(&fam).is_none() {
            let mapped: Vec<ElementSet> = fam
                .iter()
                .map(|s| ElementSet::from_elements(r.cardinality(), s.iter().map(|x| back[x])))
                .collect();
            let mut sets = vec![v.set.clone()];
            sets.extend(mapped);
            s_weakly = PredicateVerdict::new("s_weakly_chain_ring", Verdict::Holds).witness(Evidence::sets(sets));
            break;
        }
    }
    Ok(ChainFlags {
        chain_ring,
        s_chain_ring,
        s_weakly_chain_ring: s_weakly.with_mode(mode),
    })
}

// ---------------------------------------------------- dispotent flags

#[derive(Debug, Clone, Serialize)]
pub struct DispotentFlags {
    pub dispotent: PredicateVerdict,
    pub s_dispotent: PredicateVerdict,
}

/// S-idempotents are computed inside each S-subring, with the subring's own
/// identity (if any) as its `1`.
pub fn dispotent_flags(a: &RingAnalysis, mode: Mode) -> Result<DispotentFlags> {
    let r = a.ring();
    let idem = classify_idempotents(r)?.idempotents;
    let dispotent = if idem.len() == 2 {
        PredicateVerdict::new("dispotent", Verdict::Holds).witness(Evidence::elements(idem))
    } else {
        PredicateVerdict::new("dispotent", Verdict::Fails).counter(Evidence::elements(idem))
    };
    let mut s_dispotent = PredicateVerdict::new("s_dispotent", Verdict::Fails).with_mode(mode);
    for v in nontrivial_s_subrings(a, Level::I, mode)? {
        let (sub, back) = r.restrict(&v.set, "S-subring")?;
        let s_idem = classify_idempotents(&sub)?.s_idempotents;
        if s_idem.len() == 2 {
            s_dispotent = PredicateVerdict::new("s_dispotent", Verdict::Holds).with_mode(mode).witness(Some(Evidence {
                sets: vec![v.set],
                elements: s_idem.iter().map(|&x| back[x]).collect(),
            }));
            break;
        }
    }
    Ok(DispotentFlags { dispotent, s_dispotent })
}

// ---------------------------------------------- group / semigroup rings

#[derive(Debug, Clone, Serialize)]
pub struct ConvolutionFlags {
    pub s_group_ring: PredicateVerdict,
    pub s_semigroup_ring: PredicateVerdict,
}

/// S-group ring: the coefficient ring is an S-ring I. S-semigroup ring:
/// the semigroup has a proper subgroup of at least two elements (witness
/// elements are indices into the semigroup).
pub fn s_group_semigroup_ring_flags(r: &Ring) -> Result<ConvolutionFlags> {
    let mut out = ConvolutionFlags {
        s_group_ring: PredicateVerdict::na("s_group_ring"),
        s_semigroup_ring: PredicateVerdict::na("s_semigroup_ring"),
    };
    match r.construction() {
        Construction::GroupRing => {
            let coeff = r.coefficient_ring().expect("group ring has coefficients").clone();
            let mut v = s_ring(&RingAnalysis::new(coeff), Level::I)?;
            v.id = "s_group_ring".into();
            out.s_group_ring = v;
        }
        Construction::SemigroupRing => {
            let s = r.structure().expect("semigroup ring has a semigroup");
            let verdict = structure::is_s_semigroup_with(s, 2, &ring::structure_limits(&r.limits()))?;
            out.s_semigroup_ring = PredicateVerdict::new("s_semigroup_ring", Verdict::from_bool(verdict.is_s_semigroup))
                .witness(verdict.witness.and_then(|g| Evidence::elements(g.members)));
        }
        _ => {}
    }
    Ok(out)
}

// -------------------------------------------------------------- battery

pub fn s_simple(a: &RingAnalysis, level: Level, mode: Mode) -> Result<PredicateVerdict> {
    let id = if level == Level::I { "s_simple" } else { "s_simple_ii" };
    Ok(match a.s_simplicity(level, mode)? {
        None => PredicateVerdict::na(id),
        Some(b) => PredicateVerdict::new(id, Verdict::from_bool(b)),
    }
    .with_mode(mode))
}

/// Fixed predicate ids of the battery; `p_ring(p)` / `s_p_ring(p)` are
/// added for each prime `p` dividing the characteristic.
pub const PREDICATE_IDS: &[&str] = &[
    "commutative",
    "field",
    "integral_domain",
    "division_ring",
    "boolean",
    "s_ring_i",
    "s_ring_ii",
    "s_commutative_ii",
    "strong_s_commutative_ii",
    "e_ring",
    "j_ring",
    "weakly_boolean",
    "pre_j_ring",
    "zero_square",
    "s_e_ring",
    "s_j_ring",
    "s_weakly_boolean",
    "s_pre_j_ring",
    "s_zero_square",
    "s_integral_domain",
    "s_division_ring",
    "s_semiprime",
    "reduced",
    "s_reduced",
    "chain_ring",
    "s_chain_ring",
    "s_weakly_chain_ring",
    "dispotent",
    "s_dispotent",
    "s_group_ring",
    "s_semigroup_ring",
    "s_simple",
    "s_simple_ii",
];

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All ids the battery evaluates on this ring, in report order.
pub fn predicate_ids(r: &Ring) -> Result<Vec<String>> {
    let mut ids: Vec<String> = PREDICATE_IDS.iter().map(|s| s.to_string()).collect();
    for p in prime_factors(ring::characteristic(r)?) {
        ids.push(format!("p_ring({p})"));
        ids.push(format!("s_p_ring({p})"));
    }
    Ok(ids)
}

/// Evaluates one predicate by id.
pub fn evaluate(a: &RingAnalysis, id: &str, mode: Mode) -> Result<PredicateVerdict> {
    let r = a.ring();
    let t = id.trim().to_ascii_lowercase().replace('-', "_");
    // decided from the coefficient ring and the structure alone
    match t.as_str() {
        "s_group_ring" => return Ok(s_group_semigroup_ring_flags(r)?.s_group_ring),
        "s_semigroup_ring" => return Ok(s_group_semigroup_ring_flags(r)?.s_semigroup_ring),
        _ => {}
    }
    r.require_enumerable("predicates")?;
    if let Some(rest) = t.strip_prefix("s_") {
        if let Ok(law) = rest.parse::<Law>() {
            return s_localized_law(a, law, Placement::for_law(law), mode);
        }
    }
    if let Ok(law) = t.parse::<Law>() {
        return elementwise_law(r, law);
    }
    Ok(match t.as_str() {
        "commutative" => commutative(r)?,
        "field" => field(r)?,
        "integral_domain" => integral_domain(r)?,
        "division_ring" => division_ring(r)?,
        "boolean" => boolean(r)?,
        "s_ring_i" => s_ring(a, Level::I)?,
        "s_ring_ii" => s_ring(a, Level::II)?,
        "s_commutative_ii" => s_commutative_ii(a, mode)?[0].clone(),
        "strong_s_commutative_ii" => s_commutative_ii(a, mode)?[1].clone(),
        "s_integral_domain" => s_domain_flags(a, mode)?.s_integral_domain,
        "s_division_ring" => s_domain_flags(a, mode)?.s_division_ring,
        "s_semiprime" => s_domain_flags(a, mode)?.s_semiprime,
        "reduced" => s_domain_flags(a, mode)?.reduced,
        "s_reduced" => s_domain_flags(a, mode)?.s_reduced,
        "chain_ring" => chain_ring_flags(a, mode)?.chain_ring,
        "s_chain_ring" => chain_ring_flags(a, mode)?.s_chain_ring,
        "s_weakly_chain_ring" => chain_ring_flags(a, mode)?.s_weakly_chain_ring,
        "dispotent" => dispotent_flags(a, mode)?.dispotent,
        "s_dispotent" => dispotent_flags(a, mode)?.s_dispotent,
        "s_simple" => s_simple(a, Level::I, mode)?,
        "s_simple_ii" => s_simple(a, Level::II, mode)?,
        _ => return Err(Error::InvalidArgument(format!("unknown predicate '{id}'"))),
    })
}

/// Evaluates the given ids (all battery ids when `only` is `None`) in
/// parallel; output follows the order of the ids.
pub fn battery(a: &RingAnalysis, mode: Mode, only: Option<&[String]>) -> Result<Vec<PredicateVerdict>> {
    let ids = match only {
        Some(ids) => ids.to_vec(),
        None => predicate_ids(a.ring())?,
    };
    // warm the shared caches before fanning out
    if !ids.is_empty() {
        a.subrings()?;
        a.field_subsets()?;
    }
    ids.par_iter().map(|id| evaluate(a, id, mode)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn an(spec: &str) -> RingAnalysis {
        RingAnalysis::new(Ring::construct(&spec.parse().unwrap()).unwrap())
    }

    fn set(r: &Ring, v: &[usize]) -> ElementSet {
        ElementSet::from_elements(r.cardinality(), v.iter().copied())
    }

    #[test]
    fn basic_flags() {
        let z7 = Ring::zn(7).unwrap();
        assert!(field(&z7).unwrap().holds());
        let z4 = Ring::zn(4).unwrap();
        let d = integral_domain(&z4).unwrap();
        assert!(!d.holds());
        let c = d.counterexample.unwrap().elements;
        assert_eq!(z4.mul(c[0], c[1]), 0);
        assert!(commutative(&z4).unwrap().holds());
        let gr = an("GR(Z2, S3)");
        let c = commutative(gr.ring()).unwrap();
        assert!(!c.holds());
        let e = c.counterexample.unwrap().elements;
        assert_ne!(gr.ring().mul(e[0], e[1]), gr.ring().mul(e[1], e[0]));
        assert!(!division_ring(gr.ring()).unwrap().holds());
    }

    #[test]
    fn s_ring_levels() {
        let z12 = an("Z12");
        let v = s_ring(&z12, Level::I).unwrap();
        assert!(v.holds());
        assert_eq!(v.witness.unwrap().sets[0].to_vec(), vec![0, 4, 8]);
        for p in [2, 3, 5, 7, 11] {
            let a = an(&format!("Z{p}"));
            assert!(!s_ring(&a, Level::I).unwrap().holds());
            assert!(!s_ring(&a, Level::II).unwrap().holds());
        }
        assert!(!s_ring(&an("GR(Z4, C2)"), Level::I).unwrap().holds());
    }

    #[test]
    fn s_commutative() {
        let [std, strong] = s_commutative_ii(&an("GR(Z2, S3)"), Mode::Strict).unwrap();
        assert!(std.holds());
        assert!(strong.verdict.as_bool().is_some());
        let [a, b] = s_commutative_ii(&an("Z12"), Mode::Strict).unwrap();
        assert!(a.holds() && b.holds());
        let [a, _] = s_commutative_ii(&an("Z5"), Mode::Strict).unwrap();
        assert_eq!(a.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn laws() {
        for p in [2u64, 3, 5, 7] {
            let r = Ring::zn(p as usize).unwrap();
            let v = elementwise_law(&r, Law::WeaklyBoolean).unwrap();
            assert!(v.holds());
            assert_eq!(v.exponent, Some(p));
            assert!(elementwise_law(&r, Law::PRing(p)).unwrap().holds());
        }
        let z12 = an("Z12");
        let r = z12.ring();
        assert!(law_on(r, &set(r, &[0, 4, 8]), Law::PRing(3)).holds);
        assert!(law_on(r, &set(r, &[0, 6]), Law::ZeroSquare).holds);
        assert!(!elementwise_law(r, Law::JRing).unwrap().holds());
        // Boolean rings are E-rings of degree 1
        let b = an("Z2 x Z2");
        assert_eq!(elementwise_law(b.ring(), Law::ERing).unwrap().exponent, Some(1));
        // GF(4)-free check: Z2 x Z2 x Z2 is still degree 1
        assert!(elementwise_law(an("Z2 x Z2 x Z2").ring(), Law::PreJRing).unwrap().holds());
    }

    #[test]
    fn pre_j_matches_brute_force() {
        for n in 2..=20usize {
            let r = Ring::zn(n).unwrap();
            let got = law_on(&r, &r.full_set(), Law::PreJRing);
            let brute = (2..=200u64).find(|&k| r.elements().all(|a| r.elements().all(|b| r.mul(r.pow(a, k), b) == r.mul(a, r.pow(b, k)))));
            assert_eq!(got.exponent, brute, "n={n}");
        }
    }

    #[test]
    fn localized() {
        let z12 = an("Z12");
        let r = z12.ring();
        let v = s_localized_law(&z12, Law::ZeroSquare, Placement::SubringOfSSubring, Mode::Strict).unwrap();
        assert!(v.holds());
        let w = v.witness.unwrap();
        assert!(w.sets[1].is_subset(&w.sets[0]));
        assert!(law_on(r, &w.sets[1], Law::ZeroSquare).holds);
        // the book's pair A = 2Z12, B = {0, 6} qualifies too
        let a = set(r, &[0, 2, 4, 6, 8, 10]);
        assert!(z12.s_certificate(&a, Level::I, Mode::Strict).unwrap().is_some());
        assert!(law_on(r, &set(r, &[0, 6]), Law::ZeroSquare).holds);
        assert!(s_localized_law(&z12, Law::PRing(3), Placement::SubringOfSRing, Mode::Strict).unwrap().holds());
        assert_eq!(s_localized_law(&an("Z7"), Law::PRing(7), Placement::SubringOfSRing, Mode::Strict).unwrap().verdict, Verdict::NotApplicable);
    }

    #[test]
    fn domain_flags() {
        let f = s_domain_flags(&an("Z4"), Mode::Strict).unwrap();
        assert!(f.s_integral_domain.holds());
        assert!(!f.reduced.holds());
        let f = s_domain_flags(&an("Z9"), Mode::Strict).unwrap();
        assert!(f.s_reduced.holds());
        assert!(!f.reduced.holds());
        let f = s_domain_flags(&an("Z7"), Mode::Strict).unwrap();
        assert!(f.s_integral_domain.holds() && f.s_semiprime.holds() && f.reduced.holds() && f.s_reduced.holds());
        assert_eq!(f.s_division_ring.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn chains_and_dispotent() {
        assert!(chain_ring_flags(&an("Z16"), Mode::Strict).unwrap().chain_ring.holds());
        let c = chain_ring_flags(&an("Z12"), Mode::Strict).unwrap().chain_ring;
        assert!(!c.holds());
        let sets = c.counterexample.unwrap().sets;
        assert!(!sets[0].is_subset(&sets[1]) && !sets[1].is_subset(&sets[0]));
        assert!(!chain_ring_flags(&an("Z3 x Z12 x Z7"), Mode::Strict).unwrap().s_chain_ring.holds());
        assert!(dispotent_flags(&an("Z18"), Mode::Strict).unwrap().dispotent.holds());
        let d = dispotent_flags(&an("Z12"), Mode::Strict).unwrap().dispotent;
        assert_eq!(d.witness.unwrap().elements, vec![4, 9]);
        assert!(!dispotent_flags(&an("Z7"), Mode::Strict).unwrap().dispotent.holds());
    }

    #[test]
    fn convolution_flags() {
        // 2^27 elements: only the semigroup is inspected
        let f = s_group_semigroup_ring_flags(&Ring::construct(&"SR(Z2, S(3))".parse().unwrap()).unwrap()).unwrap();
        assert!(f.s_semigroup_ring.holds());
        assert!(s_group_semigroup_ring_flags(an("GR(Z12, C2)").ring()).unwrap().s_group_ring.holds());
        assert!(!s_group_semigroup_ring_flags(an("GR(Z2, C3)").ring()).unwrap().s_group_ring.holds());
        assert_eq!(s_group_semigroup_ring_flags(an("Z6").ring()).unwrap().s_group_ring.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn battery_runs_and_is_ordered() {
        let a = an("Z12");
        let v = battery(&a, Mode::Strict, None).unwrap();
        let ids: Vec<_> = v.iter().map(|p| p.id.clone()).collect();
        assert_eq!(ids, predicate_ids(a.ring()).unwrap());
        assert!(battery(&a, Mode::Strict, Some(&[])).unwrap().is_empty());
        assert!(evaluate(&a, "nonsense", Mode::Strict).is_err());
    }
}
