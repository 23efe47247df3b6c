//! Special-element census: units, zero divisors, idempotents, nilpotents,
//! semi-idempotents, super idempotents, SS/SSS elements, semiunits, clean
//! and regular elements, each with its Smarandache refinement and the
//! witnesses that certify it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::Result;
use crate::ring::{Elem, Ring};
use crate::substructures::{CertificateSubset, Level, Mode, RingAnalysis, Side};

/// Role-tagged auxiliary elements (and exponents) certifying a verdict,
/// plus the disjunct of the defining condition that held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub subject: Vec<Elem>,
    pub roles: BTreeMap<&'static str, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<&'static str>,
}

impl Witness {
    fn new(subject: Vec<Elem>, roles: &[(&'static str, u64)], clause: Option<&'static str>) -> Self {
        Self {
            subject,
            roles: roles.iter().copied().collect(),
            clause,
        }
    }

    pub fn role(&self, name: &str) -> Option<Elem> {
        self.roles.get(name).map(|&v| v as Elem)
    }
}

fn par_filter_map<T, F>(r: &Ring, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Elem) -> Option<T> + Sync + Send,
{
    r.elements().into_par_iter().filter_map(f).collect()
}

// ---------------------------------------------------------------- units

#[derive(Debug, Clone, Serialize)]
pub struct UnitCensus {
    pub units: Vec<Elem>,
    /// Two-sided inverse of every unit.
    pub inverses: BTreeMap<Elem, Elem>,
    pub s_units: Vec<Elem>,
    pub s_unit_witnesses: BTreeMap<Elem, Witness>,
}

/// Inverse of `x`, if `x` is a unit. In a finite ring a one-sided inverse
/// is two-sided.
pub fn inverse(r: &Ring, x: Elem) -> Option<Elem> {
    let one = r.one()?;
    r.elements().find(|&y| r.mul(x, y) == one)
}

/// Checks the S-unit condition for `x` with inverse `y` and auxiliaries
/// `a`, `b`; returns the clause that holds.
pub fn s_unit_clause(r: &Ring, x: Elem, y: Elem, a: Elem, b: Elem) -> Option<&'static str> {
    let one = r.one()?;
    if x == one || [x, y, one].contains(&a) || [x, y, one].contains(&b) || r.mul(a, b) != one || r.mul(x, y) != one {
        return None;
    }
    if r.mul(x, a) == y {
        Some("xa = y")
    } else if r.mul(a, x) == y {
        Some("ax = y")
    } else if r.mul(y, b) == x {
        Some("yb = x")
    } else if r.mul(b, y) == x {
        Some("by = x")
    } else {
        None
    }
}

pub fn classify_units(r: &Ring) -> Result<UnitCensus> {
    r.require_enumerable("unit census")?;
    let one = r.require_one()?;
    let inverses: BTreeMap<Elem, Elem> = par_filter_map(r, |x| inverse(r, x).map(|y| (x, y))).into_iter().collect();
    let units: Vec<Elem> = inverses.keys().copied().collect();
    let s: Vec<(Elem, Witness)> = units
        .par_iter()
        .filter(|&&x| x != one)
        .filter_map(|&x| {
            let y = inverses[&x];
            units.iter().find_map(|&a| {
                let b = inverses[&a];
                s_unit_clause(r, x, y, a, b).map(|c| (x, Witness::new(vec![x], &[("y", y as u64), ("a", a as u64), ("b", b as u64)], Some(c))))
            })
        })
        .collect();
    Ok(UnitCensus {
        units,
        inverses,
        s_units: s.iter().map(|(x, _)| *x).collect(),
        s_unit_witnesses: s.into_iter().collect(),
    })
}

// --------------------------------------------------------- zero divisors

#[derive(Debug, Clone, Serialize)]
pub struct ZeroDivisorCensus {
    pub zero_divisors: Vec<Elem>,
    /// Ordered pairs `(x, y)`; both orientations are listed when both hold.
    pub s_pairs: Vec<(Elem, Elem)>,
    pub s_pair_witnesses: Vec<Witness>,
}

pub fn s_zero_divisor_holds(r: &Ring, x: Elem, y: Elem, a: Elem, b: Elem) -> bool {
    let z = r.zero();
    let excluded = [z, x, y];
    x != z
        && y != z
        && r.mul(x, y) == z
        && !excluded.contains(&a)
        && !excluded.contains(&b)
        && (r.mul(x, a) == z || r.mul(a, x) == z)
        && (r.mul(y, b) == z || r.mul(b, y) == z)
        && (r.mul(a, b) != z || r.mul(b, a) != z)
}

pub fn classify_zero_divisors(r: &Ring) -> Result<ZeroDivisorCensus> {
    r.require_enumerable("zero-divisor census")?;
    let n = r.cardinality();
    let z = r.zero();
    // two-sided annihilator sets: a with xa = 0 or ax = 0
    let ann: Vec<ElementSet> = (0..n)
        .into_par_iter()
        .map(|x| ElementSet::from_elements(n, r.elements().filter(|&a| r.mul(x, a) == z || r.mul(a, x) == z)))
        .collect();
    let zero_divisors: Vec<Elem> = (0..n).filter(|&x| x != z && ann[x].iter().any(|a| a != z)).collect();
    let pairs: Vec<Vec<(Elem, Elem, Witness)>> = (0..n)
        .into_par_iter()
        .filter(|&x| x != z)
        .map(|x| {
            let mut out = Vec::new();
            for y in r.elements().filter(|&y| y != z && r.mul(x, y) == z) {
                let found = ann[x].iter().filter(|&a| a != z && a != x && a != y).find_map(|a| {
                    ann[y]
                        .iter()
                        .find(|&b| b != z && b != x && b != y && (r.mul(a, b) != z || r.mul(b, a) != z))
                        .map(|b| (a, b))
                });
                if let Some((a, b)) = found {
                    out.push((x, y, Witness::new(vec![x, y], &[("a", a as u64), ("b", b as u64)], None)));
                }
            }
            out
        })
        .collect();
    let (s_pairs, s_pair_witnesses) = pairs.into_iter().flatten().map(|(x, y, w)| ((x, y), w)).unzip();
    Ok(ZeroDivisorCensus {
        zero_divisors,
        s_pairs,
        s_pair_witnesses,
    })
}

// ----------------------------------------------------------- idempotents

#[derive(Debug, Clone, Serialize)]
pub struct IdempotentCensus {
    /// Idempotents other than 0 and 1.
    pub idempotents: Vec<Elem>,
    pub s_idempotents: Vec<Elem>,
    pub s_idempotent_witnesses: BTreeMap<Elem, Witness>,
    /// All co-idempotents of every idempotent that has one.
    pub co_idempotents: BTreeMap<Elem, Vec<Elem>>,
}

fn excluded_trivial(r: &Ring, x: Elem, a: Elem) -> bool {
    a == x || a == r.zero() || Some(a) == r.one()
}

/// The S-idempotent clause satisfied by the square root `a` of `x`.
pub fn s_idempotent_clause(r: &Ring, x: Elem, a: Elem) -> Option<&'static str> {
    if excluded_trivial(r, x, a) || r.mul(a, a) != x || r.mul(x, x) != x {
        return None;
    }
    if r.mul(x, a) == a {
        Some("xa = a")
    } else if r.mul(a, x) == a {
        Some("ax = a")
    } else if r.mul(a, x) == x {
        Some("ax = x")
    } else if r.mul(x, a) == x {
        Some("xa = x")
    } else {
        None
    }
}

pub fn is_co_idempotent(r: &Ring, x: Elem, y: Elem) -> bool {
    !excluded_trivial(r, x, y) && r.mul(y, y) == x && (r.mul(y, x) == x || r.mul(x, y) == y)
}

pub fn classify_idempotents(r: &Ring) -> Result<IdempotentCensus> {
    r.require_enumerable("idempotent census")?;
    let idempotents: Vec<Elem> = r
        .elements()
        .filter(|&x| x != r.zero() && Some(x) != r.one() && r.mul(x, x) == x)
        .collect();
    let mut s_idempotents = Vec::new();
    let mut witnesses = BTreeMap::new();
    let mut co_idempotents = BTreeMap::new();
    for &x in &idempotents {
        let roots: Vec<Elem> = r.elements().filter(|&a| r.mul(a, a) == x).collect();
        if let Some((a, c)) = roots.iter().find_map(|&a| s_idempotent_clause(r, x, a).map(|c| (a, c))) {
            s_idempotents.push(x);
            witnesses.insert(x, Witness::new(vec![x], &[("a", a as u64)], Some(c)));
        }
        let co: Vec<Elem> = roots.into_iter().filter(|&y| is_co_idempotent(r, x, y)).collect();
        if !co.is_empty() {
            co_idempotents.insert(x, co);
        }
    }
    Ok(IdempotentCensus {
        idempotents,
        s_idempotents,
        s_idempotent_witnesses: witnesses,
        co_idempotents,
    })
}

// ------------------------------------------------------------ nilpotents

#[derive(Debug, Clone, Serialize)]
pub struct NilpotentCensus {
    pub nilpotents: Vec<Elem>,
    /// Least `k` with `x^k = 0`.
    pub index: BTreeMap<Elem, u64>,
    pub s_nilpotents: Vec<Elem>,
    pub s_nilpotent_witnesses: BTreeMap<Elem, Witness>,
}

/// Least `k >= 1` with `x^k = 0`, if any.
pub fn nilpotency_index(r: &Ring, x: Elem) -> Option<u64> {
    let mut p = x;
    let mut k = 1u64;
    let mut seen = ElementSet::empty(r.cardinality());
    while p != r.zero() {
        if !seen.insert(p) {
            return None;
        }
        p = r.mul(p, x);
        k += 1;
    }
    Some(k)
}

/// The exponents `r` for which `x^r ≠ 0` are the only ones that count: with
/// `x^r = 0` every nilpotent would qualify trivially.
pub fn s_nilpotent_clause(r: &Ring, x: Elem, y: Elem, exp: u64) -> Option<&'static str> {
    let z = r.zero();
    let k = nilpotency_index(r, x)?;
    if x == z || k < 2 || y == z || y == x || nilpotency_index(r, y).is_some() || exp == 0 || exp >= k {
        return None;
    }
    let p = r.pow(x, exp);
    if r.mul(p, y) == z {
        Some("x^r y = 0")
    } else if r.mul(y, p) == z {
        Some("y x^s = 0")
    } else {
        None
    }
}

pub fn classify_nilpotents(r: &Ring) -> Result<NilpotentCensus> {
    r.require_enumerable("nilpotent census")?;
    let z = r.zero();
    let index: BTreeMap<Elem, u64> = r
        .elements()
        .filter(|&x| x != z)
        .filter_map(|x| nilpotency_index(r, x).map(|k| (x, k)))
        .collect();
    let nilpotents: Vec<Elem> = index.keys().copied().collect();
    let mut s_nilpotents = Vec::new();
    let mut witnesses = BTreeMap::new();
    for (&x, &k) in &index {
        let found = (1..k).find_map(|e| r.elements().find_map(|y| s_nilpotent_clause(r, x, y, e).map(|c| (y, e, c))));
        if let Some((y, e, c)) = found {
            s_nilpotents.push(x);
            witnesses.insert(x, Witness::new(vec![x], &[("y", y as u64), ("r", e)], Some(c)));
        }
    }
    Ok(NilpotentCensus {
        nilpotents,
        index,
        s_nilpotents,
        s_nilpotent_witnesses: witnesses,
    })
}

// ------------------------------------------------------ semi-idempotents

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SemiLevel {
    Plain,
    SLevel1,
    SLevel2,
}

#[derive(Debug, Clone, Serialize)]
pub struct SemiIdempotent {
    pub element: Elem,
    /// The two-sided ideal generated by `α² − α`.
    pub ideal: ElementSet,
    pub ideal_is_ring: bool,
    /// The field/domain certificate making the ideal an S-ideal (S levels).
    pub certificate: Option<CertificateSubset>,
}

/// Semi-idempotents at the given level. 0 is counted at the plain level;
/// S levels require `α ≠ 0` and that `⟨α² − α⟩` is a genuine S-ideal of
/// that level in the given mode.
pub fn semi_idempotents(a: &RingAnalysis, level: SemiLevel, mode: Mode) -> Result<Vec<SemiIdempotent>> {
    let r = a.ring();
    r.require_enumerable("semi-idempotents")?;
    let full = r.full_set();
    let mut out = Vec::new();
    for x in r.elements() {
        let d = r.sub(r.mul(x, x), x);
        let ideal = a.ideal_generated(&ElementSet::singleton(r.cardinality(), d), Side::TwoSided)?;
        let ideal_is_ring = ideal == full;
        let plain = x == r.zero() || !ideal.contains(x) || ideal_is_ring;
        if !plain {
            continue;
        }
        let certificate = match level {
            SemiLevel::Plain => None,
            SemiLevel::SLevel1 | SemiLevel::SLevel2 => {
                if x == r.zero() {
                    continue;
                }
                let lv = if level == SemiLevel::SLevel1 { Level::I } else { Level::II };
                match a.is_s_ideal(&ideal, lv, mode)? {
                    Some(c) => Some(c),
                    None => continue,
                }
            }
        };
        out.push(SemiIdempotent {
            element: x,
            ideal,
            ideal_is_ring,
            certificate,
        });
    }
    Ok(out)
}

// ----------------------------------------------------- super idempotents

#[derive(Debug, Clone, Serialize)]
pub struct SuperIdempotent {
    pub element: Elem,
    /// `α² − α = 0`, i.e. α is itself idempotent.
    pub trivial: bool,
    /// `α² − α` is an S-idempotent.
    pub s_super: bool,
}

pub fn super_idempotents(r: &Ring) -> Result<Vec<SuperIdempotent>> {
    r.require_enumerable("super idempotents")?;
    let idem = classify_idempotents(r)?;
    Ok(r
        .elements()
        .filter(|&x| x != r.zero())
        .filter_map(|x| {
            let d = r.sub(r.mul(x, x), x);
            (r.mul(d, d) == d).then(|| SuperIdempotent {
                element: x,
                trivial: d == r.zero(),
                s_super: idem.s_idempotents.contains(&d),
            })
        })
        .collect())
}

/// `α⁴ − 2α³ + α`.
pub fn super_idempotent_polynomial(r: &Ring, x: Elem) -> Elem {
    let x3 = r.pow(x, 3);
    r.add(r.sub(r.pow(x, 4), r.add(x3, x3)), x)
}

// ------------------------------------------------------------- SS / SSS

#[derive(Debug, Clone, Serialize)]
pub struct SsCensus {
    pub ss_elements: Vec<Elem>,
    pub sss_pairs: Vec<(Elem, Elem)>,
}

/// SS elements exclude 0 and `2 = 1 + 1` (only 0 when the ring has no 1).
pub fn ss_elements(r: &Ring) -> Result<SsCensus> {
    r.require_enumerable("SS elements")?;
    let two = r.two();
    let ss_elements = r
        .elements()
        .filter(|&a| a != r.zero() && Some(a) != two && r.mul(a, a) == r.add(a, a))
        .collect();
    let sss_pairs = par_filter_map(r, |x| {
        let v: Vec<(Elem, Elem)> = r.elements().filter(|&y| y != x && r.mul(x, y) == r.add(x, y)).map(|y| (x, y)).collect();
        (!v.is_empty()).then_some(v)
    })
    .into_iter()
    .flatten()
    .collect();
    Ok(SsCensus { ss_elements, sss_pairs })
}

// ------------------------------------------------------------- semiunits

#[derive(Debug, Clone, Serialize)]
pub struct SemiunitCensus {
    pub semiunits: Vec<Elem>,
    /// The `y ≠ 0` with `(x + 1)(y + 1) = 1`.
    pub witnesses: BTreeMap<Elem, Elem>,
    pub s_semiunits: Vec<Elem>,
}

/// `x` is a semiunit when some `y ≠ 0` has `(x + 1)(y + 1) = 1`.
pub fn semiunits(r: &Ring) -> Result<SemiunitCensus> {
    r.require_enumerable("semiunits")?;
    let one = r.require_one()?;
    let units = classify_units(r)?;
    let s_units: std::collections::BTreeSet<Elem> = units.s_units.iter().copied().collect();
    let mut semiunits = Vec::new();
    let mut witnesses = BTreeMap::new();
    let mut s_semiunits = Vec::new();
    for x in r.elements() {
        let x1 = r.add(x, one);
        let Some(&inv) = units.inverses.get(&x1) else { continue };
        let y = r.sub(inv, one);
        if y == r.zero() {
            continue;
        }
        semiunits.push(x);
        witnesses.insert(x, y);
        if s_units.contains(&x1) && s_units.contains(&inv) {
            s_semiunits.push(x);
        }
    }
    Ok(SemiunitCensus {
        semiunits,
        witnesses,
        s_semiunits,
    })
}

// --------------------------------------------------------- clean, regular

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdempotentPolicy {
    /// Idempotents other than 0 and 1.
    #[default]
    Nontrivial,
    Any,
}

pub fn clean_elements(r: &Ring, policy: IdempotentPolicy) -> Result<Vec<Elem>> {
    r.require_enumerable("clean elements")?;
    let one = r.require_one()?;
    let units = classify_units(r)?.units;
    let idempotents: Vec<Elem> = r
        .elements()
        .filter(|&e| r.mul(e, e) == e && (policy == IdempotentPolicy::Any || (e != r.zero() && e != one)))
        .collect();
    let mut clean = ElementSet::empty(r.cardinality());
    for &e in &idempotents {
        for &u in &units {
            clean.insert(r.add(e, u));
        }
    }
    Ok(clean.to_vec())
}

/// Elements that are not one-sided zero divisors against any nonzero `r`.
pub fn regular_elements(r: &Ring) -> Result<Vec<Elem>> {
    r.require_enumerable("regular elements")?;
    let z = r.zero();
    Ok(par_filter_map(r, |s| {
        r.elements()
            .filter(|&t| t != z)
            .all(|t| r.mul(s, t) != z && r.mul(t, s) != z)
            .then_some(s)
    }))
}

// ---------------------------------------------------------------- census

#[derive(Debug, Clone, Serialize)]
pub struct ElementCensus {
    pub units: Option<UnitCensus>,
    pub zero_divisors: ZeroDivisorCensus,
    pub idempotents: IdempotentCensus,
    pub nilpotents: NilpotentCensus,
    pub semi_idempotents: Vec<Elem>,
    pub s_semi_idempotents_1: Vec<Elem>,
    pub s_semi_idempotents_2: Vec<Elem>,
    pub super_idempotents: Vec<SuperIdempotent>,
    pub ss: SsCensus,
    pub semiunits: Option<SemiunitCensus>,
    pub clean_elements: Option<Vec<Elem>>,
    pub regular_elements: Vec<Elem>,
}

/// Runs every classifier. Parts that need a multiplicative identity are
/// `None` for rings without one.
pub fn census(a: &RingAnalysis) -> Result<ElementCensus> {
    let r = a.ring();
    r.require_enumerable("element census")?;
    let has_one = r.one().is_some();
    let elems = |v: Vec<SemiIdempotent>| v.into_iter().map(|s| s.element).collect::<Vec<_>>();
    Ok(ElementCensus {
        units: if has_one { Some(classify_units(r)?) } else { None },
        zero_divisors: classify_zero_divisors(r)?,
        idempotents: classify_idempotents(r)?,
        nilpotents: classify_nilpotents(r)?,
        semi_idempotents: elems(semi_idempotents(a, SemiLevel::Plain, Mode::Strict)?),
        s_semi_idempotents_1: elems(semi_idempotents(a, SemiLevel::SLevel1, Mode::Strict)?),
        s_semi_idempotents_2: elems(semi_idempotents(a, SemiLevel::SLevel2, Mode::Strict)?),
        super_idempotents: super_idempotents(r)?,
        ss: ss_elements(r)?,
        semiunits: if has_one { Some(semiunits(r)?) } else { None },
        clean_elements: if has_one {
            Some(clean_elements(r, IdempotentPolicy::Nontrivial)?)
        } else {
            None
        },
        regular_elements: regular_elements(r)?,
    })
}
