//! Claim ledger: a line-oriented list of checkable statements about
//! concrete rings, each evaluated by brute force to CONFIRMED, REFUTED,
//! MODE-DEPENDENT or CAPACITY-SKIPPED.
//!
//! ```text
//! # comment
//! id: z105-idempotents
//! ring: Z105
//! kind: census
//! params: set=idempotents
//! expect: {15, 21, 36, 70, 85, 91}
//! locator: Ex 3.4.12
//! ```
//!
//! Keys: `id` (starts a record), `ring`, `kind`, `params` (`k=v; k=v`),
//! `expect`, `mode` (`strict`, `lax` or `any`), `for` (`n in 2..12` or
//! `p in primes 2..50`, substituted as `$n`, `$(n-1)`, `$(2*p)`), `status`
//! (the verdict the entry is annotated with, default CONFIRMED),
//! `must_pass` (default true) and `locator`.
//!
//! Expectations: `true`, `false`, `not_applicable`, an integer, `empty`,
//! `nonempty`, a literal `{…}`, `contains {…}`, `excludes {…}`,
//! `at-least N`, `sizes-within {…}`, `sizes-include {…}`, `sizes-exclude {…}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::audit::ring_axiom_audit;
use crate::bitset::ElementSet;
use crate::descriptor::{self, StructureSpec};
use crate::elements::{self, IdempotentPolicy, SemiLevel};
use crate::error::{Error, Result};
use crate::hyperring::{self, HyperOp};
use crate::lattice::{self, Identity, Shape};
use crate::notation::{self, split_top};
use crate::predicates::{self, Law, Verdict};
use crate::report::{self, FamilyKind};
use crate::ring::{self, Elem, Ring};
use crate::structure::{self, CayleyStructure, StructureLimits};
use crate::substructures::{s_maximal_minimal, Level, Mode, RingAnalysis, SOptions, Side};

pub const SCHEMA: &str = "finring-claims/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClaimStatus {
    Confirmed,
    Refuted,
    ModeDependent,
    CapacitySkipped,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Confirmed => "CONFIRMED",
            ClaimStatus::Refuted => "REFUTED",
            ClaimStatus::ModeDependent => "MODE-DEPENDENT",
            ClaimStatus::CapacitySkipped => "CAPACITY-SKIPPED",
        })
    }
}

impl Serialize for ClaimStatus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for ClaimStatus {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().replace('_', "-").as_str() {
            "CONFIRMED" => Ok(ClaimStatus::Confirmed),
            "REFUTED" => Ok(ClaimStatus::Refuted),
            "MODE-DEPENDENT" => Ok(ClaimStatus::ModeDependent),
            "CAPACITY-SKIPPED" => Ok(ClaimStatus::CapacitySkipped),
            other => Err(Error::InvalidArgument(format!("unknown status '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimMode {
    Only(Mode),
    /// Evaluated in both modes.
    Any,
}

#[derive(Debug, Clone)]
pub struct ClaimEntry {
    pub id: String,
    pub line: usize,
    pub ring: Option<String>,
    pub kind: String,
    pub params: BTreeMap<String, String>,
    pub expect: String,
    pub mode: ClaimMode,
    pub foreach: Option<(String, Vec<u64>)>,
    pub status: ClaimStatus,
    pub must_pass: bool,
    pub locator: String,
}

fn ledger_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Ledger { line, msg: msg.into() }
}

fn parse_for(text: &str, line: usize) -> Result<(String, Vec<u64>)> {
    let bad = || ledger_err(line, format!("bad 'for' clause '{text}'"));
    let (var, rest) = text.split_once(" in ").ok_or_else(bad)?;
    let var = var.trim();
    if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphabetic()) {
        return Err(bad());
    }
    let rest = rest.trim();
    let (primes, range) = match rest.strip_prefix("primes") {
        Some(r) => (true, r.trim()),
        None => (false, rest),
    };
    let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    let is_prime = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
    let values: Vec<u64> = (lo..=hi).filter(|&n| !primes || is_prime(n)).collect();
    if values.is_empty() {
        return Err(bad());
    }
    Ok((var.to_string(), values))
}

pub fn parse_ledger(text: &str) -> Result<Vec<ClaimEntry>> {
    let mut out: Vec<ClaimEntry> = Vec::new();
    let mut seen = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (key, value) = t.split_once(':').ok_or_else(|| ledger_err(line, "expected 'key: value'"))?;
        let (key, value) = (key.trim(), value.trim().to_string());
        if key == "id" {
            if value.is_empty() {
                return Err(ledger_err(line, "empty id"));
            }
            if let Some(prev) = seen.insert(value.clone(), line) {
                return Err(ledger_err(line, format!("duplicate id '{value}' (first at line {prev})")));
            }
            out.push(ClaimEntry {
                id: value,
                line,
                ring: None,
                kind: String::new(),
                params: BTreeMap::new(),
                expect: String::new(),
                mode: ClaimMode::Only(Mode::Strict),
                foreach: None,
                status: ClaimStatus::Confirmed,
                must_pass: true,
                locator: String::new(),
            });
            continue;
        }
        let e = out.last_mut().ok_or_else(|| ledger_err(line, "field before the first 'id:'"))?;
        match key {
            "ring" => e.ring = Some(value),
            "kind" => e.kind = value,
            "params" => {
                for part in split_top(&value, ';') {
                    let part = part.trim();
                    if part.is_empty() {
                        continue;
                    }
                    let (k, v) = part.split_once('=').ok_or_else(|| ledger_err(line, format!("bad parameter '{part}'")))?;
                    e.params.insert(k.trim().to_string(), v.trim().to_string());
                }
            }
            "expect" => e.expect = value,
            "mode" => {
                e.mode = match value.to_ascii_lowercase().as_str() {
                    "any" | "both" => ClaimMode::Any,
                    m => ClaimMode::Only(m.parse().map_err(|_| ledger_err(line, format!("bad mode '{value}'")))?),
                }
            }
            "for" => e.foreach = Some(parse_for(&value, line)?),
            "status" => e.status = value.parse().map_err(|_| ledger_err(line, format!("bad status '{value}'")))?,
            "must_pass" => {
                e.must_pass = value.parse().map_err(|_| ledger_err(line, format!("bad must_pass '{value}'")))?;
            }
            "locator" => e.locator = value,
            other => return Err(ledger_err(line, format!("unknown field '{other}'"))),
        }
    }
    for e in &out {
        if e.kind.is_empty() || e.expect.is_empty() {
            return Err(ledger_err(e.line, format!("claim '{}' needs 'kind' and 'expect'", e.id)));
        }
        if e.ring.is_none() && !matches!(e.kind.as_str(), "structure" | "hyperring") {
            return Err(ledger_err(e.line, format!("claim '{}' needs 'ring'", e.id)));
        }
    }
    Ok(out)
}

// ------------------------------------------------------------ templates

/// Replaces `$v`, `$(v±k)` and `$(k*v)` by their values.
fn substitute(text: &str, var: &str, value: u64, line: usize) -> Result<String> {
    let mut out = String::new();
    let mut rest = text;
    while let Some(i) = rest.find('$') {
        out.push_str(&rest[..i]);
        let after = &rest[i + 1..];
        if let Some(inner) = after.strip_prefix('(') {
            let close = inner.find(')').ok_or_else(|| ledger_err(line, "unclosed $( )"))?;
            out.push_str(&eval_expr(&inner[..close], var, value).ok_or_else(|| ledger_err(line, format!("bad expression '{}'", &inner[..close])))?.to_string());
            rest = &inner[close + 1..];
        } else if let Some(tail) = after.strip_prefix(var) {
            out.push_str(&value.to_string());
            rest = tail;
        } else {
            return Err(ledger_err(line, format!("unknown template variable in '{text}'")));
        }
    }
    out.push_str(rest);
    Ok(out)
}

fn eval_expr(e: &str, var: &str, value: u64) -> Option<i64> {
    let e: String = e.chars().filter(|c| !c.is_whitespace()).collect();
    let term = |t: &str| -> Option<i64> {
        match t.split_once('*') {
            Some((k, v)) if v == var => Some(k.parse::<i64>().ok()? * value as i64),
            None if t == var => Some(value as i64),
            None => t.parse().ok(),
            _ => None,
        }
    };
    if let Some(pos) = e[1..].find(['+', '-']).map(|p| p + 1) {
        let (a, b) = (term(&e[..pos])?, term(&e[pos + 1..])?);
        Some(if &e[pos..=pos] == "+" { a + b } else { a - b })
    } else {
        term(&e)
    }
}

// ----------------------------------------------------------- evaluation

#[derive(Debug, Clone, PartialEq)]
enum Value {
    Bool(bool),
    NotApplicable,
    Count(u64),
    /// Sorted, deduplicated codes in `universe`.
    Elements(Vec<Elem>),
    Pairs(Vec<(usize, usize)>),
    Family(Vec<ElementSet>),
}

/// What element literals refer to: ring elements, or bare indices.
#[derive(Clone, Copy)]
enum Universe<'a> {
    Ring(&'a Ring),
    Plain(usize),
}

impl Universe<'_> {
    fn size(&self) -> usize {
        match self {
            Universe::Ring(r) => r.cardinality(),
            Universe::Plain(n) => *n,
        }
    }

    fn elements(&self, text: &str) -> Result<Vec<Elem>> {
        let mut v = match self {
            Universe::Ring(r) => notation::parse_elements(r, text)?,
            Universe::Plain(n) => {
                let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
                let mut v = Vec::new();
                for t in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                    let x: usize = t.parse().map_err(|_| Error::InvalidArgument(format!("bad integer '{t}'")))?;
                    if x >= *n {
                        return Err(Error::InvalidArgument(format!("{x} out of range")));
                    }
                    v.push(x);
                }
                v
            }
        };
        v.sort_unstable();
        v.dedup();
        Ok(v)
    }

    fn set(&self, text: &str) -> Result<ElementSet> {
        Ok(ElementSet::from_elements(self.size(), self.elements(text)?))
    }

    fn family(&self, text: &str) -> Result<Vec<ElementSet>> {
        let inner = text.trim().strip_prefix('{').and_then(|t| t.strip_suffix('}')).ok_or_else(|| Error::InvalidArgument(format!("bad family '{text}'")))?;
        if inner.trim().is_empty() {
            return Ok(vec![]);
        }
        split_top(inner, ',').into_iter().map(|s| self.set(s)).collect()
    }
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    let mut out = Vec::new();
    for p in split_top(inner, ',').into_iter().map(str::trim).filter(|p| !p.is_empty()) {
        let q = p.strip_prefix('(').and_then(|p| p.strip_suffix(')')).ok_or_else(|| Error::InvalidArgument(format!("bad pair '{p}'")))?;
        let (a, b) = q.split_once(',').ok_or_else(|| Error::InvalidArgument(format!("bad pair '{p}'")))?;
        let n = |s: &str| s.trim().parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad pair '{p}'")));
        out.push((n(a)?, n(b)?));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Does `value` meet `expect`? Literals are read in `u`.
fn meets(value: &Value, expect: &str, u: Universe) -> Result<bool> {
    let e = expect.trim();
    let bad = || Error::InvalidArgument(format!("expectation '{e}' does not fit value {}", describe(value)));
    let (op, lit) = match e.split_once(' ') {
        Some((op @ ("contains" | "excludes" | "sizes-within" | "sizes-exclude" | "sizes-include" | "at-least"), lit)) => (op, lit.trim()),
        _ => ("equals", e),
    };
    // a literal whose first member is itself braced is a family
    let is_family_lit = |lit: &str| lit.trim().strip_prefix('{').is_some_and(|t| t.trim_start().starts_with('{'));
    Ok(match (value, op) {
        (Value::Bool(b), "equals") => match e {
            "true" => *b,
            "false" => !*b,
            "not_applicable" => false,
            _ => return Err(bad()),
        },
        (Value::NotApplicable, "equals") => match e {
            "not_applicable" => true,
            "true" | "false" => false,
            _ => return Err(bad()),
        },
        (Value::Count(n), "equals") => *n == e.parse::<u64>().map_err(|_| bad())?,
        (Value::Count(n), "at-least") => *n >= lit.parse::<u64>().map_err(|_| bad())?,
        (Value::Elements(v), "at-least") => v.len() as u64 >= lit.parse::<u64>().map_err(|_| bad())?,
        (Value::Pairs(v), "at-least") => v.len() as u64 >= lit.parse::<u64>().map_err(|_| bad())?,
        (Value::Family(f), "at-least") => f.len() as u64 >= lit.parse::<u64>().map_err(|_| bad())?,
        (Value::Elements(v), _) => match (op, e) {
            (_, "empty") => v.is_empty(),
            (_, "nonempty") => !v.is_empty(),
            ("equals", _) if e.parse::<u64>().is_ok() => v.len() as u64 == e.parse::<u64>().unwrap(),
            ("equals", _) => *v == u.elements(lit)?,
            ("contains", _) => u.elements(lit)?.iter().all(|x| v.binary_search(x).is_ok()),
            ("excludes", _) => !u.elements(lit)?.iter().any(|x| v.binary_search(x).is_ok()),
            _ => return Err(bad()),
        },
        (Value::Pairs(v), _) => match (op, e) {
            (_, "empty") => v.is_empty(),
            (_, "nonempty") => !v.is_empty(),
            ("equals", _) if e.parse::<u64>().is_ok() => v.len() as u64 == e.parse::<u64>().unwrap(),
            ("equals", _) => *v == parse_pairs(lit)?,
            ("contains", _) => parse_pairs(lit)?.iter().all(|p| v.contains(p)),
            ("excludes", _) => !parse_pairs(lit)?.iter().any(|p| v.contains(p)),
            _ => return Err(bad()),
        },
        (Value::Family(f), _) => {
            let lit_family = |lit: &str| -> Result<Vec<ElementSet>> {
                if is_family_lit(lit) {
                    u.family(lit)
                } else {
                    Ok(vec![u.set(lit)?])
                }
            };
            let sizes = |lit: &str| -> Result<Vec<usize>> {
                Ok(Universe::Plain(usize::MAX).elements(lit)?)
            };
            match (op, e) {
                (_, "empty") => f.is_empty(),
                (_, "nonempty") => !f.is_empty(),
                ("equals", _) if e.parse::<u64>().is_ok() => f.len() as u64 == e.parse::<u64>().unwrap(),
                ("equals", _) => {
                    let mut want = u.family(lit)?;
                    want.sort();
                    want.dedup();
                    let mut got = f.clone();
                    got.sort();
                    want == got
                }
                ("contains", _) => lit_family(lit)?.iter().all(|s| f.contains(s)),
                ("excludes", _) => !lit_family(lit)?.iter().any(|s| f.contains(s)),
                ("sizes-within", _) => {
                    let ok = sizes(lit)?;
                    f.iter().all(|s| ok.contains(&s.len()))
                }
                ("sizes-include", _) => sizes(lit)?.iter().all(|n| f.iter().any(|s| s.len() == *n)),
                ("sizes-exclude", _) => {
                    let no = sizes(lit)?;
                    !f.iter().any(|s| no.contains(&s.len()))
                }
                _ => return Err(bad()),
            }
        }
        _ => return Err(bad()),
    })
}

fn describe(v: &Value) -> String {
    let s = match v {
        Value::Bool(b) => b.to_string(),
        Value::NotApplicable => "not_applicable".into(),
        Value::Count(n) => n.to_string(),
        Value::Elements(e) => format!("{e:?}"),
        Value::Pairs(p) => format!("{p:?}"),
        Value::Family(f) => format!("{} sets, sizes {:?}", f.len(), f.iter().map(|s| s.len()).collect::<Vec<_>>()),
    };
    if s.len() > 240 {
        format!("{}…", &s[..s.char_indices().nth(240).map_or(s.len(), |(i, _)| i)])
    } else {
        s
    }
}

/// Parameters of one claim instance, with typed accessors.
struct Params<'a> {
    map: BTreeMap<String, String>,
    id: &'a str,
}

impl Params<'_> {
    fn get(&self, k: &str) -> Option<&str> {
        self.map.get(k).map(String::as_str)
    }

    fn req(&self, k: &str) -> Result<&str> {
        self.get(k).ok_or_else(|| Error::InvalidArgument(format!("claim '{}' needs parameter '{k}'", self.id)))
    }

    fn parsed<T: FromStr>(&self, k: &str, default: T) -> Result<T> {
        match self.get(k) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| Error::InvalidArgument(format!("claim '{}': bad value '{v}' for '{k}'", self.id))),
        }
    }

    fn elem(&self, r: &Ring, k: &str) -> Result<Option<Elem>> {
        self.get(k).map(|v| notation::parse_element(r, v)).transpose()
    }

    fn level(&self) -> Result<Level> {
        self.parsed("level", Level::I)
    }
}

/// Ring analyses shared between claims.
#[derive(Default)]
struct Cache {
    rings: Mutex<HashMap<String, Arc<RingAnalysis>>>,
}

impl Cache {
    fn get(&self, spec: &str) -> Result<Arc<RingAnalysis>> {
        if let Some(a) = self.rings.lock().unwrap().get(spec) {
            return Ok(a.clone());
        }
        let a = Arc::new(RingAnalysis::new(Ring::construct(&descriptor::parse(spec)?)?));
        Ok(self.rings.lock().unwrap().entry(spec.to_string()).or_insert(a).clone())
    }
}

fn census_value(a: &RingAnalysis, name: &str, mode: Mode) -> Result<Value> {
    let r = a.ring();
    let els = |v: Vec<Elem>| Value::Elements(v);
    let semi = |level| -> Result<Value> { Ok(els(elements::semi_idempotents(a, level, mode)?.into_iter().map(|s| s.element).collect())) };
    Ok(match name {
        "units" => els(elements::classify_units(r)?.units),
        "s_units" => els(elements::classify_units(r)?.s_units),
        "zero_divisors" => els(elements::classify_zero_divisors(r)?.zero_divisors),
        "s_zero_divisor_pairs" => Value::Pairs(elements::classify_zero_divisors(r)?.s_pairs),
        "idempotents" => els(elements::classify_idempotents(r)?.idempotents),
        "s_idempotents" => els(elements::classify_idempotents(r)?.s_idempotents),
        "nilpotents" => els(elements::classify_nilpotents(r)?.nilpotents),
        "s_nilpotents" => els(elements::classify_nilpotents(r)?.s_nilpotents),
        "semi_idempotents" => semi(SemiLevel::Plain)?,
        "s_semi_idempotents_1" => semi(SemiLevel::SLevel1)?,
        "s_semi_idempotents_2" => semi(SemiLevel::SLevel2)?,
        "super_idempotents" => els(elements::super_idempotents(r)?.into_iter().filter(|s| !s.trivial).map(|s| s.element).collect()),
        "s_super_idempotents" => els(elements::super_idempotents(r)?.into_iter().filter(|s| s.s_super).map(|s| s.element).collect()),
        "ss_elements" => els(elements::ss_elements(r)?.ss_elements),
        "sss_pairs" => Value::Pairs(elements::ss_elements(r)?.sss_pairs),
        "semiunits" => els(elements::semiunits(r)?.semiunits),
        "s_semiunits" => els(elements::semiunits(r)?.s_semiunits),
        "clean" => els(elements::clean_elements(r, IdempotentPolicy::Nontrivial)?),
        "clean_any" => els(elements::clean_elements(r, IdempotentPolicy::Any)?),
        "regular" => els(elements::regular_elements(r)?),
        "jacobson_radical" => els(a.jacobson_radical()?.to_vec()),
        other => return Err(Error::InvalidArgument(format!("unknown census set '{other}'"))),
    })
}

fn element_value(a: &RingAnalysis, p: &Params, mode: Mode) -> Result<Value> {
    let r = a.ring();
    let x = p.elem(r, "x")?.ok_or_else(|| Error::InvalidArgument("element claims need 'x'".into()))?;
    let y = p.elem(r, "y")?;
    let wa = p.elem(r, "a")?;
    let wb = p.elem(r, "b")?;
    let z = r.zero();
    let member = |v: Value| matches!(v, Value::Elements(ref e) if e.contains(&x));
    let need_y = || y.ok_or_else(|| Error::InvalidArgument("this property needs 'y'".into()));
    let b = match p.req("property")? {
        "unit" => elements::inverse(r, x).is_some(),
        "s_unit" => match (y, wa, wb) {
            (Some(y), Some(a_), Some(b_)) => elements::s_unit_clause(r, x, y, a_, b_).is_some(),
            _ => member(census_value(a, "s_units", mode)?),
        },
        "zero_divisor" => match y {
            Some(y) => x != z && y != z && (r.mul(x, y) == z || r.mul(y, x) == z),
            None => member(census_value(a, "zero_divisors", mode)?),
        },
        "s_zero_divisor" => {
            let y = need_y()?;
            match (wa, wb) {
                (Some(a_), Some(b_)) => elements::s_zero_divisor_holds(r, x, y, a_, b_),
                _ => elements::classify_zero_divisors(r)?.s_pairs.contains(&(x, y)),
            }
        }
        "idempotent" => r.mul(x, x) == x,
        "s_idempotent" => match wa {
            Some(a_) => elements::s_idempotent_clause(r, x, a_).is_some(),
            None => member(census_value(a, "s_idempotents", mode)?),
        },
        "co_idempotent" => elements::is_co_idempotent(r, x, need_y()?),
        "co_idempotent_count" => {
            let c = elements::classify_idempotents(r)?.co_idempotents.get(&x).map_or(0, Vec::len);
            return Ok(Value::Count(c as u64));
        }
        "nilpotent" => x != z && elements::nilpotency_index(r, x).is_some(),
        "s_nilpotent" => match y {
            Some(y) => {
                let k = elements::nilpotency_index(r, x).unwrap_or(0);
                let exps: Vec<u64> = match p.get("r") {
                    Some(e) => vec![e.parse().map_err(|_| Error::InvalidArgument("bad exponent".into()))?],
                    None => (1..k).collect(),
                };
                exps.into_iter().any(|e| elements::s_nilpotent_clause(r, x, y, e).is_some())
            }
            None => member(census_value(a, "s_nilpotents", mode)?),
        },
        "semi_idempotent" => member(census_value(a, "semi_idempotents", mode)?),
        "s_semi_idempotent" => {
            let name = if p.level()? == Level::I { "s_semi_idempotents_1" } else { "s_semi_idempotents_2" };
            member(census_value(a, name, mode)?)
        }
        "super_idempotent" => member(census_value(a, "super_idempotents", mode)?),
        "s_super_idempotent" => member(census_value(a, "s_super_idempotents", mode)?),
        "super_polynomial_zero" => elements::super_idempotent_polynomial(r, x) == z,
        "semiunit" => match y {
            Some(y) => {
                let one = r.require_one()?;
                y != z && r.mul(r.add(x, one), r.add(y, one)) == one
            }
            None => member(census_value(a, "semiunits", mode)?),
        },
        "s_semiunit" => member(census_value(a, "s_semiunits", mode)?),
        "ss_element" => member(census_value(a, "ss_elements", mode)?),
        "sss_pair" => {
            let y = need_y()?;
            x != y && r.mul(x, y) == r.add(x, y)
        }
        "clean" => member(census_value(a, "clean", mode)?),
        "regular" => member(census_value(a, "regular", mode)?),
        other => return Err(Error::InvalidArgument(format!("unknown element property '{other}'"))),
    };
    Ok(Value::Bool(b))
}

fn family_value(a: &RingAnalysis, p: &Params, mode: Mode) -> Result<Value> {
    let r = a.ring();
    let level = p.level()?;
    let trivial: bool = p.parsed("trivial", true)?;
    let name = p.req("family")?;
    let sets = match name {
        "maximal-ideals" | "minimal-ideals" | "prime-ideals" => {
            let side = p.parsed("side", Side::TwoSided)?;
            a.ideal_annotations(side)?
                .into_iter()
                .filter(|i| match name {
                    "maximal-ideals" => i.maximal,
                    "minimal-ideals" => i.minimal,
                    _ => i.prime,
                })
                .map(|i| i.set)
                .collect()
        }
        "s-maximal-ideals" | "s-minimal-ideals" => {
            let fam = a.s_ideals(SOptions {
                level,
                mode,
                include_trivial: trivial,
            })?;
            s_maximal_minimal(r, &fam)
                .into_iter()
                .filter(|x| if name == "s-maximal-ideals" { x.s_maximal } else { x.s_minimal })
                .map(|x| x.set)
                .collect()
        }
        "s-pseudo-ideals" => {
            let base = notation::parse_set(r, p.req("base")?)?;
            a.s_pseudo_ideals(&base, p.parsed("side", Side::TwoSided)?)?
        }
        other => {
            let kind: FamilyKind = other.parse()?;
            let f = report::family(a, kind, level, mode)?;
            f.sets.into_iter().zip(f.trivial).filter(|(_, t)| trivial || !t).map(|(s, _)| s).collect()
        }
    };
    Ok(Value::Family(sets))
}

fn subset_value(a: &RingAnalysis, p: &Params, mode: Mode) -> Result<Value> {
    let r = a.ring();
    let s = notation::parse_set(r, p.req("set")?)?;
    let level = p.level()?;
    let subring = ring::is_additive_subgroup(r, &s) && a.is_multiplicatively_closed(&s);
    let b = match p.req("property")? {
        "subring" => subring,
        "ideal" => a.is_ideal(&s, Side::TwoSided),
        "left_ideal" => a.is_ideal(&s, Side::Left),
        "right_ideal" => a.is_ideal(&s, Side::Right),
        "field" => subring && a.field_identity(&s).is_some(),
        "field_identity" => {
            return Ok(match a.field_identity(&s).filter(|_| subring) {
                Some(e) => Value::Elements(vec![e]),
                None => Value::Elements(vec![]),
            })
        }
        "domain" => a.domain_subsets()?.iter().any(|c| c.set == s),
        "s_subring" => subring && a.s_certificate(&s, level, mode)?.is_some(),
        "s_ideal" => a.is_ideal(&s, Side::TwoSided) && a.is_s_ideal(&s, level, mode)?.is_some(),
        "prime_ideal" => a.ideal_annotations(Side::TwoSided)?.iter().any(|i| i.set == s && i.prime),
        "s_pseudo_ideal" => {
            let base = notation::parse_set(r, p.req("base")?)?;
            a.s_pseudo_ideals(&base, p.parsed("side", Side::TwoSided)?)?.contains(&s)
        }
        "law" => {
            let law: Law = p.req("law")?.parse()?;
            predicates::subset_law(a, &s, law)?.holds()
        }
        other => return Err(Error::InvalidArgument(format!("unknown subset property '{other}'"))),
    };
    Ok(Value::Bool(b))
}

fn lattice_value(a: &RingAnalysis, p: &Params, mode: Mode) -> Result<Value> {
    let r = a.ring();
    let kind: FamilyKind = p.req("family")?.parse()?;
    let f = report::family(a, kind, p.level()?, mode)?;
    let poset = lattice::poset_from_family(&f.sets)?;
    let check = p.req("check")?;
    match check {
        "size" => return Ok(Value::Count(poset.len() as u64)),
        "longest_chain" => return Ok(Value::Count(lattice::chain_stats(&poset).longest_chain as u64)),
        "total_order" => return Ok(Value::Bool(lattice::chain_stats(&poset).total_order)),
        _ => {}
    }
    let l = match lattice::lattice_from_poset(poset) {
        Ok(l) => l,
        Err(_) if check == "is_lattice" => return Ok(Value::Bool(false)),
        Err(e) => return Err(Error::InvalidArgument(format!("family is not a lattice ({} fails at {:?})", e.operation, e.pair))),
    };
    Ok(Value::Bool(match check {
        "is_lattice" => true,
        "pentagon_free" => lattice::pentagons(&l)?.is_empty(),
        "diamond_free" => lattice::diamonds(&l)?.is_empty(),
        "pentagon" | "diamond" => {
            let shape = if check == "pentagon" { Shape::Pentagon } else { Shape::Diamond };
            // nodes are given literally, or as generators of two-sided ideals
            let nodes = match p.get("node_generators") {
                Some(g) => notation::parse_family(r, g)?
                    .iter()
                    .map(|gens| a.ideal_generated(gens, Side::TwoSided))
                    .collect::<Result<Vec<_>>>()?,
                None => notation::parse_family(r, p.req("nodes")?)?,
            };
            let idx: Option<Vec<usize>> = nodes.iter().map(|s| l.poset.index_of(s)).collect();
            let Some(mut idx) = idx else { return Ok(Value::Bool(false)) };
            let listed = match shape {
                Shape::Pentagon => lattice::pentagons(&l)?,
                Shape::Diamond => lattice::diamonds(&l)?,
            };
            idx.sort_unstable();
            lattice::is_sublattice_of_shape(&l, &idx, shape)
                && listed.iter().any(|w| {
                    let mut w = w.to_vec();
                    w.sort_unstable();
                    w == idx
                })
        }
        other => lattice::check_identity(&l, other.parse::<Identity>()?)?.holds,
    }))
}

fn ring_value(a: &RingAnalysis, p: &Params) -> Result<Value> {
    let r = a.ring();
    Ok(match p.req("property")? {
        "cardinality" => Value::Count(r.cardinality() as u64),
        "characteristic" => Value::Count(ring::characteristic(r)?),
        "has_one" => Value::Bool(r.one().is_some()),
        "commutative" => Value::Bool(r.is_commutative()),
        "axioms" => Value::Bool(ring_axiom_audit(r).passed()),
        "quotient_size" | "quotient_field" => {
            let q = ring::quotient_ring(r, &notation::parse_set(r, p.req("ideal")?)?)?;
            if p.req("property")? == "quotient_size" {
                Value::Count(q.ring.cardinality() as u64)
            } else {
                Value::Bool(predicates::field(&q.ring)?.holds())
            }
        }
        "s_characteristic" => Value::Elements(a.s_characteristic(p.level()?)?.into_iter().map(|c| c as usize).collect()),
        other => return Err(Error::InvalidArgument(format!("unknown ring property '{other}'"))),
    })
}

fn predicate_value(a: &RingAnalysis, p: &Params, mode: Mode) -> Result<Value> {
    let v = predicates::evaluate(a, p.req("id")?, mode)?;
    Ok(match v.verdict {
        Verdict::Holds => Value::Bool(true),
        Verdict::Fails => Value::Bool(false),
        Verdict::NotApplicable => Value::NotApplicable,
    })
}

fn generated_value(a: &RingAnalysis, p: &Params) -> Result<Value> {
    let r = a.ring();
    let gens = notation::parse_set(r, p.req("gens")?)?;
    Ok(Value::Elements(a.ideal_generated(&gens, p.parsed("side", Side::TwoSided)?)?.to_vec()))
}

fn structure_value(p: &Params) -> Result<(Value, usize)> {
    let limits = StructureLimits::default();
    let s: CayleyStructure = match descriptor::parse_structure(p.req("structure")?)? {
        StructureSpec::Group(g) => structure::build_group_with(&g, &limits)?,
        StructureSpec::Semigroup(s) => structure::build_semigroup_with(&s, &limits)?,
    };
    let n = s.size();
    let min: usize = p.parsed("min", 2)?;
    let v = match p.req("property")? {
        "size" => Value::Count(n as u64),
        "s_semigroup" => Value::Bool(structure::is_s_semigroup_with(&s, min, &limits)?.is_s_semigroup),
        "s_semigroup_witness" => Value::Elements(structure::is_s_semigroup_with(&s, min, &limits)?.witness.map(|g| g.members).unwrap_or_default()),
        "group_identity" => {
            let set = Universe::Plain(n).set(p.req("set")?)?;
            Value::Elements(s.group_identity_of(&set).into_iter().collect())
        }
        "s_semigroup_identity" => Value::Elements(structure::is_s_semigroup_with(&s, min, &limits)?.witness.map(|g| vec![g.identity]).unwrap_or_default()),
        "s_normal_subgroups" => Value::Family(structure::s_normal_subgroups_with(&s, min, &limits)?.into_iter().map(|g| g.set).collect()),
        "group_subsets" => Value::Family(structure::group_subsets(&s, min, &limits)?.into_iter().map(|g| g.set).collect()),
        other => return Err(Error::InvalidArgument(format!("unknown structure property '{other}'"))),
    };
    Ok((v, n))
}

fn hyperring_value(p: &Params) -> Result<Value> {
    let n: usize = p.parsed("n", 0)?;
    let op = match p.req("op")? {
        "add" | "+" => HyperOp::Additive,
        "mul" | "*" => HyperOp::Multiplicative,
        other => return Err(Error::InvalidArgument(format!("unknown hyperring op '{other}'"))),
    };
    Ok(match p.req("property")? {
        "pairs" => Value::Pairs(hyperring::hyperring(n, p.parsed("q", 0)?, op)?.pairs.into_iter().collect()),
        "subring" => Value::Bool(hyperring::hyperring(n, p.parsed("q", 0)?, op)?.is_subring()),
        "partition" => Value::Bool(hyperring::partitions_square(n, op)?),
        "diagonal" => {
            let diag: Vec<(usize, usize)> = (0..n).map(|x| (x, x)).collect();
            Value::Bool(hyperring::hyperring(n, p.parsed("q", 0)?, op)?.pairs.into_iter().eq(diag))
        }
        "subring_qs" => Value::Elements((0..n).filter(|&q| hyperring::hyperring(n, q, op).map(|h| h.is_subring()).unwrap_or(false)).collect()),
        other => return Err(Error::InvalidArgument(format!("unknown hyperring property '{other}'"))),
    })
}

struct Instance {
    label: String,
    ring: Option<String>,
    params: BTreeMap<String, String>,
    expect: String,
}

fn instances(e: &ClaimEntry) -> Result<Vec<Instance>> {
    let Some((var, values)) = &e.foreach else {
        return Ok(vec![Instance {
            label: String::new(),
            ring: e.ring.clone(),
            params: e.params.clone(),
            expect: e.expect.clone(),
        }]);
    };
    values
        .iter()
        .map(|&v| {
            let sub = |t: &str| substitute(t, var, v, e.line);
            Ok(Instance {
                label: format!("{var}={v}"),
                ring: e.ring.as_deref().map(sub).transpose()?,
                params: e.params.iter().map(|(k, x)| Ok((k.clone(), sub(x)?))).collect::<Result<_>>()?,
                expect: sub(&e.expect)?,
            })
        })
        .collect()
}

/// Evaluates every instance in one mode: `Ok(None)` when all pass,
/// otherwise a description of the first failure.
fn run_mode(e: &ClaimEntry, cache: &Cache, mode: Mode) -> Result<(bool, String)> {
    let mut last = String::new();
    for inst in instances(e)? {
        let p = Params {
            map: inst.params,
            id: &e.id,
        };
        let analysis = inst.ring.as_deref().map(|s| cache.get(s)).transpose()?;
        let (value, universe_size) = match e.kind.as_str() {
            "structure" => {
                let (v, n) = structure_value(&p)?;
                (v, Some(n))
            }
            "hyperring" => (hyperring_value(&p)?, Some(usize::MAX)),
            kind => {
                let a = analysis.as_deref().expect("ring checked at parse time");
                let v = match kind {
                    "census" => census_value(a, p.req("set")?, mode)?,
                    "element" => element_value(a, &p, mode)?,
                    "family" => family_value(a, &p, mode)?,
                    "subset" => subset_value(a, &p, mode)?,
                    "generated-ideal" => generated_value(a, &p)?,
                    "lattice" => lattice_value(a, &p, mode)?,
                    "ring" => ring_value(a, &p)?,
                    "predicate" => predicate_value(a, &p, mode)?,
                    other => return Err(Error::InvalidArgument(format!("unknown claim kind '{other}'"))),
                };
                (v, None)
            }
        };
        let u = match (&analysis, universe_size) {
            (Some(a), None) => Universe::Ring(a.ring()),
            (_, Some(n)) => Universe::Plain(n),
            _ => unreachable!(),
        };
        let ok = meets(&value, &inst.expect, u)?;
        let prefix = if inst.label.is_empty() { String::new() } else { format!("{}: ", inst.label) };
        last = format!("{prefix}got {}", describe(&value));
        if !ok {
            return Ok((false, last));
        }
    }
    Ok((true, last))
}

#[derive(Debug, Clone, Serialize)]
pub struct ModeResult {
    pub mode: Mode,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimOutcome {
    pub id: String,
    pub ring: Option<String>,
    pub kind: String,
    pub verdict: ClaimStatus,
    pub annotated: ClaimStatus,
    pub must_pass: bool,
    /// Verdict equals the annotated status.
    pub matches: bool,
    pub results: Vec<ModeResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub locator: String,
}

pub fn evaluate_claim(e: &ClaimEntry) -> Result<ClaimOutcome> {
    evaluate_with(e, &Cache::default())
}

fn evaluate_with(e: &ClaimEntry, cache: &Cache) -> Result<ClaimOutcome> {
    let modes: Vec<Mode> = match e.mode {
        ClaimMode::Only(m) => vec![m],
        ClaimMode::Any => vec![Mode::Strict, Mode::Lax],
    };
    let mut results = Vec::new();
    let mut skipped = None;
    for m in modes {
        match run_mode(e, cache, m) {
            Ok((passed, detail)) => results.push(ModeResult { mode: m, passed, detail }),
            Err(err) if err.is_capacity() => {
                skipped = Some(err.to_string());
                break;
            }
            Err(err) => return Err(ledger_err(e.line, format!("claim '{}': {err}", e.id))),
        }
    }
    let verdict = if skipped.is_some() {
        ClaimStatus::CapacitySkipped
    } else {
        match results.iter().filter(|r| r.passed).count() {
            0 => ClaimStatus::Refuted,
            n if n == results.len() => ClaimStatus::Confirmed,
            _ => ClaimStatus::ModeDependent,
        }
    };
    Ok(ClaimOutcome {
        id: e.id.clone(),
        ring: e.ring.clone(),
        kind: e.kind.clone(),
        verdict,
        annotated: e.status,
        must_pass: e.must_pass,
        matches: verdict == e.status,
        results,
        skipped,
        locator: e.locator.clone(),
    })
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub confirmed: usize,
    pub refuted: usize,
    pub mode_dependent: usize,
    pub capacity_skipped: usize,
    /// Entries whose verdict differs from their annotation.
    pub mismatched: Vec<String>,
    /// The mismatched entries that are must-pass.
    pub must_pass_failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LedgerRun {
    pub schema: &'static str,
    pub claims: Vec<ClaimOutcome>,
    pub summary: Summary,
}

impl LedgerRun {
    pub fn passed(&self) -> bool {
        self.summary.must_pass_failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger run serializes") + "\n"
    }
}

/// `*` matches any run, `?` one character.
pub fn glob_match(pattern: &str, text: &str) -> bool {
    let (p, t): (Vec<char>, Vec<char>) = (pattern.chars().collect(), text.chars().collect());
    let (mut pi, mut ti, mut star, mut mark) = (0, 0, None, 0);
    while ti < t.len() {
        if pi < p.len() && (p[pi] == '?' || p[pi] == t[ti]) {
            pi += 1;
            ti += 1;
        } else if pi < p.len() && p[pi] == '*' {
            star = Some(pi);
            mark = ti;
            pi += 1;
        } else if let Some(s) = star {
            pi = s + 1;
            mark += 1;
            ti = mark;
        } else {
            return false;
        }
    }
    p[pi..].iter().all(|&c| c == '*')
}

/// Runs the claims matching `filter` in parallel; outcomes are sorted by
/// id.
pub fn run_claims(entries: &[ClaimEntry], filter: Option<&str>) -> Result<LedgerRun> {
    let cache = Cache::default();
    let selected: Vec<&ClaimEntry> = entries.iter().filter(|e| filter.map_or(true, |f| glob_match(f, &e.id))).collect();
    let mut claims: Vec<ClaimOutcome> = selected.par_iter().map(|e| evaluate_with(e, &cache)).collect::<Result<_>>()?;
    claims.sort_by(|a, b| a.id.cmp(&b.id));
    let mut s = Summary {
        total: claims.len(),
        ..Summary::default()
    };
    for c in &claims {
        match c.verdict {
            ClaimStatus::Confirmed => s.confirmed += 1,
            ClaimStatus::Refuted => s.refuted += 1,
            ClaimStatus::ModeDependent => s.mode_dependent += 1,
            ClaimStatus::CapacitySkipped => s.capacity_skipped += 1,
        }
        if !c.matches {
            s.mismatched.push(c.id.clone());
            if c.must_pass {
                s.must_pass_failures.push(c.id.clone());
            }
        }
    }
    Ok(LedgerRun {
        schema: SCHEMA,
        claims,
        summary: s,
    })
}
