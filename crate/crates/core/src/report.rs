//! JSON report documents (schema `finring-report/1`) and the family and
//! lattice summaries they contain. Field order is fixed by the struct
//! definitions and every collection is emitted in canonical order, so the
//! output is byte-identical across runs and thread counts.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::elements::{census, ElementCensus};
use crate::error::{Error, Result};
use crate::lattice::{self, Identity, LatticeModel, PosetModel};
use crate::predicates::PredicateVerdict;
use crate::ring::{self, Elem, Ring};
use crate::substructures::{CertificateSubset, Level, Mode, RingAnalysis, SOptions, Side};

pub const SCHEMA: &str = "finring-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    AdditiveSubgroups,
    Subrings,
    Ideals,
    LeftIdeals,
    RightIdeals,
    FieldSubsets,
    DomainSubsets,
    SSubrings,
    SIdeals,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 9] = [
        FamilyKind::AdditiveSubgroups,
        FamilyKind::Subrings,
        FamilyKind::Ideals,
        FamilyKind::LeftIdeals,
        FamilyKind::RightIdeals,
        FamilyKind::FieldSubsets,
        FamilyKind::DomainSubsets,
        FamilyKind::SSubrings,
        FamilyKind::SIdeals,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::AdditiveSubgroups => "additive-subgroups",
            FamilyKind::Subrings => "subrings",
            FamilyKind::Ideals => "ideals",
            FamilyKind::LeftIdeals => "left-ideals",
            FamilyKind::RightIdeals => "right-ideals",
            FamilyKind::FieldSubsets => "field-subsets",
            FamilyKind::DomainSubsets => "domain-subsets",
            FamilyKind::SSubrings => "s-subrings",
            FamilyKind::SIdeals => "s-ideals",
        }
    }

    /// Whether level and mode affect the family.
    pub fn is_smarandache(self) -> bool {
        matches!(self, FamilyKind::SSubrings | FamilyKind::SIdeals)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace('_', "-");
        let t = match t.as_str() {
            "two-sided-ideals" => "ideals",
            "fields" => "field-subsets",
            "domains" => "domain-subsets",
            other => other,
        };
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == t)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family '{s}'")))
    }
}

/// A family as plain sets, with certificates and trivial flags where the
/// family has them.
#[derive(Debug, Clone)]
pub struct Family {
    pub kind: FamilyKind,
    pub level: Option<Level>,
    pub mode: Option<Mode>,
    pub sets: Vec<ElementSet>,
    pub certificates: Vec<Option<CertificateSubset>>,
    pub trivial: Vec<bool>,
}

/// S-families include `{0}` and `R` by convention.
pub fn family(a: &RingAnalysis, kind: FamilyKind, level: Level, mode: Mode) -> Result<Family> {
    let plain = |sets: Vec<ElementSet>| Family {
        kind,
        level: None,
        mode: None,
        certificates: vec![None; sets.len()],
        trivial: vec![false; sets.len()],
        sets,
    };
    let certs = |c: &[CertificateSubset]| Family {
        kind,
        level: None,
        mode: None,
        sets: c.iter().map(|c| c.set.clone()).collect(),
        certificates: c.iter().cloned().map(Some).collect(),
        trivial: vec![false; c.len()],
    };
    Ok(match kind {
        FamilyKind::AdditiveSubgroups => plain(a.additive_subgroups()?.to_vec()),
        FamilyKind::Subrings => plain(a.subrings()?.to_vec()),
        FamilyKind::Ideals => plain(a.ideals(Side::TwoSided)?.to_vec()),
        FamilyKind::LeftIdeals => plain(a.ideals(Side::Left)?.to_vec()),
        FamilyKind::RightIdeals => plain(a.ideals(Side::Right)?.to_vec()),
        FamilyKind::FieldSubsets => certs(&a.field_subsets()?),
        FamilyKind::DomainSubsets => certs(&a.domain_subsets()?),
        FamilyKind::SSubrings | FamilyKind::SIdeals => {
            let opts = SOptions {
                level,
                mode,
                include_trivial: true,
            };
            let v = if kind == FamilyKind::SSubrings { a.s_subrings(opts)? } else { a.s_ideals(opts)? };
            Family {
                kind,
                level: Some(level),
                mode: Some(mode),
                sets: v.iter().map(|m| m.set.clone()).collect(),
                certificates: v.iter().map(|m| m.certificate.clone()).collect(),
                trivial: v.iter().map(|m| m.trivial).collect(),
            }
        }
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RingInfo {
    pub spec: String,
    pub cardinality: usize,
    pub characteristic: u64,
}

impl RingInfo {
    pub fn of(r: &Ring) -> Result<Self> {
        Ok(Self {
            spec: r.label().to_string(),
            cardinality: r.cardinality(),
            characteristic: ring::characteristic(r)?,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub fingerprint: String,
    pub elements: Vec<Elem>,
    pub identity: Elem,
}

#[derive(Debug, Clone, Serialize)]
pub struct MemberReport {
    pub fingerprint: String,
    pub size: usize,
    pub elements: Vec<Elem>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub trivial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub kind: FamilyKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<Level>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    pub count: usize,
    pub members: Vec<MemberReport>,
}

impl FamilyReport {
    pub fn of(f: &Family) -> Self {
        let members = f
            .sets
            .iter()
            .zip(&f.certificates)
            .zip(&f.trivial)
            .map(|((s, c), &trivial)| MemberReport {
                fingerprint: s.fingerprint(),
                size: s.len(),
                elements: s.to_vec(),
                trivial,
                certificate: c.as_ref().map(|c| CertificateReport {
                    fingerprint: c.set.fingerprint(),
                    elements: c.set.to_vec(),
                    identity: c.identity,
                }),
            })
            .collect();
        Self {
            kind: f.kind,
            level: f.level,
            mode: f.mode,
            count: f.sets.len(),
            members,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub holds: bool,
    /// Failing tuple, as member fingerprints.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ForbiddenWitnesses {
    /// First pentagon in canonical order, as `[bottom, a, c, b, top]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pentagon: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pentagons: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diamond: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diamonds: Option<Vec<Vec<String>>>,
    /// Set when the family is too large for the sublattice search.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    pub family: FamilyKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<Level>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    pub size: usize,
    pub nodes: Vec<String>,
    pub is_lattice: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_a_lattice: Option<NotALatticeReport>,
    pub identities: Vec<IdentityReport>,
    pub witnesses: ForbiddenWitnesses,
    pub longest_chain: usize,
    pub total_order: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NotALatticeReport {
    pub pair: [String; 2],
    pub operation: &'static str,
}

/// Lattice analysis of a family: the requested identity checks, plus
/// pentagon witnesses when modularity is checked and diamond witnesses when
/// distributivity is checked.
pub fn analyze_lattice(f: &Family, checks: &[Identity]) -> Result<(LatticeReport, Option<LatticeModel>)> {
    let fp = |i: usize| f.sets[i].fingerprint();
    let poset = lattice::poset_from_family(&f.sets)?;
    let stats = lattice::chain_stats(&poset);
    let mut report = LatticeReport {
        family: f.kind,
        level: f.level,
        mode: f.mode,
        size: f.sets.len(),
        nodes: (0..f.sets.len()).map(fp).collect(),
        is_lattice: false,
        not_a_lattice: None,
        identities: vec![],
        witnesses: ForbiddenWitnesses::default(),
        longest_chain: stats.longest_chain,
        total_order: stats.total_order,
    };
    let l = match lattice::lattice_from_poset(poset) {
        Ok(l) => l,
        Err(e) => {
            report.not_a_lattice = Some(NotALatticeReport {
                pair: [fp(e.pair.0), fp(e.pair.1)],
                operation: e.operation,
            });
            return Ok((report, None));
        }
    };
    report.is_lattice = true;
    for &id in checks {
        let v = lattice::check_identity(&l, id)?;
        report.identities.push(IdentityReport {
            identity: id,
            holds: v.holds,
            counterexample: v.counterexample.map(|c| c.into_iter().map(fp).collect()),
        });
    }
    let want_pentagon = checks.contains(&Identity::Modular);
    let want_diamond = checks.contains(&Identity::Distributive);
    if want_pentagon || want_diamond {
        if l.len() > lattice::FORBIDDEN_SEARCH_CAP {
            report.witnesses.skipped = Some(format!("sublattice search is limited to {} nodes", lattice::FORBIDDEN_SEARCH_CAP));
        } else {
            let names = |v: Vec<[usize; 5]>| -> Vec<Vec<String>> { v.into_iter().map(|w| w.into_iter().map(fp).collect()).collect() };
            if want_pentagon {
                let all = names(lattice::pentagons(&l)?);
                report.witnesses.pentagon = all.first().cloned();
                report.witnesses.pentagons = Some(all);
            }
            if want_diamond {
                let all = names(lattice::diamonds(&l)?);
                report.witnesses.diamond = all.first().cloned();
                report.witnesses.diamonds = Some(all);
            }
        }
    }
    Ok((report, Some(l)))
}

/// Hasse diagram of a family; small members are labelled by their
/// elements, larger ones by size and fingerprint.
pub fn hasse_dot(r: &Ring, p: &PosetModel) -> String {
    lattice::export_hasse(p, |i| {
        let s = &p.nodes[i];
        if s.len() <= 12 {
            let parts: Vec<String> = s.iter().map(|x| r.format_element(x)).collect();
            format!("{{{}}}", parts.join(", "))
        } else {
            format!("|{}| {}", s.len(), s.fingerprint())
        }
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub ring: RingInfo,
    pub censuses: Option<ElementCensus>,
    pub families: Vec<FamilyReport>,
    pub lattices: Vec<LatticeReport>,
    pub predicates: Vec<PredicateVerdict>,
}

impl Report {
    pub fn new(r: &Ring) -> Result<Self> {
        Ok(Self {
            schema: SCHEMA,
            ring: RingInfo::of(r)?,
            censuses: None,
            families: vec![],
            lattices: vec![],
            predicates: vec![],
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

pub fn classify_report(a: &RingAnalysis) -> Result<Report> {
    let mut rep = Report::new(a.ring())?;
    rep.censuses = Some(census(a)?);
    Ok(rep)
}
