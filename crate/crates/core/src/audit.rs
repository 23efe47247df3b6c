//! Ring axiom audit: exhaustive over all triples up to the validation cap,
//! seeded random sampling above it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::ring::{Elem, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: Vec<Elem>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub exhaustive: bool,
    pub triples_checked: u64,
    /// At most one violation per axiom, with the least witness found.
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

const AXIOMS: [&str; 8] = [
    "additive associativity",
    "additive commutativity",
    "additive identity",
    "additive inverse",
    "multiplicative associativity",
    "left distributivity",
    "right distributivity",
    "multiplicative identity",
];

type Found = [Option<Vec<Elem>>; 8];

fn check_triple(r: &Ring, a: Elem, b: Elem, c: Elem, found: &mut Found) {
    let mut note = |i: usize, w: [Elem; 3]| {
        if found[i].is_none() {
            found[i] = Some(w.to_vec());
        }
    };
    if r.add(r.add(a, b), c) != r.add(a, r.add(b, c)) {
        note(0, [a, b, c]);
    }
    if r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)) {
        note(4, [a, b, c]);
    }
    if r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)) {
        note(5, [a, b, c]);
    }
    if r.mul(r.add(b, c), a) != r.add(r.mul(b, a), r.mul(c, a)) {
        note(6, [a, b, c]);
    }
}

fn check_pair(r: &Ring, a: Elem, b: Elem, found: &mut Found) {
    if r.add(a, b) != r.add(b, a) && found[1].is_none() {
        found[1] = Some(vec![a, b]);
    }
}

fn check_single(r: &Ring, a: Elem, found: &mut Found) {
    let z = r.zero();
    if (r.add(z, a) != a || r.add(a, z) != a) && found[2].is_none() {
        found[2] = Some(vec![a]);
    }
    if r.add(a, r.neg(a)) != z && found[3].is_none() {
        found[3] = Some(vec![a]);
    }
    if let Some(one) = r.one() {
        if (r.mul(one, a) != a || r.mul(a, one) != a) && found[7].is_none() {
            found[7] = Some(vec![a]);
        }
    }
}

fn merge(mut x: Found, y: Found) -> Found {
    for (a, b) in x.iter_mut().zip(y) {
        *a = match (a.take(), b) {
            (Some(p), Some(q)) => Some(p.min(q)),
            (p, q) => p.or(q),
        };
    }
    x
}

fn into_report(found: Found, exhaustive: bool, triples: u64) -> AuditReport {
    let violations = found
        .into_iter()
        .zip(AXIOMS)
        .filter_map(|(w, axiom)| w.map(|witness| Violation { axiom, witness }))
        .collect();
    AuditReport {
        exhaustive,
        triples_checked: triples,
        violations,
    }
}

/// Audits `r` with its configured limits and a fixed sampling seed.
pub fn ring_axiom_audit(r: &Ring) -> AuditReport {
    ring_axiom_audit_with(r, r.limits().audit_samples, 0x5eed)
}

pub fn ring_axiom_audit_with(r: &Ring, samples: usize, seed: u64) -> AuditReport {
    let n = r.cardinality();
    if n <= r.limits().validation_cap {
        let found = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut f: Found = Default::default();
                check_single(r, a, &mut f);
                for b in 0..n {
                    check_pair(r, a, b, &mut f);
                    for c in 0..n {
                        check_triple(r, a, b, c, &mut f);
                    }
                }
                f
            })
            .reduce(Found::default, merge);
        return into_report(found, true, (n as u64).pow(3));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<[Elem; 3]> = (0..samples).map(|_| [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)]).collect();
    let found = triples
        .par_iter()
        .map(|&[a, b, c]| {
            let mut f: Found = Default::default();
            check_single(r, a, &mut f);
            check_pair(r, a, b, &mut f);
            check_triple(r, a, b, c, &mut f);
            f
        })
        .reduce(Found::default, merge);
    into_report(found, false, samples as u64)
}
