//! Invariants checked over a catalog of small rings: every Z_n up to 60,
//! small direct products, a group ring, a matrix ring and a semigroup ring.
//! Oracles evaluate the defining equations directly through `add`/`mul`.

use std::collections::BTreeSet;

use finring::audit::ring_axiom_audit;
use finring::elements::{self, IdempotentPolicy};
use finring::lattice::{self, Identity, Shape};
use finring::predicates::{self, Verdict};
use finring::substructures::{Level, Mode, RingAnalysis, SOptions, Side};
use finring::{ElementSet, Ring};
use rayon::prelude::*;

fn catalog() -> Vec<String> {
    let mut specs: Vec<String> = (2..=60).map(|n| format!("Z{n}")).collect();
    specs.extend(
        [
            "Z2 x Z2",
            "Z2 x Z3",
            "Z2 x Z4",
            "Z3 x Z3",
            "Z2 x Z2 x Z2",
            "Z2 x Z2 x Z3",
            "Z2 x Z3 x Z5",
            "Z3 x Z12",
            "Z7 x Z9",
            "GR(Z2, S3)",
            "GR(Z2, C3)",
            "GR(Z3, C2)",
            "M2(Z2)",
            "SR(Z2, S(2))",
        ]
        .map(String::from),
    );
    specs
}

fn analysis(spec: &str) -> RingAnalysis {
    RingAnalysis::new(Ring::construct(&spec.parse().unwrap()).unwrap())
}

/// Runs `check` on every catalog ring in parallel.
fn for_catalog(check: impl Fn(&str, &RingAnalysis) + Sync) {
    catalog().par_iter().for_each(|spec| check(spec, &analysis(spec)));
}

fn elems(r: &Ring) -> Vec<usize> {
    r.elements().collect()
}

/// Closed under +, negation and ·, and contains 0.
fn is_subring(r: &Ring, s: &ElementSet) -> bool {
    s.contains(r.zero())
        && s.iter().all(|a| s.contains(r.neg(a)) && s.iter().all(|b| s.contains(r.add(a, b)) && s.contains(r.mul(a, b))))
}

fn is_ideal(r: &Ring, s: &ElementSet, side: Side) -> bool {
    is_subring(r, s)
        && s.iter().all(|a| {
            elems(r).into_iter().all(|x| match side {
                Side::Left => s.contains(r.mul(x, a)),
                Side::Right => s.contains(r.mul(a, x)),
                Side::TwoSided => s.contains(r.mul(x, a)) && s.contains(r.mul(a, x)),
            })
        })
}

/// A subring with an internal identity `e ≠ 0`, commutative, in which
/// every nonzero member has an inverse.
fn is_field(r: &Ring, s: &ElementSet) -> bool {
    if !is_subring(r, s) || s.len() < 2 {
        return false;
    }
    let Some(e) = s.iter().find(|&e| e != r.zero() && s.iter().all(|x| r.mul(e, x) == x && r.mul(x, e) == x)) else {
        return false;
    };
    s.iter().all(|x| s.iter().all(|y| r.mul(x, y) == r.mul(y, x)))
        && s.iter().filter(|&x| x != r.zero()).all(|x| s.iter().any(|y| r.mul(x, y) == e))
}

#[test]
fn ring_axioms_hold() {
    for_catalog(|spec, a| {
        let audit = ring_axiom_audit(a.ring());
        assert!(audit.passed(), "{spec}: {:?}", audit.violations);
    });
}

#[test]
fn zn_tables_are_modular_arithmetic() {
    for n in 1..=60usize {
        let r = Ring::zn(n).unwrap();
        for a in 0..n {
            for b in 0..n {
                assert_eq!(r.add(a, b), (a + b) % n);
                assert_eq!(r.mul(a, b), (a * b) % n);
            }
        }
        assert_eq!(finring::ring::characteristic(&r).unwrap(), n as u64);
    }
}

#[test]
fn unit_census() {
    for_catalog(|spec, a| {
        let r = a.ring();
        let Some(one) = r.one() else { return };
        let c = elements::classify_units(r).unwrap();
        let units: BTreeSet<usize> = elems(r).into_iter().filter(|&x| elems(r).into_iter().any(|y| r.mul(x, y) == one)).collect();
        assert_eq!(c.units.iter().copied().collect::<BTreeSet<_>>(), units, "{spec}");
        for &x in &c.s_units {
            assert!(units.contains(&x), "{spec}: S-unit {x} is not a unit");
            assert_ne!(r.mul(x, x), one, "{spec}: S-unit {x} squares to 1");
            let w = &c.s_unit_witnesses[&x];
            let (y, p, q) = (w.role("y").unwrap(), w.role("a").unwrap(), w.role("b").unwrap());
            assert_eq!(r.mul(x, y), one);
            assert_eq!(r.mul(p, q), one);
            for aux in [p, q] {
                assert!(![x, y, one].contains(&aux), "{spec}: auxiliary {aux} excluded");
            }
            assert!(
                r.mul(x, p) == y || r.mul(p, x) == y || r.mul(y, q) == x || r.mul(q, y) == x,
                "{spec}: witness for {x} fails every clause"
            );
        }
    });
}

#[test]
fn zero_divisor_census() {
    for_catalog(|spec, a| {
        let r = a.ring();
        let z = r.zero();
        let c = elements::classify_zero_divisors(r).unwrap();
        let zd: BTreeSet<usize> = c.zero_divisors.iter().copied().collect();
        for (&(x, y), w) in c.s_pairs.iter().zip(&c.s_pair_witnesses) {
            assert!(zd.contains(&x) && zd.contains(&y), "{spec}: ({x},{y})");
            assert_eq!(r.mul(x, y), z);
            let (p, q) = (w.role("a").unwrap(), w.role("b").unwrap());
            assert!(![z, x, y].contains(&p) && ![z, x, y].contains(&q));
            assert!(r.mul(x, p) == z || r.mul(p, x) == z);
            assert!(r.mul(y, q) == z || r.mul(q, y) == z);
            assert!(r.mul(p, q) != z || r.mul(q, p) != z);
        }
    });
}

#[test]
fn idempotent_census() {
    for_catalog(|spec, a| {
        let r = a.ring();
        let c = elements::classify_idempotents(r).unwrap();
        let idem: BTreeSet<usize> = elems(r).into_iter().filter(|&x| x != r.zero() && Some(x) != r.one() && r.mul(x, x) == x).collect();
        assert_eq!(c.idempotents.iter().copied().collect::<BTreeSet<_>>(), idem, "{spec}");
        for &x in &c.s_idempotents {
            assert!(idem.contains(&x));
            let w = c.s_idempotent_witnesses[&x].role("a").unwrap();
            assert_eq!(r.mul(w, w), x, "{spec}: witness is not a square root");
            assert!(w != x && w != r.zero() && Some(w) != r.one());
        }
        if !c.s_idempotents.is_empty() {
            assert!(!elements::classify_zero_divisors(r).unwrap().zero_divisors.is_empty(), "{spec}");
        }
        for (&x, ys) in &c.co_idempotents {
            for &y in ys {
                assert_eq!(r.mul(y, y), x);
                assert!(r.mul(y, x) == x || r.mul(x, y) == y);
            }
        }
    });
}

#[test]
fn z30_co_idempotents_sum_to_zero() {
    let r = Ring::zn(30).unwrap();
    let c = elements::classify_idempotents(&r).unwrap();
    for &x in &c.s_idempotents {
        assert!(c.co_idempotents[&x].contains(&((30 - x) % 30)), "{x}");
    }
}

#[test]
fn nilpotent_census() {
    for_catalog(|spec, a| {
        let r = a.ring();
        let c = elements::classify_nilpotents(r).unwrap();
        let nil: BTreeSet<usize> = elems(r)
            .into_iter()
            .filter(|&x| x != r.zero() && (1..=r.cardinality() as u64).any(|k| r.pow(x, k) == r.zero()))
            .collect();
        assert_eq!(c.nilpotents.iter().copied().collect::<BTreeSet<_>>(), nil, "{spec}");
        for &x in &c.s_nilpotents {
            assert!(nil.contains(&x));
            let w = &c.s_nilpotent_witnesses[&x];
            let (y, e) = (w.role("y").unwrap(), w.roles["r"]);
            let p = r.pow(x, e);
            assert_ne!(p, r.zero(), "{spec}: exponent must leave x^r nonzero");
            assert!(!nil.contains(&y) && y != r.zero());
            assert!(r.mul(p, y) == r.zero() || r.mul(y, p) == r.zero());
        }
    });
}

#[test]
fn semiunits_match_their_equation() {
    for_catalog(|spec, a| {
        let r = a.ring();
        if r.one().is_none() {
            return;
        }
        let c = elements::semiunits(r).unwrap();
        let got: BTreeSet<usize> = c.semiunits.iter().copied().collect();
        for x in elems(r) {
            let oracle = elems(r).into_iter().any(|y| y != r.zero() && r.add(r.add(x, y), r.mul(x, y)) == r.zero());
            assert_eq!(got.contains(&x), oracle, "{spec}: x = {x}");
        }
    });
}

#[test]
fn super_idempotents_match_their_polynomial() {
    for_catalog(|spec, a| {
        let r = a.ring();
        let nontrivial: BTreeSet<usize> = elements::super_idempotents(r).unwrap().into_iter().filter(|s| !s.trivial).map(|s| s.element).collect();
        for x in elems(r) {
            let (x2, x3, x4) = (r.mul(x, x), r.mul(r.mul(x, x), x), r.mul(r.mul(x, x), r.mul(x, x)));
            let poly = r.add(r.sub(x4, r.add(x3, x3)), x);
            let oracle = x2 != x && poly == r.zero();
            assert_eq!(nontrivial.contains(&x), oracle, "{spec}: x = {x}");
        }
    });
}

#[test]
fn clean_elements_decompose() {
    for_catalog(|spec, a| {
        let r = a.ring();
        let Some(one) = r.one() else { return };
        let clean = elements::clean_elements(r, IdempotentPolicy::Any).unwrap();
        let units: Vec<usize> = elems(r).into_iter().filter(|&x| elems(r).into_iter().any(|y| r.mul(x, y) == one)).collect();
        let idem: Vec<usize> = elems(r).into_iter().filter(|&x| r.mul(x, x) == x).collect();
        for x in elems(r) {
            let oracle = units.iter().any(|&u| idem.iter().any(|&e| r.add(u, e) == x));
            assert_eq!(clean.contains(&x), oracle, "{spec}: x = {x}");
        }
    });
}

#[test]
fn substructure_families_recheck() {
    for_catalog(|spec, a| {
        let r = a.ring();
        let subrings = a.subrings().unwrap();
        for s in subrings.iter() {
            assert!(is_subring(r, s), "{spec}");
        }
        for side in [Side::Left, Side::Right, Side::TwoSided] {
            for s in a.ideals(side).unwrap().iter() {
                assert!(is_ideal(r, s, side), "{spec}: {side:?} {:?}", s.to_vec());
                assert!(subrings.contains(s));
            }
        }
        for c in a.field_subsets().unwrap().iter() {
            assert!(is_field(r, &c.set), "{spec}: {:?}", c.set.to_vec());
        }
    });
}

#[test]
fn zn_subrings_are_divisor_multiples() {
    (1..=60usize).into_par_iter().for_each(|n| {
        let a = analysis(&format!("Z{n}"));
        let got: BTreeSet<Vec<usize>> = a.subrings().unwrap().iter().map(|s| s.to_vec()).collect();
        let want: BTreeSet<Vec<usize>> = (1..=n).filter(|d| n % d == 0).map(|d| (0..n).step_by(d).collect()).collect();
        assert_eq!(got, want, "Z{n}");
    });
}

#[test]
fn s_ideal_families_nest() {
    for_catalog(|spec, a| {
        let fam = |level, mode| -> BTreeSet<Vec<usize>> {
            a.s_ideals(SOptions {
                level,
                mode,
                include_trivial: true,
            })
            .unwrap()
            .into_iter()
            .map(|v| v.set.to_vec())
            .collect()
        };
        for level in [Level::I, Level::II] {
            assert!(fam(level, Mode::Strict).is_subset(&fam(level, Mode::Lax)), "{spec}: strict ⊄ lax");
        }
        for mode in [Mode::Strict, Mode::Lax] {
            assert!(fam(Level::I, mode).is_subset(&fam(Level::II, mode)), "{spec}: I ⊄ II");
        }
    });
}

#[test]
fn generated_ideals_are_least() {
    for_catalog(|spec, a| {
        let r = a.ring();
        let ideals = a.ideals(Side::TwoSided).unwrap();
        for x in elems(r).into_iter().take(24) {
            let gens = ElementSet::from_elements(r.cardinality(), [x]);
            let g = a.ideal_generated(&gens, Side::TwoSided).unwrap();
            let least = ideals.iter().filter(|i| i.contains(x)).min_by_key(|i| i.len()).unwrap();
            assert_eq!(&g, least, "{spec}: ⟨{x}⟩");
            assert!(ideals.iter().filter(|i| i.contains(x)).all(|i| g.is_subset(i)));
        }
    });
}

#[test]
fn jacobson_radical_is_intersection_of_maximal_ideals() {
    for_catalog(|spec, a| {
        let r = a.ring();
        if r.one().is_none() || !r.is_commutative() {
            return;
        }
        let maximal: Vec<ElementSet> = a.ideal_annotations(Side::TwoSided).unwrap().into_iter().filter(|i| i.maximal).map(|i| i.set).collect();
        let meet: Vec<usize> = elems(r).into_iter().filter(|&x| maximal.iter().all(|m| m.contains(x))).collect();
        assert_eq!(a.jacobson_radical().unwrap().to_vec(), meet, "{spec}");
    });
}

fn verdict(a: &RingAnalysis, id: &str) -> Verdict {
    predicates::evaluate(a, id, Mode::Strict).unwrap().verdict
}

#[test]
fn predicate_implications() {
    for_catalog(|spec, a| {
        let r = a.ring();
        let (s1, s2) = (verdict(a, "s_ring_i"), verdict(a, "s_ring_ii"));
        if s1 == Verdict::Holds {
            assert_eq!(s2, Verdict::Holds, "{spec}: S-ring I without II");
        }
        if r.is_commutative() {
            assert_eq!(s1, s2, "{spec}: levels differ on a commutative ring");
        }
        if verdict(a, "reduced") == Verdict::Holds {
            assert_eq!(verdict(a, "s_reduced"), Verdict::Holds, "{spec}");
        }
        if verdict(a, "field") == Verdict::Holds {
            assert_eq!(verdict(a, "reduced"), Verdict::Holds, "{spec}");
            assert!(elements::classify_nilpotents(r).unwrap().nilpotents.is_empty());
        }
        assert!(!(verdict(a, "zero_square") == Verdict::Holds && s1 == Verdict::Holds), "{spec}");
        if verdict(a, "j_ring") == Verdict::Fails {
            for p in [2, 3, 5, 7] {
                assert_ne!(verdict(a, &format!("p_ring({p})")), Verdict::Holds, "{spec}: p-ring that is not a J-ring");
            }
        }
    });
}

#[test]
fn s_ring_witnesses_are_fields() {
    for_catalog(|spec, a| {
        let v = predicates::evaluate(a, "s_ring_i", Mode::Strict).unwrap();
        if v.verdict == Verdict::Holds {
            let w = v.witness.expect("S-ring verdicts carry a witness");
            let set = ElementSet::from_elements(a.ring().cardinality(), w.sets[0].iter());
            assert!(is_field(a.ring(), &set), "{spec}");
            assert!(set.len() < a.ring().cardinality(), "{spec}: witness must be proper");
        }
    });
}

#[test]
fn law_counterexamples_reverify() {
    for_catalog(|spec, a| {
        let r = a.ring();
        let v = predicates::evaluate(a, "boolean", Mode::Strict).unwrap();
        if v.verdict == Verdict::Fails {
            let x = v.counterexample.expect("failing law carries a counterexample").elements[0];
            assert_ne!(r.mul(x, x), x, "{spec}");
        }
        let v = predicates::evaluate(a, "zero_square", Mode::Strict).unwrap();
        if v.verdict == Verdict::Fails {
            let x = v.counterexample.unwrap().elements[0];
            assert_ne!(r.mul(x, x), r.zero(), "{spec}");
        }
    });
}

/// Lattice checks on one family, cross-validated against each other and
/// against the meet/join tables.
fn lattice_invariants(spec: &str, family: &[ElementSet]) -> Option<(bool, bool)> {
    let p = lattice::poset_from_family(family).unwrap();
    let l = lattice::lattice_from_poset(p).ok()?;
    let n = l.len();
    for x in 0..n {
        assert_eq!(l.meet(x, x), x);
        assert_eq!(l.join(x, x), x);
        for y in 0..n {
            assert_eq!(l.meet(x, l.join(x, y)), x, "{spec}: absorption");
            assert_eq!(l.join(x, l.meet(x, y)), x, "{spec}: absorption");
        }
    }
    let modular = lattice::check_identity(&l, Identity::Modular).unwrap().holds;
    let distributive = lattice::check_identity(&l, Identity::Distributive).unwrap().holds;
    if distributive {
        assert!(modular, "{spec}: distributive but not modular");
    }
    if n <= lattice::FORBIDDEN_SEARCH_CAP {
        let pentagon = lattice::find_forbidden_sublattice(&l, Shape::Pentagon).unwrap();
        assert_eq!(modular, pentagon.is_none(), "{spec}: modularity vs pentagon");
        if let Some(w) = pentagon {
            assert!(lattice::is_sublattice_of_shape(&l, &w, Shape::Pentagon));
        }
        if distributive {
            assert!(lattice::find_forbidden_sublattice(&l, Shape::Diamond).unwrap().is_none(), "{spec}");
        }
    }
    if lattice::chain_stats(&l.poset).total_order {
        assert!(distributive, "{spec}: chain that is not distributive");
    }
    Some((modular, distributive))
}

#[test]
fn lattices_over_the_catalog() {
    for_catalog(|spec, a| {
        let ideals = a.ideals(Side::TwoSided).unwrap();
        let (modular, distributive) = lattice_invariants(spec, &ideals).expect("ideals form a lattice");
        assert!(modular, "{spec}: ideal lattice is not modular");
        if spec.starts_with('Z') && !spec.contains(" x ") {
            assert!(distributive, "{spec}: divisor lattice is not distributive");
        }
        for mode in [Mode::Strict, Mode::Lax] {
            let fam: Vec<ElementSet> = a
                .s_ideals(SOptions {
                    level: Level::I,
                    mode,
                    include_trivial: true,
                })
                .unwrap()
                .into_iter()
                .map(|v| v.set)
                .collect();
            lattice_invariants(spec, &fam);
        }
    });
}

#[test]
fn cover_ring_lattice_invariants() {
    let a = analysis("Z3 x Z12 x Z7");
    let fam: Vec<ElementSet> = a.s_ideals(SOptions::default()).unwrap().into_iter().map(|v| v.set).collect();
    let (modular, distributive) = lattice_invariants("cover", &fam).unwrap();
    assert!(!modular && !distributive);
    let (modular, _) = lattice_invariants("cover ideals", &a.ideals(Side::TwoSided).unwrap()).unwrap();
    assert!(modular);
}

#[test]
fn one_element_ring() {
    let a = analysis("Z1");
    let r = a.ring();
    assert_eq!(r.cardinality(), 1);
    let c = elements::census(&a).unwrap();
    assert!(c.idempotents.idempotents.is_empty());
    assert!(c.nilpotents.nilpotents.is_empty());
    assert!(c.zero_divisors.zero_divisors.is_empty());
}
