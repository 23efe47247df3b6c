//! Finite rings with canonical element codes.
//!
//! Every ring element is a `usize` code in `0..cardinality`. Structured
//! rings (products, matrix rings, group and semigroup rings, quaternions)
//! use a little-endian mixed-radix code over their component or coefficient
//! vector: component 0 is the least significant digit. The zero element is
//! always code 0 for structured rings.
//!
//! Rings up to `Limits::table_cap` elements cache full addition and
//! multiplication tables; larger rings evaluate arithmetic on demand.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::structure::{self, CayleyStructure, StructureKind, StructureLimits};

/// A ring element, identified by its canonical code.
pub type Elem = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest cardinality for which whole-ring enumeration is allowed.
    pub enumeration_cap: usize,
    /// Largest cardinality whose axioms are audited on every triple.
    pub validation_cap: usize,
    /// Largest cardinality whose operation tables are cached.
    pub table_cap: usize,
    /// Hard cap on the number of subsets in any enumerated family.
    pub family_cap: usize,
    /// Random triples sampled by the audit above `validation_cap`.
    pub audit_samples: usize,
    /// Largest cardinality representable at all.
    pub max_cardinality: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            enumeration_cap: 4096,
            validation_cap: 256,
            table_cap: 1024,
            family_cap: 1_000_000,
            audit_samples: 100_000,
            max_cardinality: 1 << 48,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Zn,
    Product,
    Matrix,
    GroupRing,
    SemigroupRing,
    Quaternion,
    Quotient,
    Table,
    Subring,
}

#[derive(Clone)]
enum Repr {
    Zn {
        n: usize,
    },
    Product {
        factors: Vec<Ring>,
    },
    Matrix {
        base: Ring,
        k: usize,
    },
    Convolution {
        coeff: Ring,
        structure: Arc<CayleyStructure>,
    },
    Quaternion {
        n: usize,
    },
    Table,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

struct RingData {
    label: String,
    descriptor: Option<RingDescriptor>,
    construction: Construction,
    repr: Repr,
    cardinality: usize,
    zero: Elem,
    one: Option<Elem>,
    limits: Limits,
    tables: Option<Tables>,
}

/// Shared handle to an immutable finite ring.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("label", &self.0.label)
            .field("cardinality", &self.0.cardinality)
            .field("construction", &self.0.construction)
            .finish()
    }
}

impl Ring {
    fn assemble(
        label: String,
        construction: Construction,
        repr: Repr,
        cardinality: usize,
        limits: Limits,
        tables: Option<Tables>,
        zero: Elem,
    ) -> Ring {
        let mut data = RingData {
            label,
            descriptor: None,
            construction,
            repr,
            cardinality,
            zero,
            one: None,
            limits,
            tables: None,
        };
        if tables.is_none() && cardinality <= limits.table_cap && !matches!(data.repr, Repr::Table) {
            data.tables = Some(build_tables(&data));
        } else {
            data.tables = tables;
        }
        data.one = find_one(&data);
        Ring(Arc::new(data))
    }

    pub fn zn(n: usize) -> Result<Ring> {
        Self::zn_with(n, Limits::default())
    }

    pub fn zn_with(n: usize, limits: Limits) -> Result<Ring> {
        if n < 1 {
            return Err(Error::InvalidArgument("Z_n needs n >= 1".into()));
        }
        check_cardinality(n as u128, &limits)?;
        Ok(Self::assemble(format!("Z{n}"), Construction::Zn, Repr::Zn { n }, n, limits, None, 0))
    }

    pub fn product(factors: Vec<Ring>) -> Result<Ring> {
        let limits = factors.first().map(|r| r.limits()).unwrap_or_default();
        Self::product_with(factors, limits)
    }

    pub fn product_with(factors: Vec<Ring>, limits: Limits) -> Result<Ring> {
        if factors.len() < 2 {
            return Err(Error::InvalidArgument("a direct product needs at least two factors".into()));
        }
        let card = factors.iter().try_fold(1u128, |acc, r| acc.checked_mul(r.cardinality() as u128));
        let card = check_cardinality(card.unwrap_or(u128::MAX), &limits)?;
        let label = factors.iter().map(|r| r.label().to_string()).collect::<Vec<_>>().join(" x ");
        Ok(Self::assemble(label, Construction::Product, Repr::Product { factors }, card, limits, None, 0))
    }

    pub fn matrix(base: Ring, k: usize) -> Result<Ring> {
        let limits = base.limits();
        if k < 1 {
            return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
        }
        let card = (base.cardinality() as u128).checked_pow((k * k) as u32);
        let card = check_cardinality(card.unwrap_or(u128::MAX), &limits)?;
        let label = format!("M{k}({})", base.label());
        Ok(Self::assemble(label, Construction::Matrix, Repr::Matrix { base, k }, card, limits, None, 0))
    }

    /// Group ring (or semigroup ring) with coefficients in `coeff`:
    /// multiplication is convolution over the structure's Cayley table.
    pub fn convolution(coeff: Ring, structure: Arc<CayleyStructure>) -> Result<Ring> {
        let limits = coeff.limits();
        let card = (coeff.cardinality() as u128).checked_pow(structure.size() as u32);
        let card = check_cardinality(card.unwrap_or(u128::MAX), &limits)?;
        let (construction, label) = match structure.kind() {
            StructureKind::Group => (Construction::GroupRing, format!("GR({}, {})", coeff.label(), structure.label())),
            StructureKind::Semigroup => (Construction::SemigroupRing, format!("SR({}, {})", coeff.label(), structure.label())),
        };
        Ok(Self::assemble(label, construction, Repr::Convolution { coeff, structure }, card, limits, None, 0))
    }

    /// Quaternions over `Z_n`: coefficient 4-tuples `(1, i, j, k)` with
    /// `i² = j² = k² = -1`, `ij = k = -ji`, `jk = i = -kj`, `ki = j = -ik`.
    pub fn quaternion(n: usize) -> Result<Ring> {
        Self::quaternion_with(n, Limits::default())
    }

    pub fn quaternion_with(n: usize, limits: Limits) -> Result<Ring> {
        if n < 2 {
            return Err(Error::InvalidArgument("quaternion ring needs n >= 2".into()));
        }
        let card = check_cardinality((n as u128).pow(4), &limits)?;
        Ok(Self::assemble(format!("Q(Z{n})"), Construction::Quaternion, Repr::Quaternion { n }, card, limits, None, 0))
    }

    /// A ring given by explicit operation tables, with the axioms audited.
    pub fn from_tables(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Result<Ring> {
        let ring = Self::from_tables_unchecked("table", add, mul)?;
        let report = crate::audit::ring_axiom_audit(&ring);
        match report.violations.first() {
            None => Ok(ring),
            Some(v) => Err(Error::AxiomViolation {
                axiom: v.axiom.to_string(),
                witness: v.witness.clone(),
            }),
        }
    }

    /// Like [`Ring::from_tables`] but without the axiom audit; used for
    /// negative-control fixtures.
    pub fn from_tables_unchecked(label: &str, add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Result<Ring> {
        let n = add.len();
        if n == 0 || mul.len() != n {
            return Err(Error::InvalidArgument("tables must be square and of equal size".into()));
        }
        let flatten = |t: Vec<Vec<usize>>| -> Result<Vec<u32>> {
            let mut out = Vec::with_capacity(n * n);
            for (i, row) in t.into_iter().enumerate() {
                if row.len() != n {
                    return Err(Error::InvalidArgument(format!("row {i} has wrong length")));
                }
                for v in row {
                    if v >= n {
                        return Err(Error::InvalidArgument(format!("entry {v} out of range")));
                    }
                    out.push(v as u32);
                }
            }
            Ok(out)
        };
        let add = flatten(add)?;
        let mul = flatten(mul)?;
        Self::from_flat_tables(label.to_string(), Construction::Table, add, mul, Limits::default())
    }

    fn from_flat_tables(label: String, construction: Construction, add: Vec<u32>, mul: Vec<u32>, limits: Limits) -> Result<Ring> {
        let n = (add.len() as f64).sqrt() as usize;
        let zero = (0..n)
            .find(|&z| (0..n).all(|a| add[z * n + a] as usize == a))
            .ok_or_else(|| Error::AxiomViolation {
                axiom: "additive identity".into(),
                witness: vec![],
            })?;
        let neg = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| add[a * n + b] as usize == zero)
                    .map(|b| b as u32)
                    .ok_or_else(|| Error::AxiomViolation {
                        axiom: "additive inverse".into(),
                        witness: vec![a],
                    })
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(Self::assemble(label, construction, Repr::Table, n, limits, Some(Tables { add, mul, neg }), zero))
    }

    pub fn construct(desc: &RingDescriptor) -> Result<Ring> {
        Self::construct_with(desc, Limits::default())
    }

    pub fn construct_with(desc: &RingDescriptor, limits: Limits) -> Result<Ring> {
        let card = desc.cardinality().unwrap_or(u128::MAX);
        check_cardinality(card, &limits)?;
        let ring = match desc {
            RingDescriptor::Zn(n) => Self::zn_with(*n, limits)?,
            RingDescriptor::Product(fs) => {
                let factors = fs.iter().map(|f| Self::construct_with(f, limits)).collect::<Result<Vec<_>>>()?;
                Self::product_with(factors, limits)?
            }
            RingDescriptor::Matrix(k, base) => Self::matrix(Self::construct_with(base, limits)?, *k)?,
            RingDescriptor::GroupRing(coeff, g) => {
                let coeff = Self::construct_with(coeff, limits)?;
                let s = structure::build_group_with(g, &structure_limits(&limits))?;
                Self::convolution(coeff, Arc::new(s))?
            }
            RingDescriptor::SemigroupRing(coeff, s) => {
                let coeff = Self::construct_with(coeff, limits)?;
                let s = structure::build_semigroup_with(s, &structure_limits(&limits))?;
                Self::convolution(coeff, Arc::new(s))?
            }
            RingDescriptor::Quaternion(n) => Self::quaternion_with(*n, limits)?,
        };
        let mut data = Arc::try_unwrap(ring.0).unwrap_or_else(|_| unreachable!("fresh ring is uniquely owned"));
        data.label = desc.to_string();
        data.descriptor = Some(desc.clone());
        Ok(Ring(Arc::new(data)))
    }

    #[inline]
    pub fn cardinality(&self) -> usize {
        self.0.cardinality
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn descriptor(&self) -> Option<&RingDescriptor> {
        self.0.descriptor.as_ref()
    }

    pub fn construction(&self) -> Construction {
        self.0.construction
    }

    pub fn limits(&self) -> Limits {
        self.0.limits
    }

    pub fn is_enumerable(&self) -> bool {
        self.0.cardinality <= self.0.limits.enumeration_cap
    }

    /// Errors with a capacity error unless the ring may be enumerated.
    pub fn require_enumerable(&self, what: &str) -> Result<()> {
        if self.is_enumerable() {
            Ok(())
        } else {
            Err(Error::capacity(
                format!("{what} on {}", self.label()),
                self.0.cardinality as u128,
                self.0.limits.enumeration_cap as u128,
            ))
        }
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.0.zero
    }

    #[inline]
    pub fn one(&self) -> Option<Elem> {
        self.0.one
    }

    pub fn require_one(&self) -> Result<Elem> {
        self.0.one.ok_or(Error::NoIdentity)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.0.cardinality
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.0.cardinality)
    }

    pub fn zero_set(&self) -> ElementSet {
        ElementSet::singleton(self.0.cardinality, self.0.zero)
    }

    pub fn factors(&self) -> Option<&[Ring]> {
        match &self.0.repr {
            Repr::Product { factors } => Some(factors),
            _ => None,
        }
    }

    /// Group or semigroup underlying a group/semigroup ring.
    pub fn structure(&self) -> Option<&CayleyStructure> {
        match &self.0.repr {
            Repr::Convolution { structure, .. } => Some(structure),
            _ => None,
        }
    }

    pub fn coefficient_ring(&self) -> Option<&Ring> {
        match &self.0.repr {
            Repr::Convolution { coeff, .. } => Some(coeff),
            Repr::Matrix { base, .. } => Some(base),
            _ => None,
        }
    }

    /// The ring of each digit of an element code, for structured rings.
    /// Quaternion digits live in `Z_n`.
    pub fn digit_rings(&self) -> Option<Vec<Ring>> {
        match &self.0.repr {
            Repr::Product { factors } => Some(factors.clone()),
            Repr::Matrix { base, k } => Some(vec![base.clone(); k * k]),
            Repr::Convolution { coeff, structure } => Some(vec![coeff.clone(); structure.size()]),
            Repr::Quaternion { n } => Some(vec![Ring::zn_with(*n, self.limits()).ok()?; 4]),
            _ => None,
        }
    }

    /// Code of the element with the given digits.
    pub fn encode(&self, digits: &[Elem]) -> Result<Elem> {
        let rings = self
            .digit_rings()
            .ok_or_else(|| Error::InvalidArgument(format!("{} has no component encoding", self.label())))?;
        if rings.len() != digits.len() {
            return Err(Error::InvalidArgument(format!(
                "{} elements have {} components, got {}",
                self.label(),
                rings.len(),
                digits.len()
            )));
        }
        let mut code = 0usize;
        for (r, &d) in rings.iter().zip(digits).rev() {
            if d >= r.cardinality() {
                return Err(Error::InvalidArgument(format!("component {d} out of range for {}", r.label())));
            }
            code = code * r.cardinality() + d;
        }
        Ok(code)
    }

    pub fn decode(&self, x: Elem) -> Option<Vec<Elem>> {
        let radices: Vec<usize> = match &self.0.repr {
            Repr::Product { factors } => factors.iter().map(|f| f.cardinality()).collect(),
            Repr::Matrix { base, k } => vec![base.cardinality(); k * k],
            Repr::Convolution { coeff, structure } => vec![coeff.cardinality(); structure.size()],
            Repr::Quaternion { n } => vec![*n; 4],
            _ => return None,
        };
        Some(digits_of(x, &radices))
    }

    /// Human-readable rendering of an element: residues for `Z_n`, tuples
    /// for products, bracketed digit vectors for the other structured rings.
    pub fn format_element(&self, x: Elem) -> String {
        match &self.0.repr {
            Repr::Product { factors } => {
                let d = self.decode(x).unwrap();
                let parts: Vec<String> = factors.iter().zip(d).map(|(f, e)| f.format_element(e)).collect();
                format!("({})", parts.join(","))
            }
            Repr::Matrix { .. } | Repr::Convolution { .. } | Repr::Quaternion { .. } => {
                let rings = self.digit_rings().unwrap();
                let d = self.decode(x).unwrap();
                let parts: Vec<String> = rings.iter().zip(d).map(|(f, e)| f.format_element(e)).collect();
                format!("[{}]", parts.join(","))
            }
            _ => x.to_string(),
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => t.add[a * self.0.cardinality + b] as Elem,
            None => compute_add(&self.0, a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => t.mul[a * self.0.cardinality + b] as Elem,
            None => compute_mul(&self.0, a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => t.neg[a] as Elem,
            None => compute_neg(&self.0, a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `x^k` for `k >= 1`.
    pub fn pow(&self, x: Elem, k: u64) -> Elem {
        assert!(k >= 1, "pow needs a positive exponent");
        let mut result: Option<Elem> = None;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base,
                    Some(r) => self.mul(r, base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(base, base);
            }
        }
        result.unwrap()
    }

    /// `k·x`, the k-fold sum of `x` (0 for k = 0).
    pub fn times(&self, k: u64, x: Elem) -> Elem {
        let mut result = self.zero();
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.add(result, base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add(base, base);
            }
        }
        result
    }

    /// `1 + 1` when the ring has a one.
    pub fn two(&self) -> Option<Elem> {
        self.one().map(|o| self.add(o, o))
    }

    pub fn additive_order(&self, x: Elem) -> u64 {
        let mut k = 1u64;
        let mut acc = x;
        while acc != self.zero() {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.cardinality();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The ring obtained by restricting the operations to `subset`, which
    /// must be closed under addition, negation and multiplication. Elements
    /// of the result are indexed in ascending order of their codes in `self`;
    /// the returned vector maps new codes back to codes of `self`.
    pub fn restrict(&self, subset: &ElementSet, label: &str) -> Result<(Ring, Vec<Elem>)> {
        let members = subset.to_vec();
        let m = members.len();
        let mut index = vec![u32::MAX; self.cardinality()];
        for (i, &x) in members.iter().enumerate() {
            index[x] = i as u32;
        }
        let lookup = |v: Elem| -> Result<u32> {
            match index[v] {
                u32::MAX => Err(Error::InvalidArgument(format!("subset of {} is not a subring", self.label()))),
                i => Ok(i),
            }
        };
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for &a in &members {
            for &b in &members {
                add.push(lookup(self.add(a, b))?);
                mul.push(lookup(self.mul(a, b))?);
            }
        }
        let ring = Self::from_flat_tables(label.to_string(), Construction::Subring, add, mul, self.limits())?;
        Ok((ring, members))
    }
}

pub(crate) fn structure_limits(limits: &Limits) -> StructureLimits {
    StructureLimits {
        family_cap: limits.family_cap,
        ..StructureLimits::default()
    }
}

fn check_cardinality(card: u128, limits: &Limits) -> Result<usize> {
    if card > limits.max_cardinality {
        Err(Error::capacity("ring cardinality", card, limits.max_cardinality))
    } else {
        Ok(card as usize)
    }
}

fn digits_of(mut x: usize, radices: &[usize]) -> Vec<usize> {
    radices
        .iter()
        .map(|&r| {
            let d = x % r;
            x /= r;
            d
        })
        .collect()
}

fn encode_digits(digits: &[usize], radix: usize) -> usize {
    digits.iter().rev().fold(0usize, |acc, &d| acc * radix + d)
}

fn build_tables(data: &RingData) -> Tables {
    let n = data.cardinality;
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add.push(compute_add(data, a, b) as u32);
            mul.push(compute_mul(data, a, b) as u32);
        }
    }
    let neg = (0..n).map(|a| compute_neg(data, a) as u32).collect();
    Tables { add, mul, neg }
}

fn find_one(data: &RingData) -> Option<Elem> {
    let n = data.cardinality;
    match &data.repr {
        Repr::Zn { n } => Some(1 % n),
        Repr::Product { factors } => {
            let ones = factors.iter().map(|f| f.one()).collect::<Option<Vec<_>>>()?;
            let mut code = 0;
            for (f, o) in factors.iter().zip(ones).rev() {
                code = code * f.cardinality() + o;
            }
            Some(code)
        }
        Repr::Matrix { base, k } => {
            let o = base.one()?;
            let digits: Vec<usize> = (0..k * k).map(|i| if i / k == i % k { o } else { base.zero() }).collect();
            Some(encode_digits(&digits, base.cardinality()))
        }
        Repr::Convolution { coeff, structure } => {
            let o = coeff.one()?;
            let e = structure.identity()?;
            let mut digits = vec![coeff.zero(); structure.size()];
            digits[e] = o;
            Some(encode_digits(&digits, coeff.cardinality()))
        }
        Repr::Quaternion { n } => Some(1 % n),
        Repr::Table => {
            let t = data.tables.as_ref()?;
            (0..n).find(|&e| (0..n).all(|a| t.mul[e * n + a] as usize == a && t.mul[a * n + e] as usize == a))
        }
    }
}

fn compute_add(data: &RingData, a: Elem, b: Elem) -> Elem {
    match &data.repr {
        Repr::Zn { n } => (a + b) % n,
        Repr::Quaternion { n } => {
            let (da, db) = (digits_of(a, &[*n; 4]), digits_of(b, &[*n; 4]));
            let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % n).collect();
            encode_digits(&s, *n)
        }
        Repr::Product { factors } => {
            let mut code = 0;
            let mut weight = 1;
            let (mut a, mut b) = (a, b);
            for f in factors {
                let c = f.cardinality();
                code += weight * f.add(a % c, b % c);
                a /= c;
                b /= c;
                weight *= c;
            }
            code
        }
        Repr::Matrix { base, .. } | Repr::Convolution { coeff: base, .. } => {
            let c = base.cardinality();
            let mut code = 0;
            let mut weight = 1;
            let (mut a, mut b) = (a, b);
            while a > 0 || b > 0 {
                code += weight * base.add(a % c, b % c);
                a /= c;
                b /= c;
                weight *= c;
            }
            code
        }
        Repr::Table => unreachable!("table rings always carry tables"),
    }
}

fn compute_neg(data: &RingData, a: Elem) -> Elem {
    match &data.repr {
        Repr::Zn { n } => (n - a) % n,
        Repr::Quaternion { n } => {
            let d: Vec<usize> = digits_of(a, &[*n; 4]).iter().map(|x| (n - x) % n).collect();
            encode_digits(&d, *n)
        }
        Repr::Product { factors } => {
            let mut code = 0;
            let mut weight = 1;
            let mut a = a;
            for f in factors {
                let c = f.cardinality();
                code += weight * f.neg(a % c);
                a /= c;
                weight *= c;
            }
            code
        }
        Repr::Matrix { base, .. } | Repr::Convolution { coeff: base, .. } => {
            let c = base.cardinality();
            let mut code = 0;
            let mut weight = 1;
            let mut a = a;
            while a > 0 {
                code += weight * base.neg(a % c);
                a /= c;
                weight *= c;
            }
            code
        }
        Repr::Table => unreachable!("table rings always carry tables"),
    }
}

fn compute_mul(data: &RingData, a: Elem, b: Elem) -> Elem {
    match &data.repr {
        Repr::Zn { n } => ((a as u128 * b as u128) % *n as u128) as usize,
        Repr::Quaternion { n } => {
            let n = *n;
            let x = digits_of(a, &[n; 4]);
            let y = digits_of(b, &[n; 4]);
            let m = |p: usize, q: usize| (x[p] * y[q]) % n;
            let neg = |v: usize| (n - v) % n;
            let r = (m(0, 0) + neg(m(1, 1)) + neg(m(2, 2)) + neg(m(3, 3))) % n;
            let i = (m(0, 1) + m(1, 0) + m(2, 3) + neg(m(3, 2))) % n;
            let j = (m(0, 2) + neg(m(1, 3)) + m(2, 0) + m(3, 1)) % n;
            let k = (m(0, 3) + m(1, 2) + neg(m(2, 1)) + m(3, 0)) % n;
            encode_digits(&[r, i, j, k], n)
        }
        Repr::Product { factors } => {
            let mut code = 0;
            let mut weight = 1;
            let (mut a, mut b) = (a, b);
            for f in factors {
                let c = f.cardinality();
                code += weight * f.mul(a % c, b % c);
                a /= c;
                b /= c;
                weight *= c;
            }
            code
        }
        Repr::Matrix { base, k } => {
            let k = *k;
            let c = base.cardinality();
            let x = digits_of(a, &vec![c; k * k]);
            let y = digits_of(b, &vec![c; k * k]);
            let mut z = vec![base.zero(); k * k];
            for r in 0..k {
                for col in 0..k {
                    let mut acc = base.zero();
                    for t in 0..k {
                        acc = base.add(acc, base.mul(x[r * k + t], y[t * k + col]));
                    }
                    z[r * k + col] = acc;
                }
            }
            encode_digits(&z, c)
        }
        Repr::Convolution { coeff, structure } => {
            let c = coeff.cardinality();
            let g = structure.size();
            let x = digits_of(a, &vec![c; g]);
            let y = digits_of(b, &vec![c; g]);
            let zero = coeff.zero();
            let mut z = vec![zero; g];
            for (p, &xp) in x.iter().enumerate().filter(|(_, &v)| v != zero) {
                for (q, &yq) in y.iter().enumerate().filter(|(_, &v)| v != zero) {
                    let t = structure.op(p, q);
                    z[t] = coeff.add(z[t], coeff.mul(xp, yq));
                }
            }
            encode_digits(&z, c)
        }
        Repr::Table => unreachable!("table rings always carry tables"),
    }
}

/// Least `m >= 1` with `m·x = 0` for every `x`: the exponent of `(R, +)`.
pub fn characteristic(r: &Ring) -> Result<u64> {
    r.require_enumerable("characteristic")?;
    let mut m = 1u64;
    for x in r.elements() {
        let o = r.additive_order(x);
        m = lcm(m, o);
    }
    Ok(m)
}

/// Additive exponent of a subset closed under addition.
pub fn additive_exponent(r: &Ring, s: &ElementSet) -> u64 {
    s.iter().fold(1, |m, x| lcm(m, r.additive_order(x)))
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// A quotient ring `R/I` together with its coset bookkeeping.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub ring: Ring,
    /// Least code of each coset, in ascending order; quotient element `i`
    /// is the coset of `representatives[i]`.
    pub representatives: Vec<Elem>,
    /// Quotient element of each element of the parent ring.
    pub class_of: Vec<usize>,
}

/// `R / I` for a two-sided ideal `I`; elements are the cosets, represented
/// by their least element code.
pub fn quotient_ring(r: &Ring, ideal: &ElementSet) -> Result<Quotient> {
    r.require_enumerable("quotient ring")?;
    if !is_two_sided_ideal(r, ideal) {
        return Err(Error::NotAnIdeal);
    }
    let n = r.cardinality();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for i in ideal.iter() {
            class_of[r.add(x, i)] = c;
        }
    }
    let k = reps.len();
    let mut add = Vec::with_capacity(k * k);
    let mut mul = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            add.push(class_of[r.add(a, b)] as u32);
            mul.push(class_of[r.mul(a, b)] as u32);
        }
    }
    let label = format!("{}/I{}", r.label(), ideal.len());
    let ring = Ring::from_flat_tables(label, Construction::Quotient, add, mul, r.limits())?;
    Ok(Quotient {
        ring,
        representatives: reps,
        class_of,
    })
}

pub(crate) fn is_additive_subgroup(r: &Ring, s: &ElementSet) -> bool {
    s.contains(r.zero()) && s.iter().all(|a| s.contains(r.neg(a)) && s.iter().all(|b| s.contains(r.add(a, b))))
}

pub(crate) fn is_two_sided_ideal(r: &Ring, s: &ElementSet) -> bool {
    is_additive_subgroup(r, s) && s.iter().all(|a| r.elements().all(|x| s.contains(r.mul(x, a)) && s.contains(r.mul(a, x))))
}
