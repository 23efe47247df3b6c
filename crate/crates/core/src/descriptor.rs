//! Textual ring descriptors.
//!
//! ```text
//! spec  := atom | spec "x" spec
//! atom  := "Z" int | "M" int "(" spec ")" | "GR(" spec "," group ")"
//!        | "SR(" spec "," sgrp ")" | "Q(Z" int ")"
//! group := "C" int | "S" int | "D" int
//! sgrp  := "S(" int ")" | "Zn*" int
//! ```
//!
//! Products are left-associative and flattened into one n-ary node, so
//! `Z2 x Z3 x Z5` has three factors. Whitespace is insignificant.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::structure::{GroupSpec, SemigroupSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Zn(usize),
    /// At least two factors, none of which is itself a product.
    Product(Vec<RingDescriptor>),
    Matrix(usize, Box<RingDescriptor>),
    GroupRing(Box<RingDescriptor>, GroupSpec),
    SemigroupRing(Box<RingDescriptor>, SemigroupSpec),
    Quaternion(usize),
}

impl RingDescriptor {
    /// Cardinality of the described ring, or `None` on overflow.
    pub fn cardinality(&self) -> Option<u128> {
        match self {
            RingDescriptor::Quaternion(n) => (*n as u128).checked_pow(4),
            RingDescriptor::Zn(n) => Some(*n as u128),
            RingDescriptor::Product(fs) => fs.iter().try_fold(1u128, |acc, f| acc.checked_mul(f.cardinality()?)),
            RingDescriptor::Matrix(k, base) => base.cardinality()?.checked_pow(u32::try_from(k * k).ok()?),
            RingDescriptor::GroupRing(c, g) => c.cardinality()?.checked_pow(u32::try_from(group_order(g)?).ok()?),
            RingDescriptor::SemigroupRing(c, s) => c.cardinality()?.checked_pow(u32::try_from(semigroup_order(s)?).ok()?),
        }
    }
}

fn group_order(g: &GroupSpec) -> Option<u128> {
    match *g {
        GroupSpec::Cyclic(n) => Some(n as u128),
        GroupSpec::Dihedral(n) => (n as u128).checked_mul(2),
        GroupSpec::Symmetric(n) => (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k)),
    }
}

fn semigroup_order(s: &SemigroupSpec) -> Option<u128> {
    match s {
        SemigroupSpec::SymmetricSemigroup(n) => (*n as u128).checked_pow(u32::try_from(*n).ok()?),
        SemigroupSpec::ZnMultiplicative(n) => Some(*n as u128),
        SemigroupSpec::Explicit(rows) => Some(rows.len() as u128),
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Zn(n) => write!(f, "Z{n}"),
            RingDescriptor::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            RingDescriptor::Matrix(k, base) => write!(f, "M{k}({base})"),
            RingDescriptor::GroupRing(c, g) => write!(f, "GR({c}, {g})"),
            RingDescriptor::SemigroupRing(c, s) => write!(f, "SR({c}, {s})"),
            RingDescriptor::Quaternion(n) => write!(f, "Q(Z{n})"),
        }
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

pub fn parse(text: &str) -> Result<RingDescriptor> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.error("empty ring description"));
    }
    let d = p.spec()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(d)
}

/// A group or semigroup description: `C<n>`, `S<n>`, `D<n>`, `S(<n>)` or
/// `Zn*<n>`.
pub enum StructureSpec {
    Group(GroupSpec),
    Semigroup(SemigroupSpec),
}

pub fn parse_structure(text: &str) -> Result<StructureSpec> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let save = p.pos;
    let s = if p.eat("S(") || p.eat("Zn*") {
        p.pos = save;
        StructureSpec::Semigroup(p.semigroup()?)
    } else {
        StructureSpec::Group(p.group()?)
    };
    if p.peek().is_some() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(s)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{lit}'")))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "integer out of range".into(),
            })
    }

    fn spec(&mut self) -> Result<RingDescriptor> {
        let mut factors = vec![self.atom()?];
        while self.peek() == Some(b'x') {
            self.pos += 1;
            factors.push(self.atom()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            RingDescriptor::Product(factors)
        })
    }

    fn atom(&mut self) -> Result<RingDescriptor> {
        match self.peek() {
            Some(b'Z') => {
                self.pos += 1;
                Ok(RingDescriptor::Zn(self.int()?))
            }
            Some(b'M') => {
                self.pos += 1;
                let k = self.int()?;
                self.expect("(")?;
                let base = self.spec()?;
                self.expect(")")?;
                Ok(RingDescriptor::Matrix(k, Box::new(base)))
            }
            Some(b'G') => {
                self.expect("GR(")?;
                let coeff = self.spec()?;
                self.expect(",")?;
                let g = self.group()?;
                self.expect(")")?;
                Ok(RingDescriptor::GroupRing(Box::new(coeff), g))
            }
            Some(b'S') => {
                self.expect("SR(")?;
                let coeff = self.spec()?;
                self.expect(",")?;
                let s = self.semigroup()?;
                self.expect(")")?;
                Ok(RingDescriptor::SemigroupRing(Box::new(coeff), s))
            }
            Some(b'Q') => {
                self.expect("Q(")?;
                self.expect("Z")?;
                let n = self.int()?;
                self.expect(")")?;
                Ok(RingDescriptor::Quaternion(n))
            }
            Some(b'(') => Err(self.error("unsupported construction: parenthesised product")),
            Some(_) => Err(self.error("unsupported construction")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn group(&mut self) -> Result<GroupSpec> {
        match self.peek() {
            Some(b'C') => {
                self.pos += 1;
                Ok(GroupSpec::Cyclic(self.int()?))
            }
            Some(b'S') => {
                self.pos += 1;
                Ok(GroupSpec::Symmetric(self.int()?))
            }
            Some(b'D') => {
                self.pos += 1;
                Ok(GroupSpec::Dihedral(self.int()?))
            }
            _ => Err(self.error("expected a group (C<n>, S<n> or D<n>)")),
        }
    }

    fn semigroup(&mut self) -> Result<SemigroupSpec> {
        if self.eat("S(") {
            let n = self.int()?;
            self.expect(")")?;
            Ok(SemigroupSpec::SymmetricSemigroup(n))
        } else if self.eat("Zn*") {
            Ok(SemigroupSpec::ZnMultiplicative(self.int()?))
        } else {
            Err(self.error("expected a semigroup (S(<n>) or Zn*<n>)"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_flat() {
        let d = parse("Z3 x Z12 x Z7").unwrap();
        assert_eq!(
            d,
            RingDescriptor::Product(vec![RingDescriptor::Zn(3), RingDescriptor::Zn(12), RingDescriptor::Zn(7)])
        );
        assert_eq!(d.cardinality(), Some(252));
    }

    #[test]
    fn parses_compound_atoms() {
        assert_eq!(
            parse("GR(Z2, S3)").unwrap(),
            RingDescriptor::GroupRing(Box::new(RingDescriptor::Zn(2)), GroupSpec::Symmetric(3))
        );
        let m = parse("M2(Z4)").unwrap();
        assert_eq!(m.cardinality(), Some(256));
        assert_eq!(parse(" SR( Z2 ,S(3) ) ").unwrap().cardinality(), Some(1 << 27));
        assert_eq!(parse("SR(Z3,Zn*4)").unwrap().cardinality(), Some(81));
        assert_eq!(parse("Q(Z3)").unwrap().cardinality(), Some(81));
        assert_eq!(parse("GR(Z2,D4)").unwrap().cardinality(), Some(256));
        assert_eq!(parse("M2(Z2 x Z3)").unwrap().cardinality(), Some(6u128.pow(4)));
    }

    #[test]
    fn errors_carry_positions() {
        match parse("Z3 x Y2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse(""), Err(Error::Parse { .. })));
        assert!(matches!(parse("Z"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse("GR(Z2, X3)"), Err(Error::Parse { .. })));
        assert!(matches!(parse("Z2 Z3"), Err(Error::Parse { .. })));
    }

    #[test]
    fn printing_is_canonical() {
        for s in ["Z3 x Z12 x Z7", "GR(Z2, S3)", "M2(Z4)", "SR(Z2, S(2))", "Q(Z3)", "SR(Z3, Zn*4)"] {
            assert_eq!(parse(s).unwrap().to_string(), s);
        }
    }
}
