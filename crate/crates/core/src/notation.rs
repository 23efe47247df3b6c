//! Textual element, set and family literals.
//!
//! * plain integers are element codes;
//! * `(d0, d1, …)` lists component digits (product factors, matrix entries
//!   in code order, quaternion coordinates `a0 + a1 i + a2 j + a3 k`);
//! * in group and semigroup rings an element is a sum of terms `c*b`, `b`
//!   or `c`, where `c` is a coefficient and the basis element `b` is `1`/`e`
//!   (identity), `g^k` (cyclic), `r^k s^f` (dihedral), `p0`…`p5` (S3), a
//!   one-based image list `[2,3,1]`, or a raw index `u7`;
//! * sets are `{x, y, …}` and families `{{…}, {…}}`.
//!
//! The S3 labels are `p0 = id`, `p1 = [1,3,2]`, `p2 = [3,2,1]`,
//! `p3 = [2,1,3]`, `p4 = [2,3,1]`, `p5 = [3,1,2]`.

use crate::bitset::ElementSet;
use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};
use crate::structure::GroupSpec;

const S3_LABELS: [[usize; 3]; 6] = [[1, 2, 3], [1, 3, 2], [3, 2, 1], [2, 1, 3], [2, 3, 1], [3, 1, 2]];

fn bad(text: &str, why: &str) -> Error {
    Error::InvalidArgument(format!("bad element literal '{text}': {why}"))
}

/// Splits on `sep` outside any brackets.
pub fn split_top(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

fn strip_outer<'a>(text: &'a str, open: char, close: char) -> Option<&'a str> {
    let t = text.trim();
    t.strip_prefix(open)?.strip_suffix(close)
}

fn parse_usize(text: &str, whole: &str) -> Result<usize> {
    text.trim().parse().map_err(|_| bad(whole, "expected a non-negative integer"))
}

pub fn parse_element(r: &Ring, text: &str) -> Result<Elem> {
    let t = text.trim();
    if t.is_empty() {
        return Err(bad(text, "empty"));
    }
    if r.structure().is_some() && r.coefficient_ring().is_some() {
        return parse_convolution(r, t);
    }
    if let Some(inner) = strip_outer(t, '(', ')') {
        let digits = split_top(inner, ',')
            .into_iter()
            .map(|d| parse_usize(d, t))
            .collect::<Result<Vec<_>>>()?;
        return r.encode(&digits);
    }
    let x = parse_usize(t, t)?;
    if x >= r.cardinality() {
        return Err(bad(t, "code out of range"));
    }
    Ok(x)
}

fn group_spec(r: &Ring) -> Option<&GroupSpec> {
    match r.descriptor()? {
        RingDescriptor::GroupRing(_, g) => Some(g),
        _ => None,
    }
}

fn parse_basis(r: &Ring, b: &str, whole: &str) -> Result<usize> {
    let s = r.structure().expect("convolution ring");
    let b = b.trim();
    if b == "1" || b == "e" {
        return s.identity().ok_or_else(|| bad(whole, "structure has no identity"));
    }
    if let Some(k) = b.strip_prefix('u') {
        let k = parse_usize(k, whole)?;
        return if k < s.size() { Ok(k) } else { Err(bad(whole, "structure index out of range")) };
    }
    if let Some(inner) = strip_outer(b, '[', ']') {
        let images = split_top(inner, ',')
            .into_iter()
            .map(|d| parse_usize(d, whole).and_then(|v| v.checked_sub(1).ok_or_else(|| bad(whole, "images are one-based"))))
            .collect::<Result<Vec<_>>>()?;
        return s.element_of_map(&images).ok_or_else(|| bad(whole, "no such map"));
    }
    match group_spec(r) {
        Some(GroupSpec::Symmetric(3)) if b.starts_with('p') => {
            let k = parse_usize(&b[1..], whole)?;
            let label = S3_LABELS.get(k).ok_or_else(|| bad(whole, "S3 labels are p0..p5"))?;
            let images: Vec<usize> = label.iter().map(|v| v - 1).collect();
            s.element_of_map(&images).ok_or_else(|| bad(whole, "no such permutation"))
        }
        Some(&GroupSpec::Cyclic(n)) if b.starts_with('g') => Ok(exponent(&b[1..], whole)? % n),
        Some(&GroupSpec::Dihedral(n)) if b.starts_with('r') || b.starts_with('s') => {
            let (rot, flip) = match b.find('s') {
                Some(i) => (&b[..i], exponent(&b[i + 1..], whole)?),
                None => (b, 0),
            };
            let k = if rot.is_empty() { 0 } else { exponent(&rot[1..], whole)? };
            Ok(k % n + n * (flip % 2))
        }
        _ => Err(bad(whole, "unknown basis element")),
    }
}

/// `""` → 1, `"^k"` → k.
fn exponent(text: &str, whole: &str) -> Result<usize> {
    let t = text.trim();
    if t.is_empty() {
        Ok(1)
    } else {
        parse_usize(t.strip_prefix('^').ok_or_else(|| bad(whole, "expected ^"))?, whole)
    }
}

fn parse_convolution(r: &Ring, t: &str) -> Result<Elem> {
    let coeff = r.coefficient_ring().expect("convolution ring");
    let size = r.structure().expect("convolution ring").size();
    let mut digits = vec![coeff.zero(); size];
    if t == "0" {
        return r.encode(&digits);
    }
    for term in split_top(t, '+') {
        let term = term.trim();
        let (c, b) = match split_top(term, '*').as_slice() {
            [c, b] => (parse_element(coeff, c)?, parse_basis(r, b, t)?),
            [only] if only.trim().chars().all(|ch| ch.is_ascii_digit()) => {
                let one = r.structure().unwrap().identity().ok_or_else(|| bad(t, "structure has no identity"))?;
                (parse_element(coeff, only)?, one)
            }
            [only] => (coeff.one().ok_or_else(|| bad(t, "coefficients have no 1"))?, parse_basis(r, only, t)?),
            _ => return Err(bad(t, "malformed term")),
        };
        digits[b] = coeff.add(digits[b], c);
    }
    r.encode(&digits)
}

/// `{x, y, …}` (braces optional).
pub fn parse_elements(r: &Ring, text: &str) -> Result<Vec<Elem>> {
    let inner = strip_outer(text, '{', '}').unwrap_or(text.trim());
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    split_top(inner, ',').into_iter().map(|e| parse_element(r, e)).collect()
}

pub fn parse_set(r: &Ring, text: &str) -> Result<ElementSet> {
    Ok(ElementSet::from_elements(r.cardinality(), parse_elements(r, text)?))
}

/// `{{…}, {…}}`.
pub fn parse_family(r: &Ring, text: &str) -> Result<Vec<ElementSet>> {
    let inner = strip_outer(text, '{', '}').ok_or_else(|| Error::InvalidArgument(format!("bad family literal '{text}'")))?;
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    split_top(inner, ',').into_iter().map(|s| parse_set(r, s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(spec: &str) -> Ring {
        Ring::construct(&spec.parse().unwrap()).unwrap()
    }

    #[test]
    fn plain_and_tuples() {
        let r = ring("Z3 x Z12 x Z7");
        assert_eq!(parse_element(&r, "(0,6,0)").unwrap(), r.encode(&[0, 6, 0]).unwrap());
        assert_eq!(parse_element(&r, "5").unwrap(), 5);
        assert!(parse_element(&r, "252").is_err());
        assert_eq!(parse_elements(&r, "{(1,0,0), (0,0,1)}").unwrap().len(), 2);
    }

    #[test]
    fn group_ring_terms() {
        let r = ring("GR(Z2, S3)");
        let x = parse_element(&r, "1 + p4 + p5").unwrap();
        let y = parse_element(&r, "p0 + [2,3,1] + [3,1,2]").unwrap();
        assert_eq!(x, y);
        // 1 + p4 + p5 is idempotent: p4 and p5 are mutually inverse 3-cycles
        assert_eq!(r.mul(x, x), x);
        let t = parse_element(&r, "1 + p1").unwrap();
        assert_eq!(r.mul(t, t), 0);
        let c = ring("GR(Z2, C3)");
        let u = parse_element(&c, "1 + g^2").unwrap();
        assert_eq!(c.decode(u).unwrap(), vec![1, 0, 1]);
        let z = ring("GR(Z3, C2)");
        assert_eq!(z.decode(parse_element(&z, "2 + 2*g").unwrap()).unwrap(), vec![2, 2]);
        let d = ring("GR(Z2, D3)");
        assert_eq!(parse_element(&d, "r^2 s").unwrap(), d.encode(&[0, 0, 0, 0, 0, 1]).unwrap());
    }

    #[test]
    fn families() {
        let r = ring("Z12");
        let f = parse_family(&r, "{{0,6}, {0,4,8}}").unwrap();
        assert_eq!(f[1].to_vec(), vec![0, 4, 8]);
        assert!(parse_family(&r, "{}").unwrap().is_empty());
    }
}
