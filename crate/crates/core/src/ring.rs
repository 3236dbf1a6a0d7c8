//! The integral group ring `ZG`.
//!
//! Elements are finite sums `sum c_g g` stored in a `BTreeMap` keyed by the
//! canonical ordering of [`GroupElement`], with zero coefficients never
//! stored. Multiplication needs the ambient [`Group`] and is therefore a
//! method taking it explicitly; the additive structure uses the `std::ops`
//! traits.
//!
//! # Text grammar
//!
//! ```text
//! element := ["-"] term (("+" | "-") term)*
//! term    := factor ("*" factor)*
//! factor  := INTEGER | atom ["^" ["-"] INTEGER]
//! atom    := "a1" | "b1" | "a2" | "x" | "y" | "v"
//! ```
//!
//! Rendering prints terms in canonical order as `c*w*x^i*y^j`, omitting unit
//! coefficients and zero exponents, e.g. `-1 + 2*a1*y^-1`; the zero element
//! renders as `0`. Parsing accepts any product of atoms and evaluates it in
//! the group, so every rendered element parses back to itself.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::group::{Generator, Group, GroupElement, Int};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("augmentation must vanish, got {0}")]
    AugmentationNonzero(Int),
    #[error("cannot parse group-ring element at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRingElement {
    terms: BTreeMap<GroupElement, Int>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(GroupElement::identity())
    }

    pub fn monomial(coeff: impl Into<Int>, g: GroupElement) -> Self {
        let mut e = Self::zero();
        e.add_term(g, coeff.into());
        e
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (GroupElement, Int)>,
    {
        let mut e = Self::zero();
        for (g, c) in terms {
            e.add_term(g, c);
        }
        e
    }

    pub fn add_term(&mut self, g: GroupElement, c: Int) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Int)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &GroupElement) -> Int {
        self.terms.get(g).cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GroupRingElement { terms: self.terms.iter().map(|(g, v)| (g.clone(), v * c)).collect() }
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> Int {
        self.terms.values().sum()
    }

    /// `sum c_g g -> sum c_g g^-1`.
    pub fn antipode(&self, group: &Group) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, c)| (group.inverse(g), c.clone())))
    }

    pub fn mul(&self, other: &Self, group: &Group) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            for (h, d) in &other.terms {
                out.add_term(group.multiply(g, h), c * d);
            }
        }
        out
    }

    /// `g * self`.
    pub fn left_mul(&self, g: &GroupElement, group: &Group) -> Self {
        Self::from_terms(self.terms.iter().map(|(h, c)| (group.multiply(g, h), c.clone())))
    }

    /// `self * g`.
    pub fn right_mul(&self, g: &GroupElement, group: &Group) -> Self {
        Self::from_terms(self.terms.iter().map(|(h, c)| (group.multiply(h, g), c.clone())))
    }

    pub fn parse(text: &str, group: &Group) -> Result<Self, RingError> {
        Parser { src: text.as_bytes(), pos: 0, group }.element()
    }
}

impl From<GroupElement> for GroupRingElement {
    fn from(g: GroupElement) -> Self {
        Self::monomial(1, g)
    }
}

impl AddAssign<&GroupRingElement> for GroupRingElement {
    fn add_assign(&mut self, rhs: &GroupRingElement) {
        for (g, c) in &rhs.terms {
            self.add_term(g.clone(), c.clone());
        }
    }
}

impl SubAssign<&GroupRingElement> for GroupRingElement {
    fn sub_assign(&mut self, rhs: &GroupRingElement) {
        for (g, c) in &rhs.terms {
            self.add_term(g.clone(), -c.clone());
        }
    }
}

impl Add<&GroupRingElement> for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for GroupRingElement {
    type Output = GroupRingElement;
    fn add(mut self, rhs: GroupRingElement) -> GroupRingElement {
        self += &rhs;
        self
    }
}

impl Sub<&GroupRingElement> for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for GroupRingElement {
    type Output = GroupRingElement;
    fn sub(mut self, rhs: GroupRingElement) -> GroupRingElement {
        self -= &rhs;
        self
    }
}

impl Neg for GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement { terms: self.terms.into_iter().map(|(g, c)| (g, -c)).collect() }
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        -self.clone()
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (g, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if g.is_identity() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{g}")?;
            } else {
                write!(f, "{mag}*{g}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    group: &'a Group,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, RingError> {
        Err(RingError::Parse { pos: self.pos, msg: msg.into() })
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

    fn integer(&mut self) -> Result<Int, RingError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn element(&mut self) -> Result<GroupRingElement, RingError> {
        let mut out = GroupRingElement::zero();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negative = true;
        }
        loop {
            let (c, g) = self.term()?;
            out.add_term(g, if negative { -c } else { c });
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return self.err("expected '+' or '-'"),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Int, GroupElement), RingError> {
        let mut coeff = Int::one();
        let mut elem = GroupElement::identity();
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_digit() => coeff *= self.integer()?,
                Some(_) => {
                    let atom = self.atom()?;
                    let exp = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let neg = self.peek() == Some(b'-');
                        if neg {
                            self.pos += 1;
                        }
                        let n = self.integer()?;
                        if neg {
                            -n
                        } else {
                            n
                        }
                    } else {
                        Int::one()
                    };
                    let power = self.group.pow(&atom, &exp);
                    elem = self.group.multiply(&elem, &power);
                }
                None => return self.err("unexpected end of input"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((coeff, elem));
            }
        }
    }

    fn atom(&mut self) -> Result<GroupElement, RingError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let (len, g) = if rest.starts_with(b"a1") {
            (2, self.group.generator(Generator::A1))
        } else if rest.starts_with(b"a2") {
            (2, self.group.generator(Generator::A2))
        } else if rest.starts_with(b"b1") {
            (2, self.group.generator(Generator::B1))
        } else if rest.starts_with(b"x") {
            (1, GroupElement::lattice(1, 0))
        } else if rest.starts_with(b"y") {
            (1, GroupElement::lattice(0, 1))
        } else if rest.starts_with(b"v") {
            (1, self.group.v())
        } else {
            return self.err("expected one of a1, b1, a2, x, y, v or an integer");
        };
        self.pos += len;
        Ok(g)
    }
}
