//! The sapphire group
//!
//! ```text
//! G = < a1, b1, a2 | a1 b1 a1^-1 = b1^-1,  a2^2 = a1^(2r) b1^s,
//!                    a2 a1^(2t) b1^u a2^-1 = b1^-u a1^-2t >
//! ```
//!
//! With `x = a1^2` and `y = b1` the subgroup `N = <x, y>` is free abelian of
//! rank two and normal, and `G / N` is the infinite dihedral group generated
//! by the images of `a1` and `a2`. Every element is therefore stored as
//! `w * x^i * y^j` where `w` is an alternating word in `{a1, a2}`.
//! Multiplication pushes the `N`-part of the left factor through the letters
//! of the right factor using the conjugation action of `a1` and `a2` on `N`,
//! folding `a1 a1 -> x` and `a2 a2 -> x^r y^s` whenever two equal letters
//! meet.
//!
//! Exponents are unbounded integers: powers of the monodromy grow
//! exponentially in the word length.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Int = BigInt;

/// Why a parameter quadruple was refused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RejectReason {
    ZeroParameter,
    UnimodularityViolation,
    UnnormalizedSigns,
}

impl RejectReason {
    pub fn code(self) -> &'static str {
        match self {
            RejectReason::ZeroParameter => "zero-parameter",
            RejectReason::UnimodularityViolation => "unimodularity-violation",
            RejectReason::UnnormalizedSigns => "unnormalized-signs",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("rejected parameters ({reason}): {detail}")]
    RejectedParams { reason: RejectReason, detail: String },
}

/// Validated gluing parameters `(r, s, t, u)` of the sapphire `K(r, s, t, u)`.
///
/// Accepted quadruples satisfy `rstu != 0`, `(ru - st)^2 = 1`, `r > 0` and
/// `t < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupParams {
    r: i64,
    s: i64,
    t: i64,
    u: i64,
}

impl GroupParams {
    pub fn new(r: i64, s: i64, t: i64, u: i64) -> Result<Self, GroupError> {
        if r == 0 || s == 0 || t == 0 || u == 0 {
            return Err(GroupError::RejectedParams {
                reason: RejectReason::ZeroParameter,
                detail: format!("rstu must be nonzero, got ({r},{s},{t},{u})"),
            });
        }
        let det = Int::from(r) * u - Int::from(s) * t;
        if det.abs() != Int::one() {
            return Err(GroupError::RejectedParams {
                reason: RejectReason::UnimodularityViolation,
                detail: format!("ru - st must be +1 or -1, got {det}"),
            });
        }
        if r <= 0 || t >= 0 {
            return Err(GroupError::RejectedParams {
                reason: RejectReason::UnnormalizedSigns,
                detail: format!("require r > 0 and t < 0, got r = {r}, t = {t}"),
            });
        }
        Ok(GroupParams { r, s, t, u })
    }

    pub fn r(&self) -> i64 {
        self.r
    }
    pub fn s(&self) -> i64 {
        self.s
    }
    pub fn t(&self) -> i64 {
        self.t
    }
    pub fn u(&self) -> i64 {
        self.u
    }

    pub fn as_tuple(&self) -> (i64, i64, i64, i64) {
        (self.r, self.s, self.t, self.u)
    }

    /// `ru - st`, which is `+1` or `-1`.
    pub fn determinant(&self) -> Int {
        Int::from(self.r) * self.u - Int::from(self.s) * self.t
    }

    /// The monodromy `theta(1)`: conjugation by `v = a1^-1 a2` on `N`,
    /// columns being the images of `x` and `y`.
    pub fn theta(&self) -> Mat2 {
        Mat2::conjugation_a1().compose(&self.conjugation_a2())
    }

    /// Conjugation by `a2` on `N`. It fixes `x^r y^s` and inverts `x^t y^u`;
    /// for `ru - st = 1` this is `x -> x^(ru+st) y^(2su)`,
    /// `y -> x^(-2rt) y^(-ru-st)`.
    pub(crate) fn conjugation_a2(&self) -> Mat2 {
        let (r, s, t, u) = (Int::from(self.r), Int::from(self.s), Int::from(self.t), Int::from(self.u));
        let det = self.determinant();
        let trace_part = &r * &u + &s * &t;
        Mat2 {
            a: &trace_part * &det,
            b: -Int::from(2) * &r * &t * &det,
            c: Int::from(2) * &s * &u * &det,
            d: -trace_part * &det,
        }
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.r, self.s, self.t, self.u)
    }
}

/// Shorthand for [`GroupParams::new`].
pub fn validate_params(r: i64, s: i64, t: i64, u: i64) -> Result<GroupParams, GroupError> {
    GroupParams::new(r, s, t, u)
}

/// An element `x^x * y^y` of the normal subgroup `N`, written additively.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    pub x: Int,
    pub y: Int,
}

impl Lattice {
    pub fn new(x: impl Into<Int>, y: impl Into<Int>) -> Self {
        Lattice { x: x.into(), y: y.into() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl Add for Lattice {
    type Output = Lattice;
    fn add(self, rhs: Lattice) -> Lattice {
        Lattice { x: self.x + rhs.x, y: self.y + rhs.y }
    }
}

impl Sub for Lattice {
    type Output = Lattice;
    fn sub(self, rhs: Lattice) -> Lattice {
        Lattice { x: self.x - rhs.x, y: self.y - rhs.y }
    }
}

impl Neg for Lattice {
    type Output = Lattice;
    fn neg(self) -> Lattice {
        Lattice { x: -self.x, y: -self.y }
    }
}

/// Integer 2x2 matrix acting on exponent pairs `(m, n)` of `x^m y^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Int,
    pub b: Int,
    pub c: Int,
    pub d: Int,
}

impl Mat2 {
    pub fn identity() -> Self {
        Mat2 { a: Int::one(), b: Int::zero(), c: Int::zero(), d: Int::one() }
    }

    fn conjugation_a1() -> Self {
        Mat2 { a: Int::one(), b: Int::zero(), c: Int::zero(), d: -Int::one() }
    }

    pub fn apply(&self, p: &Lattice) -> Lattice {
        Lattice { x: &self.a * &p.x + &self.b * &p.y, y: &self.c * &p.x + &self.d * &p.y }
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    pub fn determinant(&self) -> Int {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> Int {
        &self.a + &self.d
    }
}

/// Letters of the alternating prefix of the first normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A1,
    A2,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::A1 => Letter::A2,
            Letter::A2 => Letter::A1,
        }
    }

    pub fn generator(self) -> Generator {
        match self {
            Letter::A1 => Generator::A1,
            Letter::A2 => Generator::A2,
        }
    }
}

/// The presentation generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A1,
    B1,
    A2,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::A1, Generator::B1, Generator::A2];

    /// Position of the generator in the basis `(alpha1, beta1, alpha2)` of `F_1`.
    pub fn index(self) -> usize {
        match self {
            Generator::A1 => 0,
            Generator::B1 => 1,
            Generator::A2 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::A1 => "a1",
            Generator::B1 => "b1",
            Generator::A2 => "a2",
        }
    }

    pub fn symbol(self) -> Symbol {
        Symbol { generator: self, inverse: false }
    }

    pub fn inverse_symbol(self) -> Symbol {
        Symbol { generator: self, inverse: true }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A generator or its inverse; words in the free group are `Vec<Symbol>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub generator: Generator,
    pub inverse: bool,
}

impl Symbol {
    pub fn inverted(self) -> Symbol {
        Symbol { generator: self.generator, inverse: !self.inverse }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

/// Formal inverse of a free-group word.
pub fn invert_word(word: &[Symbol]) -> Vec<Symbol> {
    word.iter().rev().map(|s| s.inverted()).collect()
}

/// Canonical element `w * x^i * y^j` of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    word: Vec<Letter>,
    tail: Lattice,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement { word: Vec::new(), tail: Lattice::default() }
    }

    /// `x^m y^n`.
    pub fn lattice(m: impl Into<Int>, n: impl Into<Int>) -> Self {
        GroupElement { word: Vec::new(), tail: Lattice::new(m, n) }
    }

    /// Builds `w * x^i * y^j`, returning `None` unless `w` alternates.
    pub fn from_parts(word: Vec<Letter>, i: impl Into<Int>, j: impl Into<Int>) -> Option<Self> {
        if word.windows(2).any(|p| p[0] == p[1]) {
            return None;
        }
        Some(GroupElement { word, tail: Lattice::new(i, j) })
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn i(&self) -> &Int {
        &self.tail.x
    }

    pub fn j(&self) -> &Int {
        &self.tail.y
    }

    pub fn tail(&self) -> &Lattice {
        &self.tail
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty() && self.tail.is_zero()
    }

    /// A word over `{a1^±1, b1^±1, a2^±1}` evaluating to `self`, namely
    /// `w * a1^(2i) * b1^j`.
    pub fn word_representative(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self.word.iter().map(|l| l.generator().symbol()).collect();
        push_power(&mut out, Generator::A1, &(&self.tail.x * 2));
        push_power(&mut out, Generator::B1, &self.tail.y);
        out
    }
}

fn push_power(out: &mut Vec<Symbol>, g: Generator, n: &Int) {
    let count = usize::try_from(n.abs()).expect("exponent too large to spell as a word");
    let sym = if n.is_negative() { g.inverse_symbol() } else { g.symbol() };
    out.extend(std::iter::repeat_n(sym, count));
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.tail.x.cmp(&other.tail.x))
            .then_with(|| self.tail.y.cmp(&other.tail.y))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, first: &mut bool, base: &str, e: &Int) -> fmt::Result {
    if e.is_zero() {
        return Ok(());
    }
    if !*first {
        f.write_str("*")?;
    }
    *first = false;
    if e.is_one() {
        f.write_str(base)
    } else {
        write!(f, "{base}^{e}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let mut first = true;
        for l in &self.word {
            let name = match l {
                Letter::A1 => "a1",
                Letter::A2 => "a2",
            };
            write_power(f, &mut first, name, &Int::one())?;
        }
        write_power(f, &mut first, "x", &self.tail.x)?;
        write_power(f, &mut first, "y", &self.tail.y)
    }
}

/// Fourth normal form `v^k x^m y^n a2^eps` with `v = a1^-1 a2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Nf4Element {
    pub k: Int,
    pub m: Int,
    pub n: Int,
    pub eps: bool,
}

/// Elements conjugating `N` that have a named matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjugator {
    A1,
    A2,
    V,
}

/// The group `G` for a fixed parameter quadruple.
#[derive(Clone, Debug)]
pub struct Group {
    params: GroupParams,
    conj_a1: Mat2,
    conj_a2: Mat2,
    square_a2: Lattice,
}

impl Group {
    pub fn new(params: GroupParams) -> Self {
        let conj_a2 = params.conjugation_a2();
        let square_a2 = Lattice::new(params.r, params.s);
        Group { params, conj_a1: Mat2::conjugation_a1(), conj_a2, square_a2 }
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity()
    }

    pub fn generator(&self, g: Generator) -> GroupElement {
        match g {
            Generator::A1 => GroupElement { word: vec![Letter::A1], tail: Lattice::default() },
            Generator::A2 => GroupElement { word: vec![Letter::A2], tail: Lattice::default() },
            Generator::B1 => GroupElement::lattice(0, 1),
        }
    }

    pub fn symbol(&self, s: Symbol) -> GroupElement {
        let g = self.generator(s.generator);
        if s.inverse {
            self.inverse(&g)
        } else {
            g
        }
    }

    /// `v = a1^-1 a2`.
    pub fn v(&self) -> GroupElement {
        self.evaluate(&[Generator::A1.inverse_symbol(), Generator::A2.symbol()])
    }

    fn conj_matrix(&self, l: Letter) -> &Mat2 {
        match l {
            Letter::A1 => &self.conj_a1,
            Letter::A2 => &self.conj_a2,
        }
    }

    fn square(&self, l: Letter) -> Lattice {
        match l {
            Letter::A1 => Lattice::new(1, 0),
            Letter::A2 => self.square_a2.clone(),
        }
    }

    /// Image of `x^m y^n` under conjugation `n -> g n g^-1`.
    pub fn conjugate_by_generator(&self, by: Conjugator, n: &Lattice) -> Lattice {
        match by {
            Conjugator::A1 => self.conj_a1.apply(n),
            Conjugator::A2 => self.conj_a2.apply(n),
            Conjugator::V => self.params.theta().apply(n),
        }
    }

    // (w n) a = w a c_a(n); both conjugations are involutions on N.
    fn push_letter(&self, acc: &mut GroupElement, l: Letter) {
        let moved = self.conj_matrix(l).apply(&acc.tail);
        if acc.word.last() == Some(&l) {
            acc.word.pop();
            acc.tail = self.square(l) + moved;
        } else {
            acc.word.push(l);
            acc.tail = moved;
        }
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let mut acc = g.clone();
        for &l in &h.word {
            self.push_letter(&mut acc, l);
        }
        acc.tail = acc.tail + h.tail.clone();
        acc
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        // (w n)^-1 = n^-1 w^-1, and l^-1 = l * (l^2)^-1 for each letter.
        let mut acc = GroupElement { word: Vec::new(), tail: -g.tail.clone() };
        for &l in g.word.iter().rev() {
            self.push_letter(&mut acc, l);
            acc.tail = acc.tail.clone() - self.square(l);
        }
        acc
    }

    pub fn pow(&self, g: &GroupElement, n: &Int) -> GroupElement {
        let mut base = if n.is_negative() { self.inverse(g) } else { g.clone() };
        let mut e = n.abs();
        let mut acc = GroupElement::identity();
        let two = Int::from(2);
        while !e.is_zero() {
            if (&e % &two).is_one() {
                acc = self.multiply(&acc, &base);
            }
            e /= &two;
            if !e.is_zero() {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    pub fn pow_i64(&self, g: &GroupElement, n: i64) -> GroupElement {
        self.pow(g, &Int::from(n))
    }

    /// Evaluates a free-group word in `G`.
    pub fn evaluate(&self, word: &[Symbol]) -> GroupElement {
        let mut acc = GroupElement::identity();
        for &s in word {
            match (s.generator, s.inverse) {
                (Generator::B1, false) => acc.tail.y += 1,
                (Generator::B1, true) => acc.tail.y -= 1,
                (Generator::A1, inv) => {
                    self.push_letter(&mut acc, Letter::A1);
                    if inv {
                        acc.tail.x -= 1;
                    }
                }
                (Generator::A2, inv) => {
                    self.push_letter(&mut acc, Letter::A2);
                    if inv {
                        acc.tail = acc.tail.clone() - self.square_a2.clone();
                    }
                }
            }
        }
        acc
    }

    /// Conversion to the fourth normal form.
    pub fn to_nf4(&self, g: &GroupElement) -> Nf4Element {
        // The image of v^k a2^eps in G/N is an alternating word determined by
        // its length and first letter.
        let len = g.word.len();
        let (k, eps) = match (g.word.first(), len % 2) {
            (None, _) => (Int::zero(), false),
            (Some(Letter::A1), 0) => (Int::from(len / 2), false),
            (Some(Letter::A2), 0) => (-Int::from(len / 2), false),
            (Some(Letter::A1), _) => (Int::from(len.div_ceil(2)), true),
            (Some(Letter::A2), _) => (-Int::from((len - 1) / 2), true),
        };
        let head = self.nf4_head(&k, eps);
        debug_assert_eq!(head.word, g.word);
        // g = w (n_head + c^eps(n)), so n = c^eps(n_g - n_head).
        let diff = g.tail.clone() - head.tail;
        let n = if eps { self.conj_a2.apply(&diff) } else { diff };
        Nf4Element { k, m: n.x, n: n.y, eps }
    }

    pub fn from_nf4(&self, e: &Nf4Element) -> GroupElement {
        let vk = self.pow(&self.v(), &e.k);
        let mid = self.multiply(&vk, &GroupElement::lattice(e.m.clone(), e.n.clone()));
        if e.eps {
            self.multiply(&mid, &self.generator(Generator::A2))
        } else {
            mid
        }
    }

    fn nf4_head(&self, k: &Int, eps: bool) -> GroupElement {
        let vk = self.pow(&self.v(), k);
        if eps {
            self.multiply(&vk, &self.generator(Generator::A2))
        } else {
            vk
        }
    }
}

/// A homomorphism `G -> Aut(Z) = {+1, -1}` given by the images of the
/// generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    a1: i8,
    b1: i8,
    a2: i8,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("character values must be +1 or -1, got ({0},{1},{2})")]
    NotASign(i64, i64, i64),
    #[error("character {0} violates a2^2 = a1^(2r) b1^s for s = {1}")]
    RelationViolated(Character, i64),
}

impl Character {
    pub const TRIVIAL: Character = Character { a1: 1, b1: 1, a2: 1 };
    /// `a1 -> 1, b1 -> 1, a2 -> -1`.
    pub const ETA1: Character = Character { a1: 1, b1: 1, a2: -1 };
    /// `a1 -> -1, b1 -> 1, a2 -> 1`.
    pub const ETA2: Character = Character { a1: -1, b1: 1, a2: 1 };
    /// `a1 -> -1, b1 -> 1, a2 -> -1`.
    pub const ETA3: Character = Character { a1: -1, b1: 1, a2: -1 };

    pub fn new(a1: i64, b1: i64, a2: i64) -> Result<Self, CharacterError> {
        let ok = |v: i64| v == 1 || v == -1;
        if !(ok(a1) && ok(b1) && ok(a2)) {
            return Err(CharacterError::NotASign(a1, b1, a2));
        }
        Ok(Character { a1: a1 as i8, b1: b1 as i8, a2: a2 as i8 })
    }

    pub fn value_of(&self, g: Generator) -> i64 {
        i64::from(match g {
            Generator::A1 => self.a1,
            Generator::B1 => self.b1,
            Generator::A2 => self.a2,
        })
    }

    /// The first and third relations hold for any signs; the second forces
    /// `b1 -> 1` when `s` is odd.
    pub fn check(&self, params: &GroupParams) -> Result<(), CharacterError> {
        let lhs = 1; // a2^2
        let rhs = if params.s() % 2 == 0 { 1 } else { i64::from(self.b1) };
        if lhs != rhs {
            return Err(CharacterError::RelationViolated(*self, params.s()));
        }
        Ok(())
    }

    pub fn value(&self, g: &GroupElement) -> i64 {
        let mut v: i64 = 1;
        for l in g.word() {
            v *= self.value_of(l.generator());
        }
        if (g.j() % 2i32) != Int::zero() {
            v *= i64::from(self.b1);
        }
        v
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a1, self.b1, self.a2)
    }
}

/// `chi(g)`.
pub fn character_value(chi: &Character, g: &GroupElement) -> i64 {
    chi.value(g)
}
