//! Coefficient modules: finitely generated abelian groups `Z^n` or
//! `(Z/m)^n` with `G` acting through integer matrices.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::group::{Character, CharacterError, Generator, GroupElement, GroupParams, Int};
use crate::linalg::IntMatrix;
use crate::ring::GroupRingElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoefficientError {
    #[error("invalid character: {0}")]
    InvalidCharacter(#[from] CharacterError),
    #[error("action matrices violate the relation {0}")]
    RelationViolated(&'static str),
    #[error("action matrix for {0} is not invertible over the base")]
    NotInvertible(&'static str),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(i64),
    #[error("action matrices must be square of size {expected}")]
    Shape { expected: usize },
    #[error("cannot parse coefficient expression at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// The underlying abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Underlying {
    FreeZ(usize),
    /// `(Z/m)^n`; `m = 1` (the zero group) only arises from tensor products.
    Torsion(Int, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientModule {
    underlying: Underlying,
    act: [IntMatrix; 3],
    inv: [IntMatrix; 3],
    name: String,
}

impl CoefficientModule {
    /// Validates invertibility and the three defining relations.
    pub fn new(
        params: &GroupParams,
        underlying: Underlying,
        act: [IntMatrix; 3],
        name: impl Into<String>,
    ) -> Result<Self, CoefficientError> {
        let n = match &underlying {
            Underlying::FreeZ(n) => *n,
            Underlying::Torsion(_, n) => *n,
        };
        if act.iter().any(|a| a.rows() != n || a.cols() != n) {
            return Err(CoefficientError::Shape { expected: n });
        }
        let modulus = match &underlying {
            Underlying::FreeZ(_) => Int::zero(),
            Underlying::Torsion(m, _) => m.clone(),
        };
        let mut inv = act.clone();
        for (slot, gen) in inv.iter_mut().zip(Generator::ALL) {
            *slot = invert(&act[gen.index()], &modulus).ok_or(CoefficientError::NotInvertible(gen.name()))?;
        }
        let module = CoefficientModule { underlying, act: act.map(|a| a.reduce(&modulus)), inv, name: name.into() };
        module.check_relations(params)?;
        Ok(module)
    }

    fn check_relations(&self, params: &GroupParams) -> Result<(), CoefficientError> {
        let (r, s, t, u) = params.as_tuple();
        let a1 = |n: i64| self.power(Generator::A1, n);
        let b1 = |n: i64| self.power(Generator::B1, n);
        let a2 = |n: i64| self.power(Generator::A2, n);
        let m = self.modulus();
        let prod = |ms: &[IntMatrix]| ms.iter().skip(1).fold(ms[0].clone(), |acc, x| (&acc * x).reduce(&m));
        if prod(&[a1(1), b1(1), a1(-1)]) != b1(-1) {
            return Err(CoefficientError::RelationViolated("a1 b1 a1^-1 = b1^-1"));
        }
        if a2(2) != prod(&[a1(2 * r), b1(s)]) {
            return Err(CoefficientError::RelationViolated("a2^2 = a1^2r b1^s"));
        }
        if prod(&[a2(1), a1(2 * t), b1(u), a2(-1)]) != prod(&[b1(-u), a1(-2 * t)]) {
            return Err(CoefficientError::RelationViolated("a2 a1^2t b1^u a2^-1 = b1^-u a1^-2t"));
        }
        Ok(())
    }

    /// `Z` with trivial action.
    pub fn trivial_z(params: &GroupParams) -> Self {
        Self::character(params, Character::TRIVIAL).expect("trivial character is valid")
    }

    /// `Z` with `g` acting by the sign `chi(g)`.
    pub fn character(params: &GroupParams, chi: Character) -> Result<Self, CoefficientError> {
        chi.check(params)?;
        let act = Generator::ALL.map(|g| IntMatrix::from_rows(&[vec![chi.value_of(g)]]));
        let name = if chi == Character::TRIVIAL { "Z".to_string() } else { format!("Z[{chi}]") };
        Self::new(params, Underlying::FreeZ(1), act, name)
    }

    /// `Z/p` with trivial action.
    pub fn zp(params: &GroupParams, p: i64) -> Result<Self, CoefficientError> {
        if p < 2 {
            return Err(CoefficientError::BadModulus(p));
        }
        let act = Generator::ALL.map(|_| IntMatrix::identity(1));
        Self::new(params, Underlying::Torsion(Int::from(p), 1), act, format!("Z/{p}"))
    }

    /// `A (x) B` with diagonal action.
    pub fn tensor(a: &Self, b: &Self) -> Self {
        let underlying = match (&a.underlying, &b.underlying) {
            (Underlying::FreeZ(n), Underlying::FreeZ(k)) => Underlying::FreeZ(n * k),
            (Underlying::FreeZ(n), Underlying::Torsion(m, k)) | (Underlying::Torsion(m, k), Underlying::FreeZ(n)) => {
                Underlying::Torsion(m.clone(), n * k)
            }
            (Underlying::Torsion(m, n), Underlying::Torsion(m2, k)) => Underlying::Torsion(m.gcd(m2), n * k),
        };
        let modulus = match &underlying {
            Underlying::FreeZ(_) => Int::zero(),
            Underlying::Torsion(m, _) => m.clone(),
        };
        let act = Generator::ALL.map(|g| a.act[g.index()].kron(&b.act[g.index()]).reduce(&modulus));
        let inv = Generator::ALL.map(|g| a.inv[g.index()].kron(&b.inv[g.index()]).reduce(&modulus));
        CoefficientModule { underlying, act, inv, name: format!("{} (x) {}", a.name, b.name) }
    }

    pub fn underlying(&self) -> &Underlying {
        &self.underlying
    }

    pub fn rank(&self) -> usize {
        match &self.underlying {
            Underlying::FreeZ(n) | Underlying::Torsion(_, n) => *n,
        }
    }

    /// `0` for `Z^n`, `m` for `(Z/m)^n`.
    pub fn modulus(&self) -> Int {
        match &self.underlying {
            Underlying::FreeZ(_) => Int::zero(),
            Underlying::Torsion(m, _) => m.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn action(&self, g: Generator) -> &IntMatrix {
        &self.act[g.index()]
    }

    fn power(&self, g: Generator, n: i64) -> IntMatrix {
        let base = if n < 0 { &self.inv[g.index()] } else { &self.act[g.index()] };
        matrix_pow(base, n.unsigned_abs().into(), &self.modulus())
    }

    fn power_big(&self, g: Generator, n: &Int) -> IntMatrix {
        let base = if n.is_negative() { &self.inv[g.index()] } else { &self.act[g.index()] };
        matrix_pow(base, n.abs(), &self.modulus())
    }

    /// Action matrix of a group element, read off its normal form
    /// `w x^i y^j` with `x = a1^2`, `y = b1`.
    pub fn represent_element(&self, g: &GroupElement) -> IntMatrix {
        let m = self.modulus();
        let mut out = IntMatrix::identity(self.rank());
        for l in g.word() {
            out = (&out * &self.act[l.generator().index()]).reduce(&m);
        }
        out = (&out * &self.power_big(Generator::A1, &(g.i() * 2))).reduce(&m);
        (&out * &self.power_big(Generator::B1, g.j())).reduce(&m)
    }

    /// The ring homomorphism `ZG -> End(A)`.
    pub fn represent(&self, e: &GroupRingElement) -> IntMatrix {
        let n = self.rank();
        let mut out = IntMatrix::zeros(n, n);
        for (g, c) in e.terms() {
            out = out.add(&self.represent_element(g).scale(c));
        }
        out.reduce(&self.modulus())
    }

    /// The map `A (x) B -> B (x) A` on coordinates, for `self = A (x) B`
    /// with factor ranks `(n, k)`.
    pub fn swap_coordinates(n: usize, k: usize, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), n * k);
        let mut out = vec![Int::zero(); n * k];
        for i in 0..n {
            for j in 0..k {
                out[j * n + i] = v[i * k + j].clone();
            }
        }
        out
    }
}

impl fmt::Display for CoefficientModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn matrix_pow(base: &IntMatrix, mut n: Int, m: &Int) -> IntMatrix {
    let mut out = IntMatrix::identity(base.rows());
    let mut b = base.clone();
    let two = Int::from(2);
    while !n.is_zero() {
        if n.is_odd() {
            out = (&out * &b).reduce(m);
        }
        n /= &two;
        if !n.is_zero() {
            b = (&b * &b).reduce(m);
        }
    }
    out
}

/// Inverse over `Z` (`m = 0`) or `Z/m`, if it exists.
fn invert(a: &IntMatrix, m: &Int) -> Option<IntMatrix> {
    let det = a.determinant();
    let adj = a.adjugate();
    if m.is_zero() {
        if det.abs() != Int::one() {
            return None;
        }
        return Some(adj.scale(&det));
    }
    let ext = det.mod_floor(m).extended_gcd(m);
    if !ext.gcd.is_one() && !m.is_one() {
        return None;
    }
    Some(adj.scale(&ext.x).reduce(m))
}

/// Parses the coefficient grammar
///
/// ```text
/// coeff := "Z" | "Zeta:" sign "," sign "," sign | "Zp:" integer | "tensor(" coeff "," coeff ")"
/// sign  := "1" | "+1" | "-1"
/// ```
pub fn parse_coefficient(text: &str, params: &GroupParams) -> Result<CoefficientModule, CoefficientError> {
    let mut p = CoeffParser { src: text.trim(), pos: 0, params };
    let m = p.coeff()?;
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(m)
}

struct CoeffParser<'a> {
    src: &'a str,
    pos: usize,
    params: &'a GroupParams,
}

impl CoeffParser<'_> {
    fn err(&self, msg: &str) -> CoefficientError {
        CoefficientError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, s: &str) -> bool {
        let rest = self.rest().trim_start();
        let skipped = self.rest().len() - rest.len();
        if rest.starts_with(s) {
            self.pos += skipped + s.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64, CoefficientError> {
        let src = self.src;
        let rest = src[self.pos..].trim_start();
        self.pos = src.len() - rest.len();
        let len =
            rest.char_indices().take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+'))).count();
        let value = rest[..len].parse().map_err(|_| self.err("expected an integer"))?;
        self.pos += len;
        Ok(value)
    }

    fn coeff(&mut self) -> Result<CoefficientModule, CoefficientError> {
        if self.eat("tensor(") {
            let a = self.coeff()?;
            if !self.eat(",") {
                return Err(self.err("expected ','"));
            }
            let b = self.coeff()?;
            if !self.eat(")") {
                return Err(self.err("expected ')'"));
            }
            return Ok(CoefficientModule::tensor(&a, &b));
        }
        if self.eat("Zeta:") {
            let a1 = self.integer()?;
            let mut rest = [0i64; 2];
            for slot in &mut rest {
                if !self.eat(",") {
                    return Err(self.err("expected ','"));
                }
                *slot = self.integer()?;
            }
            let chi = Character::new(a1, rest[0], rest[1])?;
            return CoefficientModule::character(self.params, chi);
        }
        if self.eat("Zp:") {
            let p = self.integer()?;
            return CoefficientModule::zp(self.params, p);
        }
        if self.eat("Z") {
            return Ok(CoefficientModule::trivial_z(self.params));
        }
        Err(self.err("expected Z, Zeta:, Zp: or tensor("))
    }
}
