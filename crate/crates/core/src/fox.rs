//! Fox free differential calculus.
//!
//! Derivatives are taken of free-group words and then read in `ZG`. They
//! satisfy `d(uv)/dg = du/dg + u dv/dg`, `dg/dg = 1`, `d(g^-1)/dg = -g^-1`,
//! and the fundamental identity `w - 1 = sum_g dw/dg (g - 1)`.

use num_traits::Zero;

use crate::group::{invert_word, Generator, Group, GroupElement, Int, Symbol};
use crate::ring::{GroupRingElement, RingError};

/// All three partial derivatives of `word`, indexed by [`Generator::index`].
pub fn fox_gradient(group: &Group, word: &[Symbol]) -> [GroupRingElement; 3] {
    let mut out = [GroupRingElement::zero(), GroupRingElement::zero(), GroupRingElement::zero()];
    let mut prefix = GroupElement::identity();
    for &s in word {
        let next = group.multiply(&prefix, &group.symbol(s));
        let slot = &mut out[s.generator.index()];
        if s.inverse {
            slot.add_term(next.clone(), -Int::from(1));
        } else {
            slot.add_term(prefix.clone(), Int::from(1));
        }
        prefix = next;
    }
    out
}

pub fn fox_derivative(group: &Group, word: &[Symbol], gen: Generator) -> GroupRingElement {
    let [a, b, c] = fox_gradient(group, word);
    match gen {
        Generator::A1 => a,
        Generator::B1 => b,
        Generator::A2 => c,
    }
}

/// `d(g^n)/dg` read in `ZG`: `1 + g + ... + g^(n-1)` for `n > 0`, zero for
/// `n = 0` and `-(g^-1 + ... + g^n)` for `n < 0`.
pub fn fox_power(group: &Group, g: &GroupElement, n: i64) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    if n >= 0 {
        let mut p = GroupElement::identity();
        for _ in 0..n {
            out.add_term(p.clone(), Int::from(1));
            p = group.multiply(&p, g);
        }
    } else {
        let inv = group.inverse(g);
        let mut p = inv.clone();
        for _ in 0..n.unsigned_abs() {
            out.add_term(p.clone(), Int::from(-1));
            p = group.multiply(&p, &inv);
        }
    }
    out
}

/// Writes `e = A (a1 - 1) + B (b1 - 1) + C (a2 - 1)` using the Fox gradient of
/// the normal-form word of each term.
pub fn fox_decompose(group: &Group, e: &GroupRingElement) -> Result<[GroupRingElement; 3], RingError> {
    let aug = e.augmentation();
    if !aug.is_zero() {
        return Err(RingError::AugmentationNonzero(aug));
    }
    let mut out = [GroupRingElement::zero(), GroupRingElement::zero(), GroupRingElement::zero()];
    for (g, c) in e.terms() {
        let grad = fox_gradient(group, &g.word_representative());
        for (slot, part) in out.iter_mut().zip(grad.iter()) {
            *slot += &part.scale(c);
        }
    }
    Ok(out)
}

/// Decomposes `psi(e) = sum c_g g^-1` as in [`fox_decompose`], spelling each
/// `g^-1` as the formal inverse of the normal-form word of `g`.
pub fn fox_decompose_antipode(group: &Group, e: &GroupRingElement) -> Result<[GroupRingElement; 3], RingError> {
    let aug = e.augmentation();
    if !aug.is_zero() {
        return Err(RingError::AugmentationNonzero(aug));
    }
    let mut out = [GroupRingElement::zero(), GroupRingElement::zero(), GroupRingElement::zero()];
    for (g, c) in e.terms() {
        let grad = fox_gradient(group, &invert_word(&g.word_representative()));
        for (slot, part) in out.iter_mut().zip(grad.iter()) {
            *slot += &part.scale(c);
        }
    }
    Ok(out)
}

/// `sum_g parts[g] (g - 1)`; the inverse of [`fox_decompose`].
pub fn recombine(group: &Group, parts: &[GroupRingElement; 3]) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    for gen in Generator::ALL {
        let shifted = GroupRingElement::from(group.generator(gen)) - GroupRingElement::one();
        out += &parts[gen.index()].mul(&shifted, group);
    }
    out
}
