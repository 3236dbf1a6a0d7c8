//! Contracting homotopy in degree 0, the partial diagonal approximation and
//! the low components of the fundamental cycle.
//!
//! `F_p (x) F_q` carries the diagonal action `g(x (x) y) = gx (x) gy`, so as an
//! abelian group it is `Z[G x G]^(rank_p * rank_q)`. A [`TensorVector`] stores
//! one [`PairElement`] per pair of basis elements: the term `c (g, h)` in block
//! `(i, j)` stands for `c * (g e_i (x) h f_j)`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::fox::{fox_decompose_antipode, fox_gradient, fox_power};
use crate::group::{Generator, Group, GroupElement, Int};
use crate::resolution::{FreeVector, Resolution, RANKS};
use crate::ring::GroupRingElement;

/// `s0(g)`: the Fox gradient of the normal-form word of `g`, extended
/// additively to `ZG`.
pub fn s0(group: &Group, e: &GroupRingElement) -> FreeVector {
    let mut coords = vec![GroupRingElement::zero(); 3];
    for (g, c) in e.terms() {
        for (slot, part) in coords.iter_mut().zip(fox_gradient(group, &g.word_representative())) {
            *slot += &part.scale(c);
        }
    }
    FreeVector::new(1, coords).expect("rank 3")
}

/// An element of `Z[G x G]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairElement {
    terms: BTreeMap<(GroupElement, GroupElement), Int>,
}

impl PairElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pair(c: impl Into<Int>, g: GroupElement, h: GroupElement) -> Self {
        let mut e = Self::zero();
        e.add_term(g, h, c.into());
        e
    }

    /// `sum a_g b_h (g, h)`.
    pub fn outer(a: &GroupRingElement, b: &GroupRingElement) -> Self {
        let mut e = Self::zero();
        for (g, c) in a.terms() {
            for (h, d) in b.terms() {
                e.add_term(g.clone(), h.clone(), c * d);
            }
        }
        e
    }

    pub fn add_term(&mut self, g: GroupElement, h: GroupElement, c: Int) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((g, h)) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &GroupElement, &Int)> {
        self.terms.iter().map(|((g, h), c)| (g, h, c))
    }

    pub fn coefficient(&self, g: &GroupElement, h: &GroupElement) -> Int {
        self.terms.get(&(g.clone(), h.clone())).cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&mut self, other: &PairElement) {
        for (g, h, c) in other.terms() {
            self.add_term(g.clone(), h.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Int) -> Self {
        let mut out = Self::zero();
        for (g, h, d) in self.terms() {
            out.add_term(g.clone(), h.clone(), c * d);
        }
        out
    }

    /// Diagonal action of a ring element.
    pub fn act(&self, e: &GroupRingElement, group: &Group) -> Self {
        let mut out = Self::zero();
        for (k, c) in e.terms() {
            for (g, h, d) in self.terms() {
                out.add_term(group.multiply(k, g), group.multiply(k, h), c * d);
            }
        }
        out
    }

    /// Image in `Z[G x G] (x)_G Z = ZG`, normalising the left entry to `1`:
    /// `(g, h) -> g^-1 h`.
    pub fn coinvariant(&self, group: &Group) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (g, h, c) in self.terms() {
            out.add_term(group.multiply(&group.inverse(g), h), c.clone());
        }
        out
    }
}

impl fmt::Display for PairElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (g, h, c)) in self.terms().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*({g} | {h})")?;
        }
        Ok(())
    }
}

/// An element of `F_p (x) F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector {
    p: usize,
    q: usize,
    blocks: Vec<PairElement>,
}

impl TensorVector {
    pub fn zero(p: usize, q: usize) -> Self {
        assert!(p + q <= 3, "bidegree ({p}, {q}) out of range");
        TensorVector { p, q, blocks: vec![PairElement::zero(); RANKS[p] * RANKS[q]] }
    }

    /// `left e_i (x) right f_j` with ring coefficients applied to each leg.
    pub fn elementary(
        (p, i): (usize, usize),
        (q, j): (usize, usize),
        left: &GroupRingElement,
        right: &GroupRingElement,
    ) -> Self {
        let mut v = Self::zero(p, q);
        *v.block_mut(i, j) = PairElement::outer(left, right);
        v
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn block(&self, i: usize, j: usize) -> &PairElement {
        &self.blocks[i * RANKS[self.q] + j]
    }

    pub fn block_mut(&mut self, i: usize, j: usize) -> &mut PairElement {
        &mut self.blocks[i * RANKS[self.q] + j]
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(PairElement::is_zero)
    }

    pub fn add(&mut self, other: &TensorVector) {
        assert_eq!(self.bidegree(), other.bidegree());
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            a.add(b);
        }
    }

    pub fn scale(&self, c: &Int) -> Self {
        TensorVector { p: self.p, q: self.q, blocks: self.blocks.iter().map(|b| b.scale(c)).collect() }
    }

    pub fn act(&self, e: &GroupRingElement, group: &Group) -> Self {
        TensorVector { p: self.p, q: self.q, blocks: self.blocks.iter().map(|b| b.act(e, group)).collect() }
    }

    /// `d'(x (x) y) = d(x) (x) y`.
    pub fn d_left(&self, res: &Resolution) -> TensorVector {
        assert!(self.p >= 1);
        let group = res.group();
        let d = res.d(self.p);
        let mut out = TensorVector::zero(self.p - 1, self.q);
        for i in 0..RANKS[self.p] {
            for j in 0..RANKS[self.q] {
                for (g, h, c) in self.block(i, j).terms() {
                    for k in 0..RANKS[self.p - 1] {
                        for (m, e) in d.get(k, i).terms() {
                            out.block_mut(k, j).add_term(group.multiply(g, m), h.clone(), c * e);
                        }
                    }
                }
            }
        }
        out
    }

    /// `d''(x (x) y) = (-1)^p x (x) d(y)`.
    pub fn d_right(&self, res: &Resolution) -> TensorVector {
        assert!(self.q >= 1);
        let group = res.group();
        let d = res.d(self.q);
        let sign = if self.p.is_multiple_of(2) { Int::one() } else { -Int::one() };
        let mut out = TensorVector::zero(self.p, self.q - 1);
        for i in 0..RANKS[self.p] {
            for j in 0..RANKS[self.q] {
                for (g, h, c) in self.block(i, j).terms() {
                    for k in 0..RANKS[self.q - 1] {
                        for (m, e) in d.get(k, j).terms() {
                            out.block_mut(i, k).add_term(g.clone(), group.multiply(h, m), &sign * c * e);
                        }
                    }
                }
            }
        }
        out
    }

    /// `(eps (x) id)` on `F_0 (x) F_q`.
    pub fn counit_left(&self) -> FreeVector {
        assert_eq!(self.p, 0);
        let coords = (0..RANKS[self.q])
            .map(|j| {
                let mut e = GroupRingElement::zero();
                for (_, h, c) in self.block(0, j).terms() {
                    e.add_term(h.clone(), c.clone());
                }
                e
            })
            .collect();
        FreeVector::new(self.q, coords).expect("rank matches")
    }

    /// `(id (x) eps)` on `F_p (x) F_0`.
    pub fn counit_right(&self) -> FreeVector {
        assert_eq!(self.q, 0);
        let coords = (0..RANKS[self.p])
            .map(|i| {
                let mut e = GroupRingElement::zero();
                for (g, _, c) in self.block(i, 0).terms() {
                    e.add_term(g.clone(), c.clone());
                }
                e
            })
            .collect();
        FreeVector::new(self.p, coords).expect("rank matches")
    }

    /// Image in `F_p (x)_G F_q`, one `ZG` coordinate per block (left legs
    /// moved to the identity).
    pub fn coinvariants(&self, group: &Group) -> Vec<GroupRingElement> {
        self.blocks.iter().map(|b| b.coinvariant(group)).collect()
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bidegree ({}, {})", self.p, self.q)?;
        for i in 0..RANKS[self.p] {
            for j in 0..RANKS[self.q] {
                let b = self.block(i, j);
                if !b.is_zero() {
                    writeln!(f, "  [{i},{j}] {b}")?;
                }
            }
        }
        Ok(())
    }
}

/// `Delta_0(1) = 1 (x) 1`.
pub fn delta0() -> TensorVector {
    let one = GroupRingElement::one();
    TensorVector::elementary((0, 0), (0, 0), &one, &one)
}

/// `Delta_1(b) = b (x) g_b + 1 (x) b`, split as bidegrees `(1, 0)` and `(0, 1)`.
pub fn delta1(group: &Group, basis: Generator) -> (TensorVector, TensorVector) {
    let i = basis.index();
    let one = GroupRingElement::one();
    let g = GroupRingElement::from(group.generator(basis));
    (TensorVector::elementary((1, i), (0, 0), &one, &g), TensorVector::elementary((0, 0), (1, i), &one, &one))
}

/// `Delta_1` on an arbitrary element of `F_1`.
pub fn delta1_of(group: &Group, v: &FreeVector) -> (TensorVector, TensorVector) {
    assert_eq!(v.degree(), 1);
    let mut left = TensorVector::zero(1, 0);
    let mut right = TensorVector::zero(0, 1);
    for (c, gen) in v.coords().iter().zip(Generator::ALL) {
        let (l, r) = delta1(group, gen);
        left.add(&l.act(c, group));
        right.add(&r.act(c, group));
    }
    (left, right)
}

/// `sum_g c_g s0(g) (x) g f_j` for `e = sum_g c_g g`.
fn s0_tensor(group: &Group, e: &GroupRingElement, j: usize) -> TensorVector {
    let mut out = TensorVector::zero(1, 1);
    for (g, c) in e.terms() {
        let s = s0(group, &GroupRingElement::from(g.clone()));
        for (k, part) in s.coords().iter().enumerate() {
            for (m, d) in part.terms() {
                out.block_mut(k, j).add_term(m.clone(), g.clone(), c * d);
            }
        }
    }
    out
}

/// Closed form of `Delta_{1,1}` on the basis element `rho_{index+1}`.
pub fn delta11(group: &Group, index: usize) -> TensorVector {
    let (r, s, t, u) = group.params().as_tuple();
    let elem = GroupRingElement::from;
    let a1 = group.generator(Generator::A1);
    let b1 = group.generator(Generator::B1);
    let a2 = group.generator(Generator::A2);
    let (alpha1, beta1, alpha2) = (0, 1, 2);
    let mut out = TensorVector::zero(1, 1);
    match index {
        0 => {
            let b1_inv = group.inverse(&b1);
            out.block_mut(beta1, alpha1).add_term(b1_inv.clone(), b1_inv.clone(), Int::one());
            out.block_mut(alpha1, beta1).add_term(GroupElement::identity(), a1, Int::one());
            out.block_mut(beta1, beta1).add_term(b1_inv.clone(), b1_inv, -Int::one());
        }
        1 => {
            out.add(&s0_tensor(group, &fox_power(group, &a1, 2 * r), alpha1));
            let xr = GroupElement::lattice(r, 0);
            out.add(&s0_tensor(group, &fox_power(group, &b1, s).left_mul(&xr, group), beta1));
            out.block_mut(alpha2, alpha2).add_term(GroupElement::identity(), a2, -Int::one());
        }
        2 => {
            let inv_txu = GroupElement::lattice(-t, -u);
            let e1 = (elem(a2.clone()) + elem(inv_txu.clone())).mul(&fox_power(group, &a1, 2 * t), group);
            let a2xt = group.multiply(&a2, &GroupElement::lattice(t, 0));
            let e2 = (elem(a2xt) + elem(GroupElement::lattice(0, -u))).mul(&fox_power(group, &b1, u), group);
            out.add(&s0_tensor(group, &e1, alpha1));
            out.add(&s0_tensor(group, &e2, beta1));
            out.add(&s0_tensor(group, &elem(inv_txu), alpha2).scale(&-Int::one()));
        }
        _ => panic!("rho index {index} out of range"),
    }
    out
}

/// Closed-form `Delta_{1,1}` extended `ZG`-linearly to `F_2`.
pub fn delta11_of(group: &Group, v: &FreeVector) -> TensorVector {
    assert_eq!(v.degree(), 2);
    let mut out = TensorVector::zero(1, 1);
    for (j, c) in v.coords().iter().enumerate() {
        if !c.is_zero() {
            out.add(&delta11(group, j).act(c, group));
        }
    }
    out
}

/// `Delta_{1,1}` through the recursion `Delta_2 = s~_1 Delta_1 d_2`. Only the
/// `s0 (x) id` part of `s~_1`, applied to the `(0, 1)` component, lands in
/// bidegree `(1, 1)`; it is evaluated on each basis element and extended
/// linearly.
pub fn handel_delta11(res: &Resolution, v: &FreeVector) -> TensorVector {
    assert_eq!(v.degree(), 2);
    let group = res.group();
    let mut out = TensorVector::zero(1, 1);
    for (j, c) in v.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let boundary = res.apply_differential(&FreeVector::basis(2, j)).expect("degree 2");
        let (_, right) = delta1_of(group, &boundary);
        let mut image = TensorVector::zero(1, 1);
        for i in 0..3 {
            for (g, h, e) in right.block(0, i).terms() {
                let s = s0(group, &GroupRingElement::from(g.clone()));
                for (k, part) in s.coords().iter().enumerate() {
                    for (m, d) in part.terms() {
                        image.block_mut(k, i).add_term(m.clone(), h.clone(), e * d);
                    }
                }
            }
        }
        out.add(&image.act(c, group));
    }
    out
}

/// `pi_{0,3}(zeta) = 1 (x) 1`.
pub fn zeta_pi03() -> TensorVector {
    let one = GroupRingElement::one();
    TensorVector::elementary((0, 0), (3, 0), &one, &one)
}

/// `sum_j W_j (x) rho_j`, where `psi(d_3 entry j) = sum_k W_jk (g_k - 1)`.
/// It satisfies `d'(pi_{1,2}) = d''(pi_{0,3})` in `F (x)_G F`, so the
/// component of the cycle `zeta` itself is its negative.
pub fn zeta_pi12(res: &Resolution) -> TensorVector {
    let group = res.group();
    let mut out = TensorVector::zero(1, 2);
    for (j, entry) in res.kernel_generator().iter().enumerate() {
        let parts = fox_decompose_antipode(group, entry).expect("d3 entries have augmentation 0");
        for (k, w) in parts.iter().enumerate() {
            for (g, c) in w.terms() {
                out.block_mut(k, j).add_term(g.clone(), GroupElement::identity(), c.clone());
            }
        }
    }
    out
}
