//! The free resolution
//!
//! ```text
//! 0 -> F3 -> F2 -> F1 -> F0 -> Z -> 0,   ranks (1, 3, 3, 1)
//! ```
//!
//! with basis `alpha1, beta1, alpha2` of `F1` and `rho1, rho2, rho3` of `F2`.
//! `d1` sends each basis element to `g - 1`, `d2` is the Fox Jacobian of the
//! three relators and `d3(1) = X0 rho1 + Y0 rho2 + Z0 rho3`.
//!
//! Matrix convention: entry `(i, j)` of `d_k` is the coefficient of target
//! basis element `i` in the image of source basis element `j`. A vector with
//! coordinates `c_j` maps to `sum_j c_j d_k(i, j)`, coefficients multiplying
//! from the left, since the modules are left `ZG`-modules.

use std::fmt::Write as _;

use thiserror::Error;

use crate::fox::fox_power;
use crate::group::{Generator, Group, GroupElement, GroupParams, Int};
use crate::ring::GroupRingElement;

/// Ranks of `F0..F3`.
pub const RANKS: [usize; 4] = [1, 3, 3, 1];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("differential is defined on degrees 1..=3, got {0}")]
    DegreeOutOfRange(usize),
    #[error("vector of length {got} does not fit degree {degree} (rank {rank})")]
    RankMismatch { degree: usize, rank: usize, got: usize },
}

/// A matrix over `ZG`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElement>,
}

impl RingMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RingMatrix { rows, cols, entries: vec![GroupRingElement::zero(); rows * cols] }
    }

    pub fn from_columns(rows: usize, columns: Vec<Vec<GroupRingElement>>) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, e) in col.into_iter().enumerate() {
                m.entries[i * cols + j] = e;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut GroupRingElement {
        &mut self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<GroupRingElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Image of the coordinate vector `coords` (length `cols`).
    pub fn apply(&self, coords: &[GroupRingElement], group: &Group) -> Vec<GroupRingElement> {
        assert_eq!(coords.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = GroupRingElement::zero();
                for (j, c) in coords.iter().enumerate() {
                    if !c.is_zero() {
                        acc += &c.mul(self.get(i, j), group);
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix of the composite map "`self` after `first`".
    pub fn after(&self, first: &RingMatrix, group: &Group) -> RingMatrix {
        assert_eq!(self.cols, first.rows);
        let columns = (0..first.cols).map(|j| self.apply(&first.column(j), group)).collect();
        RingMatrix::from_columns(self.rows, columns)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GroupRingElement::is_zero)
    }

    pub fn map_entries(&self, f: impl Fn(&GroupRingElement) -> GroupRingElement) -> RingMatrix {
        RingMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }
}

/// An element of `F_degree`, given by its coordinates in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeVector {
    degree: usize,
    coords: Vec<GroupRingElement>,
}

impl FreeVector {
    pub fn new(degree: usize, coords: Vec<GroupRingElement>) -> Result<Self, ResolutionError> {
        let rank = *RANKS.get(degree).ok_or(ResolutionError::DegreeOutOfRange(degree))?;
        if coords.len() != rank {
            return Err(ResolutionError::RankMismatch { degree, rank, got: coords.len() });
        }
        Ok(FreeVector { degree, coords })
    }

    pub fn zero(degree: usize) -> Self {
        FreeVector { degree, coords: vec![GroupRingElement::zero(); RANKS[degree]] }
    }

    pub fn basis(degree: usize, index: usize) -> Self {
        let mut v = Self::zero(degree);
        v.coords[index] = GroupRingElement::one();
        v
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[GroupRingElement] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(GroupRingElement::is_zero)
    }
}

/// The resolution for one parameter quadruple.
#[derive(Clone, Debug)]
pub struct Resolution {
    group: Group,
    d1: RingMatrix,
    d2: RingMatrix,
    d3: RingMatrix,
}

impl Resolution {
    /// Builds `d1`, `d2`, `d3`. Requires `r > 0`, `t < 0`, which
    /// [`GroupParams`] guarantees.
    pub fn new(params: GroupParams) -> Self {
        let group = Group::new(params);
        let (r, s, t, u) = group.params().as_tuple();
        let one = GroupRingElement::one;
        let elem = |g: GroupElement| GroupRingElement::from(g);
        let a1 = group.generator(Generator::A1);
        let b1 = group.generator(Generator::B1);
        let a2 = group.generator(Generator::A2);
        let x = |k: i64| GroupElement::lattice(k, 0);
        let xy = |m: i64, n: i64| GroupElement::lattice(m, n);
        let fa1 = |n: i64| fox_power(&group, &a1, n);
        let fb1 = |n: i64| fox_power(&group, &b1, n);

        let d1 = RingMatrix::from_columns(
            1,
            Generator::ALL.iter().map(|&g| vec![elem(group.generator(g)) - one()]).collect(),
        );

        let b1_inv = elem(group.inverse(&b1));
        let rho1 = vec![one() - b1_inv.clone(), elem(a1.clone()) + b1_inv, GroupRingElement::zero()];
        let rho2 = vec![fa1(2 * r), fb1(s).left_mul(&x(r), &group), -elem(a2.clone()) - one()];
        // a1^(-2t) b1^(-u) = x^-t y^-u
        let inv_txu = elem(xy(-t, -u));
        let rho3 = vec![
            (elem(a2.clone()) + inv_txu.clone()).mul(&fa1(2 * t), &group),
            (elem(group.multiply(&a2, &x(t))) + elem(xy(0, -u))).mul(&fb1(u), &group),
            one() - inv_txu,
        ];
        let d2 = RingMatrix::from_columns(3, vec![rho1, rho2, rho3]);

        let x0 = Self::build_x0(&group);
        let txu = elem(xy(t, u));
        let y0 = one() - txu.clone();
        let z0 = elem(a2) - txu;
        let d3 = RingMatrix::from_columns(3, vec![vec![x0, y0, z0]]);

        Resolution { group, d1, d2, d3 }
    }

    /// `X0` for `r > 0`, `t < 0`:
    ///
    /// ```text
    /// ( sum_{k=t}^{r+t-1}   a1^(2k)   D(b1^u)
    ///   + sum_{k=r+t}^{r-1}   a1^(2k)   D(b1^s)
    ///   + sum_{k=t+1}^{r+t}   a1^(2k-1) D(b1^-u)
    ///   + sum_{k=r+t+1}^{r}   a1^(2k-1) D(b1^-s) ) b1
    /// ```
    ///
    /// where `D(b1^n)` is the Fox derivative of `b1^n` with respect to `b1`.
    fn build_x0(group: &Group) -> GroupRingElement {
        let (r, s, t, u) = group.params().as_tuple();
        let a1 = group.generator(Generator::A1);
        let b1 = group.generator(Generator::B1);
        let mut acc = GroupRingElement::zero();
        let mut add_block = |range: std::ops::RangeInclusive<i64>, odd: bool, n: i64| {
            let d = fox_power(group, &b1, n);
            for k in range {
                let exp = if odd { 2 * k - 1 } else { 2 * k };
                acc += &d.left_mul(&group.pow_i64(&a1, exp), group);
            }
        };
        add_block(t..=r + t - 1, false, u);
        add_block(r + t..=r - 1, false, s);
        add_block(t + 1..=r + t, true, -u);
        add_block(r + t + 1..=r, true, -s);
        acc.right_mul(&b1, group)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn params(&self) -> &GroupParams {
        self.group.params()
    }

    /// `d_k` for `k` in `1..=3`.
    pub fn differential(&self, k: usize) -> Result<&RingMatrix, ResolutionError> {
        match k {
            1 => Ok(&self.d1),
            2 => Ok(&self.d2),
            3 => Ok(&self.d3),
            _ => Err(ResolutionError::DegreeOutOfRange(k)),
        }
    }

    pub fn d(&self, k: usize) -> &RingMatrix {
        self.differential(k).expect("degree in 1..=3")
    }

    pub fn apply_differential(&self, v: &FreeVector) -> Result<FreeVector, ResolutionError> {
        let d = self.differential(v.degree)?;
        FreeVector::new(v.degree - 1, d.apply(&v.coords, &self.group))
    }

    /// `(X0, Y0, Z0)`.
    pub fn kernel_generator(&self) -> [GroupRingElement; 3] {
        [self.d3.get(0, 0).clone(), self.d3.get(1, 0).clone(), self.d3.get(2, 0).clone()]
    }

    /// Left-hand sides of the three equations `X d2(i,1) + Y d2(i,2) + Z d2(i,3) = 0`
    /// evaluated at `(X0, Y0, Z0)`.
    pub fn kernel_residuals(&self) -> Vec<GroupRingElement> {
        self.d2.apply(&self.kernel_generator(), &self.group)
    }

    /// `d_{k-1} d_k = 0` for `k = 2, 3` and `eps d_1 = 0`.
    pub fn is_chain_complex(&self) -> bool {
        let g = &self.group;
        self.d1.after(&self.d2, g).is_zero()
            && self.d2.after(&self.d3, g).is_zero()
            && (0..3).all(|j| self.d1.get(0, j).augmentation() == Int::from(0))
    }

    #[doc(hidden)]
    /// Negative control for the verification suite: negates one entry of `d2`.
    pub fn inject_d2_sign_fault(&mut self) {
        let e = self.d2.get(1, 0).clone();
        *self.d2.get_mut(1, 0) = -e;
    }

    /// Every matrix entry in the group-ring text grammar.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "params {}", self.params());
        for k in 1..=3 {
            let d = self.d(k);
            for j in 0..d.cols() {
                for i in 0..d.rows() {
                    let _ = writeln!(out, "d{k}[{i},{j}] = {}", d.get(i, j));
                }
            }
        }
        out
    }
}

/// Shorthand for [`Resolution::new`].
pub fn build_resolution(params: GroupParams) -> Resolution {
    Resolution::new(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn res(r: i64, s: i64, t: i64, u: i64) -> Resolution {
        Resolution::new(GroupParams::new(r, s, t, u).unwrap())
    }

    fn p(s: &str, r: &Resolution) -> GroupRingElement {
        GroupRingElement::parse(s, r.group()).unwrap()
    }

    #[test]
    fn d1_and_d2_columns() {
        let res = res(1, 2, -1, -1);
        assert_eq!(res.d(1).get(0, 0), &p("a1 - 1", &res));
        assert_eq!(res.d(2).column(0), vec![p("1 - b1^-1", &res), p("a1 + b1^-1", &res), GroupRingElement::zero()]);
        assert_eq!(res.d(2).get(2, 1), &p("-a2 - 1", &res));
    }

    #[test]
    fn kernel_generator_augmentations() {
        let res = res(1, 1, -2, -1);
        for e in res.kernel_generator() {
            assert_eq!(e.augmentation(), Int::from(0));
        }
        let [_, y0, z0] = res.kernel_generator();
        assert_eq!(y0, p("1 - x^-2*y^-1", &res));
        assert_eq!(z0, p("a2 - x^-2*y^-1", &res));
    }

    #[test]
    fn chain_complex_on_matrix() {
        for (r, s, t, u) in [(1, 2, -1, -1), (1, 1, -2, -1), (3, 2, -1, -1), (1, 1, -5, -4)] {
            let res = res(r, s, t, u);
            assert!(res.is_chain_complex(), "({r},{s},{t},{u})");
            assert!(res.kernel_residuals().iter().all(GroupRingElement::is_zero));
        }
    }

    #[test]
    fn apply_differential_cases() {
        let res = res(1, 2, -1, -1);
        let rho1 = FreeVector::basis(2, 0);
        let image = res.apply_differential(&rho1).unwrap();
        assert_eq!(image.coords(), res.d(2).column(0).as_slice());
        assert!(res.apply_differential(&image).unwrap().is_zero());
        assert!(res.apply_differential(&FreeVector::zero(3)).unwrap().is_zero());
        assert_eq!(res.apply_differential(&FreeVector::zero(0)), Err(ResolutionError::DegreeOutOfRange(0)));
        assert!(FreeVector::new(1, vec![GroupRingElement::one()]).is_err());
    }

    #[test]
    fn fault_breaks_chain_condition() {
        let mut res = res(1, 2, -1, -1);
        res.inject_d2_sign_fault();
        assert!(!res.is_chain_complex());
    }
}
