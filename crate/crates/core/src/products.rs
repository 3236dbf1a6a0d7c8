//! Cup products in bidegrees `(1, 1)`, `(1, 2)`, `(2, 1)` and cap products
//! with the fundamental class.
//!
//! Cochains are coordinate vectors: a `k`-cochain over a module of rank `n`
//! lists `u(e_1), u(e_2), ...` in blocks of `n`. Values in `A (x) B` use
//! Kronecker coordinates, the `A` index varying slowest.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coefficients::CoefficientModule;
use crate::diagonal::{delta11, zeta_pi12, TensorVector};
use crate::group::Int;
use crate::homology::{
    cochain_complex, cohomology, homology, reduce_vec, AbelianInvariants, HomologyError, Subquotient,
};
use crate::linalg::IntMatrix;
use crate::resolution::{Resolution, RANKS};

/// A cocycle together with its coordinates in the computed generators of
/// its cohomology group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: usize,
    pub cocycle: Vec<Int>,
    pub coordinates: Vec<Int>,
}

/// Cohomology and homology of `G` with coefficients in one module.
#[derive(Clone, Debug)]
pub struct ModuleData {
    pub module: CoefficientModule,
    pub cohomology: Vec<Subquotient>,
    pub homology: Vec<Subquotient>,
    deltas: Vec<IntMatrix>,
}

impl ModuleData {
    pub fn new(res: &Resolution, module: CoefficientModule) -> Self {
        ModuleData {
            cohomology: cohomology(res, &module),
            homology: homology(res, &module),
            deltas: cochain_complex(res, &module),
            module,
        }
    }

    pub fn class(&self, degree: usize, cocycle: Vec<Int>) -> Result<CohomologyClass, HomologyError> {
        let coordinates = self.cohomology[degree].coordinates(&cocycle)?;
        Ok(CohomologyClass { degree, cocycle, coordinates })
    }

    /// The `i`-th computed generator of `H^degree`.
    pub fn generator(&self, degree: usize, i: usize) -> CohomologyClass {
        let cocycle = self.cohomology[degree].generators()[i].clone();
        self.class(degree, cocycle).expect("generators are cocycles")
    }

    fn check_cocycle(&self, degree: usize, u: &[Int]) -> Result<(), HomologyError> {
        let expected = RANKS[degree] * self.module.rank();
        if u.len() != expected {
            return Err(HomologyError::DimensionMismatch { expected, got: u.len() });
        }
        if degree < 3 {
            let image = reduce_vec(&self.deltas[degree].apply(u), &self.module.modulus());
            if image.iter().any(|x| !x.is_zero()) {
                return Err(HomologyError::NotACocycle);
            }
        }
        Ok(())
    }
}

fn kron_vec(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

fn add_into(acc: &mut [Int], v: &[Int]) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a += x;
    }
}

fn block(v: &[Int], n: usize, i: usize) -> &[Int] {
    &v[i * n..(i + 1) * n]
}

/// Chain-level data shared by all products over one resolution.
pub struct Products<'a> {
    res: &'a Resolution,
    delta11: Vec<TensorVector>,
    pi12: TensorVector,
}

impl<'a> Products<'a> {
    pub fn new(res: &'a Resolution) -> Self {
        Products { res, delta11: (0..3).map(|j| delta11(res.group(), j)).collect(), pi12: zeta_pi12(res) }
    }

    pub fn resolution(&self) -> &Resolution {
        self.res
    }

    /// `(u (x) v) Delta_{1,1}`, a 2-cocycle over `A (x) B`.
    pub fn cup_11(&self, a: &ModuleData, u: &[Int], b: &ModuleData, v: &[Int]) -> Result<Vec<Int>, HomologyError> {
        a.check_cocycle(1, u)?;
        b.check_cocycle(1, v)?;
        let (na, nb) = (a.module.rank(), b.module.rank());
        let target = CoefficientModule::tensor(&a.module, &b.module);
        let mut out = vec![Int::zero(); 3 * na * nb];
        for (j, d) in self.delta11.iter().enumerate() {
            let mut value = vec![Int::zero(); na * nb];
            for k in 0..3 {
                for l in 0..3 {
                    for (g, h, c) in d.block(k, l).terms() {
                        let left = a.module.represent_element(g).apply(block(u, na, k));
                        let right = b.module.represent_element(h).apply(block(v, nb, l));
                        let term: Vec<Int> = kron_vec(&left, &right).iter().map(|x| x * c).collect();
                        add_into(&mut value, &term);
                    }
                }
            }
            out[j * na * nb..(j + 1) * na * nb].clone_from_slice(&value);
        }
        Ok(reduce_vec(&out, &target.modulus()))
    }

    /// `u` capped with the fundamental cycle `zeta`: a `(3 - n)`-chain.
    ///
    /// Uses `u (x) (x (x) y) -> (-1)^(deg u deg x) x (x) u(y)`. The `(1, 2)`
    /// component of `zeta` is `-pi_{1,2}`, see [`zeta_pi12`].
    pub fn cap_with_zeta(&self, n: usize, m: &ModuleData, u: &[Int]) -> Result<Vec<Int>, HomologyError> {
        m.check_cocycle(n, u)?;
        let rank = m.module.rank();
        let modulus = m.module.modulus();
        match n {
            3 => {
                // pi_{0,3}(zeta) = 1 (x) 1, deg x = 0
                Ok(reduce_vec(u, &modulus))
            }
            2 => {
                let deg_x = 1;
                let sign = sign_pow(n * deg_x);
                let group = self.res.group();
                let mut out = vec![Int::zero(); 3 * rank];
                for k in 0..3 {
                    let mut acc = vec![Int::zero(); rank];
                    for j in 0..3 {
                        for (g, h, c) in self.pi12.block(k, j).terms() {
                            let shift = group.multiply(&group.inverse(g), h);
                            let term = m.module.represent_element(&shift).apply(block(u, rank, j));
                            let coeff = -(c * &sign);
                            add_into(&mut acc, &term.iter().map(|x| x * &coeff).collect::<Vec<_>>());
                        }
                    }
                    out[k * rank..(k + 1) * rank].clone_from_slice(&acc);
                }
                Ok(reduce_vec(&out, &modulus))
            }
            _ => Err(HomologyError::DimensionMismatch { expected: 2, got: n }),
        }
    }

    /// `u` capped with a 1-chain `sum_k e_k (x) b_k` through `Delta_{0,1}`:
    /// `sum_k 1 (x) u(e_k) (x) b_k` in `F_0 (x)_G (A (x) B)`.
    pub fn cap_with_chain(
        &self,
        a: &ModuleData,
        u: &[Int],
        b: &ModuleData,
        chain: &[Int],
    ) -> Result<Vec<Int>, HomologyError> {
        a.check_cocycle(1, u)?;
        let nb = b.module.rank();
        if chain.len() != 3 * nb {
            return Err(HomologyError::DimensionMismatch { expected: 3 * nb, got: chain.len() });
        }
        Ok(self.cap_1(a, u, b, chain))
    }

    fn cap_1(&self, a: &ModuleData, u: &[Int], b: &ModuleData, chain: &[Int]) -> Vec<Int> {
        let (na, nb) = (a.module.rank(), b.module.rank());
        // deg u * deg x = 1 * 0
        let sign = sign_pow(0);
        let mut out = vec![Int::zero(); na * nb];
        for k in 0..3 {
            let term = kron_vec(block(u, na, k), block(chain, nb, k));
            add_into(&mut out, &term.iter().map(|x| x * &sign).collect::<Vec<_>>());
        }
        let modulus = CoefficientModule::tensor(&a.module, &b.module).modulus();
        reduce_vec(&out, &modulus)
    }

    /// `u` cup `v` for `deg u = 1`, `deg v = 2`, as a 3-cocycle over
    /// `A (x) B`, obtained from `phi_3(u v) = u cap phi_2(v)`.
    pub fn cup_12(
        &self,
        a: &ModuleData,
        u: &[Int],
        b: &ModuleData,
        v: &[Int],
        target: &ModuleData,
    ) -> Result<Vec<Int>, HomologyError> {
        a.check_cocycle(1, u)?;
        let chain = self.cap_with_zeta(2, b, v)?;
        let h0 = self.cap_1(a, u, b, &chain);
        let h3 = &target.cohomology[3];
        let images: Vec<Vec<Int>> =
            h3.generators().iter().map(|g| self.cap_with_zeta(3, target, g)).collect::<Result<_, _>>()?;
        let x = target.homology[0].express_in_generators(&h0, &images)?;
        Ok(h3.representative(&x))
    }

    /// `v` cup `u` for `deg v = 2`, `deg u = 1`: the swap of `u` cup `v`
    /// (the sign `(-1)^(1 * 2)` is `+1`).
    pub fn cup_21(
        &self,
        a: &ModuleData,
        v: &[Int],
        b: &ModuleData,
        u: &[Int],
        target: &ModuleData,
    ) -> Result<Vec<Int>, HomologyError> {
        let swapped_target = ModuleData::new(self.res, CoefficientModule::tensor(&b.module, &a.module));
        let w = self.cup_12(b, u, a, v, &swapped_target)?;
        let sign = sign_pow(2);
        let w: Vec<Int> = swap(a.module.rank(), b.module.rank(), &w).iter().map(|x| x * &sign).collect();
        Ok(reduce_vec(&w, &target.module.modulus()))
    }
}

fn sign_pow(e: usize) -> Int {
    if e.is_multiple_of(2) {
        Int::from(1)
    } else {
        Int::from(-1)
    }
}

/// Coordinates over `B (x) A` to coordinates over `A (x) B`, blockwise for a
/// cochain with values in `B (x) A`.
pub fn swap(na: usize, nb: usize, w: &[Int]) -> Vec<Int> {
    let size = na * nb;
    w.chunks(size).flat_map(|c| CoefficientModule::swap_coordinates(nb, na, c)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub bidegree: [usize; 2],
    pub left: String,
    pub right: String,
    pub result: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub id: String,
    pub order: u64,
    pub cocycle: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductTable {
    pub left_module: String,
    pub right_module: String,
    pub target_module: String,
    /// Generators of `H^1, H^2` over the left and right modules and of
    /// `H^2, H^3` over their tensor product; order `0` means infinite.
    pub generators: Vec<GeneratorInfo>,
    pub entries: Vec<ProductEntry>,
}

fn to_i64(v: &[Int]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).expect("coordinate fits in i64")).collect()
}

fn gen_id(side: &str, degree: usize, i: usize) -> String {
    format!("{side}.H{degree}.{i}")
}

/// All products of computed generators in bidegrees `(1, 1)`, `(1, 2)` and
/// `(2, 1)`.
pub fn product_table(res: &Resolution, left: &CoefficientModule, right: &CoefficientModule) -> ProductTable {
    let products = Products::new(res);
    let a = ModuleData::new(res, left.clone());
    let b = ModuleData::new(res, right.clone());
    let target = ModuleData::new(res, CoefficientModule::tensor(left, right));

    let mut generators = Vec::new();
    for (side, data, degrees) in [("A", &a, [1, 2]), ("B", &b, [1, 2]), ("AB", &target, [2, 3])] {
        for d in degrees {
            let h = &data.cohomology[d];
            for (i, (g, o)) in h.generators().iter().zip(h.generator_orders()).enumerate() {
                generators.push(GeneratorInfo {
                    id: gen_id(side, d, i),
                    order: u64::try_from(&o).expect("order fits in u64"),
                    cocycle: to_i64(g),
                });
            }
        }
    }

    let mut entries = Vec::new();
    let ga = |d: usize| a.cohomology[d].generators().to_vec();
    let gb = |d: usize| b.cohomology[d].generators().to_vec();
    for (i, u) in ga(1).iter().enumerate() {
        for (j, v) in gb(1).iter().enumerate() {
            let w = products.cup_11(&a, u, &b, v).expect("generators are cocycles");
            entries.push(ProductEntry {
                bidegree: [1, 1],
                left: gen_id("A", 1, i),
                right: gen_id("B", 1, j),
                result: to_i64(&target.cohomology[2].coordinates(&w).expect("cup of cocycles is a cocycle")),
            });
        }
        for (j, v) in gb(2).iter().enumerate() {
            let w = products.cup_12(&a, u, &b, v, &target).expect("generators are cocycles");
            entries.push(ProductEntry {
                bidegree: [1, 2],
                left: gen_id("A", 1, i),
                right: gen_id("B", 2, j),
                result: to_i64(&target.cohomology[3].coordinates(&w).expect("3-cochains are cocycles")),
            });
        }
    }
    for (i, v) in ga(2).iter().enumerate() {
        for (j, u) in gb(1).iter().enumerate() {
            let w = products.cup_21(&a, v, &b, u, &target).expect("generators are cocycles");
            entries.push(ProductEntry {
                bidegree: [2, 1],
                left: gen_id("A", 2, i),
                right: gen_id("B", 1, j),
                result: to_i64(&target.cohomology[3].coordinates(&w).expect("3-cochains are cocycles")),
            });
        }
    }
    ProductTable {
        left_module: left.name().to_string(),
        right_module: right.name().to_string(),
        target_module: target.module.name().to_string(),
        generators,
        entries,
    }
}

/// Invariants of `H^0..H^3` for a module.
pub fn cohomology_invariants(data: &ModuleData) -> Vec<AbelianInvariants> {
    data.cohomology.iter().map(Subquotient::invariants).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Character, GroupParams};

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn setup() -> (Resolution, ModuleData) {
        let res = Resolution::new(GroupParams::new(1, 1, -2, -1).unwrap());
        let e3 = ModuleData::new(&res, CoefficientModule::character(res.params(), Character::ETA3).unwrap());
        (res, e3)
    }

    #[test]
    fn cup_11_alpha2_square() {
        let (res, e3) = setup();
        let p = Products::new(&res);
        let z = ModuleData::new(&res, CoefficientModule::tensor(&e3.module, &e3.module));
        let alpha2 = ints(&[0, 0, 1]);
        let w = p.cup_11(&e3, &alpha2, &e3, &alpha2).unwrap();
        // [rho3*], [rho1* - rho3*] with u = -1
        let gens = vec![ints(&[0, 0, 1]), ints(&[1, 0, -1])];
        assert_eq!(z.cohomology[2].express_in_generators(&w, &gens).unwrap(), ints(&[0, 2]));
        let zero = p.cup_11(&e3, &ints(&[0, 0, 0]), &e3, &alpha2).unwrap();
        assert!(z.cohomology[2].is_zero_class(&zero).unwrap());
        assert_eq!(p.cup_11(&e3, &ints(&[0, 1, 0]), &e3, &alpha2), Err(HomologyError::NotACocycle));
    }

    #[test]
    fn cap_outputs_are_cycles() {
        let (res, e3) = setup();
        let p = Products::new(&res);
        let del1 = crate::homology::chain_complex(&res, &e3.module)[0].clone();
        for v in [ints(&[1, 0, 1]), ints(&[0, 1, 0]), ints(&[1, 1, 1])] {
            let chain = p.cap_with_zeta(2, &e3, &v).unwrap();
            assert!(del1.apply(&chain).iter().all(Zero::is_zero));
        }
        assert!(p.cap_with_zeta(3, &e3, &ints(&[0])).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn cup_12_generates_top_class() {
        let (res, e3) = setup();
        let p = Products::new(&res);
        let z = ModuleData::new(&res, CoefficientModule::tensor(&e3.module, &e3.module));
        let w = p.cup_12(&e3, &ints(&[0, 0, 1]), &e3, &ints(&[1, 0, 1]), &z).unwrap();
        let c = z.cohomology[3].coordinates(&w).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0] == Int::from(1) || c[0] == Int::from(-1));
        let w = p.cup_21(&e3, &ints(&[1, 0, 1]), &e3, &ints(&[0, 0, 1]), &z).unwrap();
        let c = z.cohomology[3].coordinates(&w).unwrap();
        assert!(c[0] == Int::from(1) || c[0] == Int::from(-1));
    }

    #[test]
    fn swap_is_an_involution() {
        let w = ints(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]);
        assert_eq!(swap(3, 2, &swap(2, 3, &w)), w);
        assert_ne!(swap(2, 3, &w), w);
    }
}
