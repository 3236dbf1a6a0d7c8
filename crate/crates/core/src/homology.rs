//! (Co)homology of `G` with coefficients, computed from the resolution.
//!
//! `Hom_G(F_k, A) = A^(rank F_k)`, and block `(j, i)` of `delta^k` is the
//! action of entry `(i, j)` of `d_{k+1}`. `F_k (x)_G A = A^(rank F_k)`, and
//! block `(i, j)` of `del_k` is the action of the antipode of entry `(i, j)` of
//! `d_k`.
//!
//! Every group is handled as a subquotient `K / I` of `Z^n`: over `Z`,
//! `K = ker M` and `I = im M_prev`; over `Z/m` both are lifted to `Z^n`, with
//! `K = {c : M c = 0 mod m}` and `I = im M_prev + m Z^n`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coefficients::CoefficientModule;
use crate::group::Int;
use crate::linalg::{smith_normal_form, solve_integer, IntMatrix};
use crate::resolution::{Resolution, RANKS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("vector is not a cocycle")]
    NotACocycle,
    #[error("class is not in the span of the given generators")]
    NotInSpan,
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ... | d_k`, all `d_i >= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn new(free_rank: usize, mut torsion: Vec<u64>) -> Self {
        torsion.retain(|&d| d != 1);
        torsion.sort_unstable();
        AbelianInvariants { free_rank, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().rev().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" + "))
    }
}

/// The subquotient `K / I` of `Z^n` for a pair of composable maps
/// `prev: Z^a -> Z^n`, `next: Z^n -> Z^b` over `Z` or `Z/m`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    modulus: Int,
    /// `U` with `K = U^-1[:, ..kappa] diag(lattice_d)`.
    lattice_u: IntMatrix,
    lattice_d: Vec<Int>,
    /// `P` and `P^-1` from the Smith form of the image in lattice coordinates.
    p: IntMatrix,
    /// Orders of the cyclic summands in `P`-coordinates (`0` = infinite).
    orders: Vec<Int>,
    /// Indices with order different from `1`.
    kept: Vec<usize>,
    generators: Vec<Vec<Int>>,
}

impl Subquotient {
    /// `m = 0` means integer coefficients.
    pub fn new(prev: &IntMatrix, next: &IntMatrix, modulus: &Int) -> Self {
        let n = next.cols();
        assert_eq!(prev.rows(), n, "maps are not composable");
        let modulus = modulus.abs();

        // generating set of K
        let augmented =
            if modulus.is_zero() { next.clone() } else { next.hcat(&IntMatrix::identity(next.rows()).scale(&modulus)) };
        let snf = smith_normal_form(&augmented);
        let kernel_gens = snf.v.columns(snf.rank..augmented.cols()).rows_range(0..n);

        // basis of K
        let basis = smith_normal_form(&kernel_gens);
        let kappa = basis.rank;
        let lattice_d = basis.invariants();
        let lattice_u = basis.u.clone();

        let mut sq = Subquotient {
            ambient: n,
            modulus: modulus.clone(),
            lattice_u,
            lattice_d,
            p: IntMatrix::identity(kappa),
            orders: vec![Int::zero(); kappa],
            kept: Vec::new(),
            generators: Vec::new(),
        };

        // image in lattice coordinates
        let mut image_cols: Vec<Vec<Int>> = (0..prev.cols()).map(|j| prev.column(j)).collect();
        if !modulus.is_zero() {
            for i in 0..n {
                let mut e = vec![Int::zero(); n];
                e[i] = modulus.clone();
                image_cols.push(e);
            }
        }
        let y_cols: Vec<Vec<Int>> =
            image_cols.iter().map(|c| sq.lattice_coords(c).expect("image lies in the kernel")).collect();
        let y = IntMatrix::from_columns(kappa, &y_cols);
        let pres = smith_normal_form(&y);
        for i in 0..pres.rank {
            sq.orders[i] = pres.d[(i, i)].clone();
        }
        sq.p = pres.u;
        sq.kept = (0..kappa).filter(|&i| !sq.orders[i].is_one()).collect();

        // generators: columns of K P^-1
        let k_basis = {
            let mut cols = Vec::with_capacity(kappa);
            for i in 0..kappa {
                cols.push(basis.u_inv.column(i).iter().map(|x| x * &sq.lattice_d[i]).collect::<Vec<_>>());
            }
            IntMatrix::from_columns(n, &cols)
        };
        let gens = &k_basis * &pres.u_inv;
        sq.generators = sq.kept.iter().map(|&i| reduce_vec(&gens.column(i), &modulus)).collect();
        sq
    }

    /// Coordinates in the basis of `K`, or `None` if `c` is not in `K`.
    fn lattice_coords(&self, c: &[Int]) -> Option<Vec<Int>> {
        let w = self.lattice_u.apply(c);
        let kappa = self.lattice_d.len();
        if w[kappa..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut y = Vec::with_capacity(kappa);
        for (x, d) in w.iter().zip(&self.lattice_d) {
            let (q, r) = x.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            y.push(q);
        }
        Some(y)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn modulus(&self) -> &Int {
        &self.modulus
    }

    pub fn invariants(&self) -> AbelianInvariants {
        let free = self.kept.iter().filter(|&&i| self.orders[i].is_zero()).count();
        let torsion = self
            .kept
            .iter()
            .filter(|&&i| !self.orders[i].is_zero())
            .map(|&i| self.orders[i].to_u64().expect("torsion order fits in u64"))
            .collect();
        AbelianInvariants::new(free, torsion)
    }

    /// Orders of [`Self::generators`], `0` for infinite order.
    pub fn generator_orders(&self) -> Vec<Int> {
        self.kept.iter().map(|&i| self.orders[i].clone()).collect()
    }

    /// Representatives of the cyclic summands, torsion first in divisibility
    /// order, then free summands.
    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    pub fn contains(&self, c: &[Int]) -> bool {
        c.len() == self.ambient && self.lattice_coords(c).is_some()
    }

    /// Coordinates of the class of `c` with respect to [`Self::generators`],
    /// torsion entries reduced into `[0, order)`.
    pub fn coordinates(&self, c: &[Int]) -> Result<Vec<Int>, HomologyError> {
        if c.len() != self.ambient {
            return Err(HomologyError::DimensionMismatch { expected: self.ambient, got: c.len() });
        }
        let y = self.lattice_coords(c).ok_or(HomologyError::NotACocycle)?;
        let z = self.p.apply(&y);
        Ok(self
            .kept
            .iter()
            .map(|&i| {
                let o = &self.orders[i];
                if o.is_zero() {
                    z[i].clone()
                } else {
                    z[i].mod_floor(o)
                }
            })
            .collect())
    }

    pub fn is_zero_class(&self, c: &[Int]) -> Result<bool, HomologyError> {
        Ok(self.coordinates(c)?.iter().all(Zero::is_zero))
    }

    /// A representative of `sum coords_i gen_i`.
    pub fn representative(&self, coords: &[Int]) -> Vec<Int> {
        assert_eq!(coords.len(), self.generators.len());
        let mut out = vec![Int::zero(); self.ambient];
        for (c, g) in coords.iter().zip(&self.generators) {
            for (o, x) in out.iter_mut().zip(g) {
                *o += c * x;
            }
        }
        reduce_vec(&out, &self.modulus)
    }

    /// Order of a class given by coordinates, `None` if infinite.
    pub fn order_of(&self, coords: &[Int]) -> Option<Int> {
        let mut order = Int::one();
        for (c, o) in coords.iter().zip(self.generator_orders()) {
            if c.is_zero() {
                continue;
            }
            if o.is_zero() {
                return None;
            }
            order = order.lcm(&(&o / c.gcd(&o)));
        }
        Some(order)
    }

    /// Writes the class of `c` as `sum x_i [gens_i]`; each `x_i` is reduced
    /// modulo the order of `[gens_i]`.
    pub fn express_in_generators(&self, c: &[Int], gens: &[Vec<Int>]) -> Result<Vec<Int>, HomologyError> {
        let z = self.coordinates(c)?;
        let gamma: Vec<Vec<Int>> = gens.iter().map(|g| self.coordinates(g)).collect::<Result<_, _>>()?;
        let mut cols = gamma.clone();
        for (i, o) in self.generator_orders().iter().enumerate() {
            if !o.is_zero() {
                let mut e = vec![Int::zero(); z.len()];
                e[i] = o.clone();
                cols.push(e);
            }
        }
        let system = IntMatrix::from_columns(z.len(), &cols);
        let x = solve_integer(&system, &z).ok_or(HomologyError::NotInSpan)?;
        Ok(x[..gens.len()]
            .iter()
            .zip(&gamma)
            .map(|(xi, g)| match self.order_of(g) {
                Some(o) if !o.is_zero() => xi.mod_floor(&o),
                _ => xi.clone(),
            })
            .collect())
    }

    /// Whether the classes of `gens` generate the whole group.
    pub fn generated_by(&self, gens: &[Vec<Int>]) -> Result<bool, HomologyError> {
        for g in &self.generators {
            match self.express_in_generators(g, gens) {
                Ok(_) => {}
                Err(HomologyError::NotInSpan) => return Ok(false),
                Err(e) => return Err(e),
            }
        }
        Ok(true)
    }
}

pub(crate) fn reduce_vec(v: &[Int], m: &Int) -> Vec<Int> {
    if m.is_zero() {
        v.to_vec()
    } else {
        v.iter().map(|x| x.mod_floor(m)).collect()
    }
}

/// Cochain differentials `delta^0, delta^1, delta^2` of `Hom_G(F, A)`.
pub fn cochain_complex(res: &Resolution, module: &CoefficientModule) -> Vec<IntMatrix> {
    let n = module.rank();
    (0..3)
        .map(|k| {
            let d = res.d(k + 1);
            let mut m = IntMatrix::zeros(RANKS[k + 1] * n, RANKS[k] * n);
            for i in 0..RANKS[k] {
                for j in 0..RANKS[k + 1] {
                    let block = module.represent(d.get(i, j));
                    place(&mut m, j * n, i * n, &block);
                }
            }
            m
        })
        .collect()
}

/// Boundary maps `del_1, del_2, del_3` of `F (x)_G A`.
pub fn chain_complex(res: &Resolution, module: &CoefficientModule) -> Vec<IntMatrix> {
    let n = module.rank();
    let group = res.group();
    (1..=3)
        .map(|k| {
            let d = res.d(k);
            let mut m = IntMatrix::zeros(RANKS[k - 1] * n, RANKS[k] * n);
            for i in 0..RANKS[k - 1] {
                for j in 0..RANKS[k] {
                    let block = module.represent(&d.get(i, j).antipode(group));
                    place(&mut m, i * n, j * n, &block);
                }
            }
            m
        })
        .collect()
}

fn place(m: &mut IntMatrix, r0: usize, c0: usize, block: &IntMatrix) {
    for a in 0..block.rows() {
        for b in 0..block.cols() {
            m[(r0 + a, c0 + b)] = block[(a, b)].clone();
        }
    }
}

/// `H^0..H^3` as subquotients of the cochain groups.
pub fn cohomology(res: &Resolution, module: &CoefficientModule) -> Vec<Subquotient> {
    let deltas = cochain_complex(res, module);
    let n = module.rank();
    let m = module.modulus();
    (0..4)
        .map(|k| {
            let dim = RANKS[k] * n;
            let prev = if k == 0 { IntMatrix::zeros(dim, 0) } else { deltas[k - 1].clone() };
            let next = if k == 3 { IntMatrix::zeros(0, dim) } else { deltas[k].clone() };
            Subquotient::new(&prev, &next, &m)
        })
        .collect()
}

/// `H_0..H_3` as subquotients of the chain groups.
pub fn homology(res: &Resolution, module: &CoefficientModule) -> Vec<Subquotient> {
    let dels = chain_complex(res, module);
    let n = module.rank();
    let m = module.modulus();
    (0..4)
        .map(|k| {
            let dim = RANKS[k] * n;
            let prev = if k == 3 { IntMatrix::zeros(dim, 0) } else { dels[k].clone() };
            let next = if k == 0 { IntMatrix::zeros(0, dim) } else { dels[k - 1].clone() };
            Subquotient::new(&prev, &next, &m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Character, GroupParams};

    fn res(r: i64, s: i64, t: i64, u: i64) -> Resolution {
        Resolution::new(GroupParams::new(r, s, t, u).unwrap())
    }

    fn inv(free: usize, torsion: &[u64]) -> AbelianInvariants {
        AbelianInvariants::new(free, torsion.to_vec())
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn integral_cohomology_s_even() {
        let res = res(1, 2, -1, -1);
        let z = CoefficientModule::trivial_z(res.params());
        let h: Vec<_> = cohomology(&res, &z).iter().map(Subquotient::invariants).collect();
        assert_eq!(h, vec![inv(1, &[]), inv(0, &[]), inv(0, &[2, 2, 4]), inv(1, &[])]);
    }

    #[test]
    fn cochain_blocks() {
        let res = res(1, 2, -1, -1);
        let z = CoefficientModule::trivial_z(res.params());
        assert!(cochain_complex(&res, &z)[0].is_zero());
        let e3 = CoefficientModule::character(res.params(), Character::ETA3).unwrap();
        let d = cochain_complex(&res, &e3);
        assert_eq!(d[0][(0, 0)], Int::from(-2));
        assert!((&d[1] * &d[0]).is_zero());
        assert!((&d[2] * &d[1]).is_zero());
    }

    #[test]
    fn homology_low_degrees() {
        let res = res(1, 1, -2, -1);
        let z = CoefficientModule::trivial_z(res.params());
        let h = homology(&res, &z);
        assert_eq!(h[0].invariants(), inv(1, &[]));
        assert_eq!(h[1].invariants(), inv(0, &[4, 8]));
        let e3 = CoefficientModule::character(res.params(), Character::ETA3).unwrap();
        assert_eq!(homology(&res, &e3)[0].invariants(), inv(0, &[2]));
    }

    #[test]
    fn coordinates_and_expression() {
        let res = res(1, 1, -2, -1);
        let z = CoefficientModule::trivial_z(res.params());
        let h = cohomology(&res, &z);
        let h2 = &h[2];
        // coboundary has zero coordinates
        let w = ints(&[3, -1, 2]);
        let cob = cochain_complex(&res, &z)[1].apply(&w);
        assert!(h2.is_zero_class(&cob).unwrap());
        // u = -1: [rho3*], [rho1* - rho3*]; [2 rho1* + rho2* - 2 rho3*] = 0
        let gens = vec![ints(&[0, 0, 1]), ints(&[1, 0, -1])];
        assert!(h2.generated_by(&gens).unwrap());
        assert_eq!(h2.express_in_generators(&ints(&[2, 1, -2]), &gens).unwrap(), ints(&[0, 0]));
        assert_eq!(h2.express_in_generators(&ints(&[1, 0, 0]), &gens).unwrap(), ints(&[1, 1]));
        // H^3 = Z
        let h3 = &h[3];
        assert_eq!(h3.coordinates(&h3.generators()[0]).unwrap(), ints(&[1]));
        // H^1 = 0 over Z; a non-cocycle in degree 1
        assert_eq!(h[1].coordinates(&ints(&[1, 0, 0])), Err(HomologyError::NotACocycle));
        // [rho3*] alone does not generate
        assert!(matches!(h2.express_in_generators(&ints(&[1, 0, -1]), &gens[..1]), Err(HomologyError::NotInSpan)));
    }

    #[test]
    fn torsion_subquotient_small() {
        // Z/4 --2--> Z/4: kernel {0, 2}, cokernel Z/2
        let m = Int::from(4);
        let two = IntMatrix::from_rows(&[vec![2]]);
        let ker = Subquotient::new(&IntMatrix::zeros(1, 0), &two, &m);
        assert_eq!(ker.invariants(), inv(0, &[2]));
        let coker = Subquotient::new(&two, &IntMatrix::zeros(0, 1), &m);
        assert_eq!(coker.invariants(), inv(0, &[2]));
        let zero = Subquotient::new(&IntMatrix::zeros(1, 0), &IntMatrix::zeros(0, 1), &Int::one());
        assert!(zero.invariants().is_zero());
    }

    #[test]
    fn display_invariants() {
        assert_eq!(inv(0, &[2, 2, 4]).to_string(), "Z/4 + Z/2 + Z/2");
        assert_eq!(inv(1, &[2]).to_string(), "Z + Z/2");
        assert_eq!(inv(0, &[]).to_string(), "0");
        let json = serde_json::to_string(&inv(1, &[4])).unwrap();
        assert_eq!(json, r#"{"free_rank":1,"torsion":[4]}"#);
    }
}
