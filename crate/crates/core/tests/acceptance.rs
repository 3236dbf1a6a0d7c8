//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. All comparisons are exact.

use std::collections::HashSet;
use std::process::ExitCode;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sapphire_core::coefficients::CoefficientModule;
use sapphire_core::diagonal::{delta11, handel_delta11, s0};
use sapphire_core::fox::{fox_decompose, recombine};
use sapphire_core::homology::{AbelianInvariants, Subquotient};
use sapphire_core::linalg::IntMatrix;
use sapphire_core::products::{ModuleData, Products};
use sapphire_core::resolution::{FreeVector, Resolution};
use sapphire_core::verify::random_element;
use sapphire_core::{Character, Generator, GroupParams, GroupRingElement, Int};

const MATRIX: [(i64, i64, i64, i64); 4] = [(1, 2, -1, -1), (1, 1, -2, -1), (3, 2, -1, -1), (1, 1, -5, -4)];

struct Criterion {
    failures: Vec<String>,
    checks: usize,
}

impl Criterion {
    fn new() -> Self {
        Criterion { failures: Vec::new(), checks: 0 }
    }

    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push(name.into());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, got: T, want: T) {
        let ok = got == want;
        self.check(format!("{name}: got {got:?}, want {want:?}"), ok);
    }
}

fn res(p: (i64, i64, i64, i64)) -> Resolution {
    Resolution::new(GroupParams::new(p.0, p.1, p.2, p.3).unwrap())
}

fn g(free: usize, torsion: &[u64]) -> AbelianInvariants {
    AbelianInvariants::new(free, torsion.to_vec())
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn character(res: &Resolution, a1: i64, b1: i64, a2: i64) -> ModuleData {
    let chi = Character::new(a1, b1, a2).unwrap();
    ModuleData::new(res, CoefficientModule::character(res.params(), chi).unwrap())
}

fn coh(data: &ModuleData) -> Vec<AbelianInvariants> {
    data.cohomology.iter().map(Subquotient::invariants).collect()
}

fn hom(data: &ModuleData) -> Vec<AbelianInvariants> {
    data.homology.iter().map(Subquotient::invariants).collect()
}

fn integral_cohomology() -> Criterion {
    let mut c = Criterion::new();
    let z = |p| {
        let r = res(p);
        coh(&ModuleData::new(&r, CoefficientModule::trivial_z(r.params())))
    };
    c.eq("(1,2,-1,-1) H^*(Z)", z((1, 2, -1, -1)), vec![g(1, &[]), g(0, &[]), g(0, &[2, 2, 4]), g(1, &[])]);
    c.eq("(1,1,-2,-1) H^2(Z)", z((1, 1, -2, -1))[2].clone(), g(0, &[4, 8]));
    c.eq("(3,2,-1,-1) H^2(Z)", z((3, 2, -1, -1))[2].clone(), g(0, &[2, 2, 4]));
    c
}

fn first_homology() -> Criterion {
    let mut c = Criterion::new();
    let expected = [g(0, &[2, 2, 4]), g(0, &[4, 8]), g(0, &[2, 2, 4]), g(0, &[4, 20])];
    for (p, want) in MATRIX.into_iter().zip(expected) {
        let r = res(p);
        let h = hom(&ModuleData::new(&r, CoefficientModule::trivial_z(r.params())));
        c.eq(&format!("{p:?} H_1(Z)"), h[1].clone(), want);
    }
    c
}

fn odd_b1_action() -> Criterion {
    let mut c = Criterion::new();
    let r = res((1, 2, -1, -1));
    let m = character(&r, 1, -1, 1);
    c.eq("(1,2,-1,-1) chi=(1,-1,1)", coh(&m), vec![g(0, &[]), g(0, &[2]), g(0, &[2, 2]), g(0, &[2])]);
    c
}

fn orientation_characters() -> Criterion {
    let mut c = Criterion::new();
    let r = res((1, 1, -2, -1));
    let h = |a1, b1, a2| coh(&character(&r, a1, b1, a2));
    let (e1, e2, e3) = (h(1, 1, -1), h(-1, 1, 1), h(-1, 1, -1));
    c.eq("(1,1,-2,-1) eta1 H^1,H^2", (e1[1].clone(), e1[2].clone()), (g(0, &[2]), g(0, &[4])));
    c.eq("(1,1,-2,-1) eta2 H^1,H^2", (e2[1].clone(), e2[2].clone()), (g(0, &[2]), g(0, &[4])));
    c.eq("(1,1,-2,-1) eta3 H^1,H^2", (e3[1].clone(), e3[2].clone()), (g(1, &[2]), g(1, &[])));
    let r = res((1, 2, -1, -1));
    let h = |a1, b1, a2| coh(&character(&r, a1, b1, a2));
    let (e1, e3) = (h(1, 1, -1), h(-1, 1, -1));
    c.eq("(1,2,-1,-1) eta1 H^2", e1[2].clone(), g(0, &[2, 2]));
    c.eq("(1,2,-1,-1) eta3 H^1,H^2", (e3[1].clone(), e3[2].clone()), (g(1, &[2]), g(1, &[2])));
    c
}

fn mod_p() -> Criterion {
    let mut c = Criterion::new();
    let r = res((1, 1, -5, -4));
    let p = Products::new(&r);
    let z5 = ModuleData::new(&r, CoefficientModule::zp(r.params(), 5).unwrap());
    c.eq("Z/5 groups", coh(&z5), vec![g(0, &[5]); 4]);
    let target = ModuleData::new(&r, CoefficientModule::tensor(&z5.module, &z5.module));
    let alpha = z5.cohomology[1].generators()[0].clone();
    let beta = z5.cohomology[2].generators()[0].clone();
    let square = p.cup_11(&z5, &alpha, &z5, &alpha).and_then(|w| target.cohomology[2].is_zero_class(&w));
    c.eq("Z/5 alpha^2 = 0", square, Ok(true));
    // beta^2 lies in degree 4, above the cohomological dimension
    c.eq("Z/5 H^4 absent", r.d(3).cols(), 1);
    let top = p.cup_12(&z5, &alpha, &z5, &beta, &target).and_then(|w| target.cohomology[3].coordinates(&w));
    c.check(format!("Z/5 alpha beta generates H^3: {top:?}"), matches!(&top, Ok(v) if v.len() == 1 && !v[0].is_zero()));
    let z3 = ModuleData::new(&r, CoefficientModule::zp(r.params(), 3).unwrap());
    c.eq("Z/3 groups", coh(&z3), vec![g(0, &[3]), g(0, &[]), g(0, &[]), g(0, &[3])]);
    c
}

fn example_two() -> Criterion {
    let mut c = Criterion::new();
    let (r_, t, u) = (1i64, -2i64, -1i64);
    let r = res((r_, 1, t, u));
    let p = Products::new(&r);
    let e3 = character(&r, -1, 1, -1);
    let z = ModuleData::new(&r, CoefficientModule::tensor(&e3.module, &e3.module));
    let h2 = &z.cohomology[2];
    let gens = vec![ints(&[0, 0, 1]), ints(&[1, 0, u])];
    let orders = [4 * t.abs(), 4];
    let reduce = |v: [i64; 2]| -> Vec<Int> { v.iter().zip(orders).map(|(x, o)| Int::from(x.rem_euclid(o))).collect() };
    let (a2, a12) = (ints(&[0, 0, 1]), ints(&[1, 0, 1]));
    for (name, x, y, want) in [
        ("[a2*]^2", &a2, &a2, [0, 2]),
        ("[a2*][a1*+a2*]", &a2, &a12, [2 * t, 2]),
        ("[a1*+a2*]^2", &a12, &a12, [2 * t, -2 * (r_ - 1)]),
    ] {
        let got = p.cup_11(&e3, x, &e3, y).and_then(|w| h2.express_in_generators(&w, &gens));
        c.eq(name, got, Ok(reduce(want)));
    }
    let h3 = &z.cohomology[3];
    let top = |x: &[Int], y: &[Int]| p.cup_12(&e3, x, &e3, y, &z).and_then(|w| h3.coordinates(&w));
    let (r13, r2) = (ints(&[1, 0, 1]), ints(&[0, 1, 0]));
    for (name, x, y) in [("[a1*+a2*][r1*+r3*]", &a12, &r13), ("[a1*+a2*][r2*]", &a12, &r2), ("[a2*][r2*]", &a2, &r2)] {
        c.eq(name, top(x, y), Ok(vec![Int::zero()]));
    }
    let gen = top(&a2, &r13);
    c.check(
        format!("[a2*][r1*+r3*] generates H^3: {gen:?}"),
        matches!(&gen, Ok(v) if v.len() == 1 && (v[0].is_one() || v[0] == -Int::one())),
    );
    c.eq("[2r1*+r2*+2u r3*] = 0", h2.is_zero_class(&ints(&[2, 1, 2 * u])), Ok(true));
    c
}

fn example_one() -> Criterion {
    let mut c = Criterion::new();
    let r = res((1, 1, -2, -1));
    let p = Products::new(&r);
    let e1 = character(&r, 1, 1, -1);
    let e2 = character(&r, -1, 1, 1);
    let target = ModuleData::new(&r, CoefficientModule::tensor(&e1.module, &e2.module));
    let e3 = CoefficientModule::character(r.params(), Character::ETA3).unwrap();
    let same_action = Generator::ALL.iter().all(|&gen| target.module.action(gen) == e3.action(gen));
    c.check("eta1 (x) eta2 = eta3", same_action);
    for u in e1.cohomology[1].generators() {
        for v in e2.cohomology[1].generators() {
            let h2 = &target.cohomology[2];
            let w = p.cup_11(&e1, u, &e2, v).and_then(|w| h2.coordinates(&w));
            c.eq(&format!("(1,1) product {u:?} {v:?}"), w, Ok(vec![Int::zero(); h2.generators().len()]));
        }
        for v in e2.cohomology[2].generators() {
            let h3 = &target.cohomology[3];
            let w = p.cup_12(&e1, u, &e2, v, &target).and_then(|w| h3.coordinates(&w));
            c.eq(&format!("(1,2) product {u:?} {v:?}"), w, Ok(vec![Int::zero(); h3.generators().len()]));
        }
    }
    let alpha2 = ints(&[0, 0, 1]);
    c.check("alpha2* is a cocycle over eta1", e1.class(1, alpha2.clone()).is_ok());
    let b1 = ints(&[0, 1, 0]);
    c.check("beta1 (x) 1 is a cycle over eta2", e2.homology[1].contains(&b1));
    let cap = p.cap_with_chain(&e1, &alpha2, &e2, &b1).and_then(|w| target.homology[0].is_zero_class(&w));
    c.eq("[alpha2*] cap [beta1 (x) 1] = 0", cap, Ok(true));
    c
}

fn structural() -> Criterion {
    let mut c = Criterion::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for p in MATRIX {
        let r = res(p);
        let group = r.group();
        c.check(format!("{p:?} d1 d2 = 0, d2 d3 = 0"), r.is_chain_complex());
        let eps_d1 = (0..3).all(|j| r.d(1).get(0, j).augmentation().is_zero());
        c.check(format!("{p:?} eps d1 = 0"), eps_d1);
        c.check(format!("{p:?} kernel system"), r.kernel_residuals().iter().all(GroupRingElement::is_zero));
        c.check(format!("{p:?} eps(X0, Y0, Z0) = 0"), r.kernel_generator().iter().all(|e| e.augmentation().is_zero()));
        for _ in 0..200 {
            let x = random_element(group, &mut rng, 12);
            let e = GroupRingElement::from(x.clone());
            let back = r.apply_differential(&s0(group, &e)).unwrap();
            c.check(format!("{p:?} homotopy identity at {x}"), back.coords()[0].clone() + GroupRingElement::one() == e);
            let y = random_element(group, &mut rng, 12);
            let diff = GroupRingElement::from(x) - GroupRingElement::from(y);
            let ok = fox_decompose(group, &diff).map(|parts| recombine(group, &parts) == diff);
            c.check(format!("{p:?} Fox decomposition of {diff}"), ok == Ok(true));
        }
        for j in 0..3 {
            c.check(
                format!("{p:?} Handel recursion at rho{}", j + 1),
                handel_delta11(&r, &FreeVector::basis(2, j)) == delta11(group, j),
            );
        }
        for _ in 0..500 {
            let [a, b, d] = [0, 1, 2].map(|_| random_element(group, &mut rng, 12));
            let ok = group.multiply(&group.multiply(&a, &b), &d) == group.multiply(&a, &group.multiply(&b, &d));
            c.check(format!("{p:?} associativity at ({a}, {b}, {d})"), ok);
        }
    }
    c
}

fn duality() -> Criterion {
    let mut c = Criterion::new();
    for p in MATRIX {
        let r = res(p);
        let mut modules = vec![
            ("Z", CoefficientModule::trivial_z(r.params())),
            ("Z/5", CoefficientModule::zp(r.params(), 5).unwrap()),
        ];
        for (name, chi) in [("eta1", Character::ETA1), ("eta2", Character::ETA2), ("eta3", Character::ETA3)] {
            modules.push((name, CoefficientModule::character(r.params(), chi).unwrap()));
        }
        for (name, m) in modules {
            let data = ModuleData::new(&r, m);
            let (h, hh) = (coh(&data), hom(&data));
            c.eq(&format!("{p:?} {name} H^3 vs H_0"), h[3].clone(), hh[0].clone());
            c.eq(&format!("{p:?} {name} H^2 vs H_1"), h[2].clone(), hh[1].clone());
        }
    }
    c
}

/// All vectors of `(Z/m)^n`.
fn vectors(m: i64, n: usize) -> Vec<Vec<i64>> {
    (0..m.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = k % m;
                    k /= m;
                    d
                })
                .collect()
        })
        .collect()
}

fn torsion_oracle() -> Criterion {
    let mut c = Criterion::new();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for m in [2i64, 3, 4] {
        for trial in 0..40 {
            let next: Vec<Vec<i64>> = (0..2).map(|_| (0..3).map(|_| rng.gen_range(0..m)).collect()).collect();
            let apply = |v: &[i64]| -> Vec<i64> {
                next.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(m)).collect()
            };
            let kernel: Vec<Vec<i64>> =
                vectors(m, 3).into_iter().filter(|v| apply(v).iter().all(|&x| x == 0)).collect();
            let k = rng.gen_range(0..=2);
            let prev_cols: Vec<Vec<i64>> = (0..k).map(|_| kernel[rng.gen_range(0..kernel.len())].clone()).collect();
            let image: HashSet<Vec<i64>> = vectors(m, k)
                .into_iter()
                .map(|coef| {
                    (0..3)
                        .map(|i| prev_cols.iter().zip(&coef).map(|(col, a)| col[i] * a).sum::<i64>().rem_euclid(m))
                        .collect()
                })
                .collect();

            let next_m = IntMatrix::from_rows(&next);
            let prev_m = IntMatrix::from_columns(3, &prev_cols.iter().map(|v| ints(v)).collect::<Vec<_>>());
            let sq = Subquotient::new(&prev_m, &next_m, &Int::from(m));
            let inv = sq.invariants();
            c.check(format!("m={m} trial {trial}: finite"), inv.free_rank == 0);
            for n in 1..=m {
                if m % n != 0 {
                    continue;
                }
                let brute = kernel
                    .iter()
                    .filter(|v| image.contains(&v.iter().map(|x| (x * n).rem_euclid(m)).collect::<Vec<_>>()))
                    .count()
                    / image.len();
                let engine: u64 = inv.torsion.iter().map(|d| d.gcd(&(n as u64))).product();
                c.eq(
                    &format!("m={m} trial {trial} next={next:?} prev={prev_cols:?}: #elements killed by {n}"),
                    engine as usize,
                    brute,
                );
            }
        }
    }
    c
}

fn main() -> ExitCode {
    type Run = fn() -> Criterion;
    let criteria: [(&str, Run); 10] = [
        ("integral cohomology", integral_cohomology),
        ("first homology", first_homology),
        ("b1 acting by -1", odd_b1_action),
        ("orientation characters", orientation_characters),
        ("mod-p cohomology", mod_p),
        ("eta3 cup identities", example_two),
        ("eta1 x eta2 products vanish", example_one),
        ("structural invariants", structural),
        ("duality numerics", duality),
        ("torsion homology oracle", torsion_oracle),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let result = run();
        let status = if result.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} criterion {:>2}: {title} ({} checks, exact, tolerance 0)", i + 1, result.checks);
        for f in &result.failures {
            println!("       {f}");
        }
        if !result.failures.is_empty() {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
