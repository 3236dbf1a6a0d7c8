use std::sync::OnceLock;

use num_traits::Zero;
use proptest::prelude::*;

use sapphire_core::coefficients::{CoefficientModule, Underlying};
use sapphire_core::fox::fox_gradient;
use sapphire_core::group::{invert_word, Symbol};
use sapphire_core::homology::cochain_complex;
use sapphire_core::linalg::IntMatrix;
use sapphire_core::products::{swap, ModuleData, Products};
use sapphire_core::resolution::Resolution;
use sapphire_core::{Character, Generator, Group, GroupElement, GroupParams, GroupRingElement, Int};

const PARAMS: [(i64, i64, i64, i64); 7] =
    [(1, 2, -1, -1), (1, 1, -2, -1), (3, 2, -1, -1), (1, 1, -5, -4), (2, 1, -1, -1), (1, 3, -1, -2), (2, 3, -3, -4)];

fn groups() -> &'static Vec<Group> {
    static GROUPS: OnceLock<Vec<Group>> = OnceLock::new();
    GROUPS
        .get_or_init(|| PARAMS.iter().map(|&(r, s, t, u)| Group::new(GroupParams::new(r, s, t, u).unwrap())).collect())
}

fn word(max: usize) -> impl Strategy<Value = Vec<Symbol>> {
    prop::collection::vec((0..3usize, any::<bool>()), 0..=max).prop_map(|letters| {
        letters
            .into_iter()
            .map(|(i, inv)| if inv { Generator::ALL[i].inverse_symbol() } else { Generator::ALL[i].symbol() })
            .collect()
    })
}

fn ring_element(max_terms: usize) -> impl Strategy<Value = Vec<(Vec<Symbol>, i64)>> {
    prop::collection::vec((word(6), -3i64..=3), 0..=max_terms)
}

fn build(group: &Group, terms: &[(Vec<Symbol>, i64)]) -> GroupRingElement {
    GroupRingElement::from_terms(terms.iter().map(|(w, c)| (group.evaluate(w), Int::from(*c))))
}

fn one(group: &Group) -> GroupElement {
    group.evaluate(&[])
}

/// A rank-2 module on which `a1` and `a2` act by non-commuting involutions.
fn rank_two(params: &GroupParams) -> CoefficientModule {
    let a1 = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
    let b1 = IntMatrix::identity(2);
    let a2 = IntMatrix::from_rows(&[vec![1, 0], vec![0, -1]]);
    CoefficientModule::new(params, Underlying::FreeZ(2), [a1, b1, a2], "Z2-flip").unwrap()
}

struct Fixture {
    res: Resolution,
    eta3: ModuleData,
    target: ModuleData,
    delta0: IntMatrix,
    delta1: IntMatrix,
}

fn fixture() -> &'static Fixture {
    static FIXTURE: OnceLock<Fixture> = OnceLock::new();
    FIXTURE.get_or_init(|| {
        let res = Resolution::new(GroupParams::new(1, 1, -2, -1).unwrap());
        let module = CoefficientModule::character(res.params(), Character::ETA3).unwrap();
        let deltas = cochain_complex(&res, &module);
        let eta3 = ModuleData::new(&res, module.clone());
        let target = ModuleData::new(&res, CoefficientModule::tensor(&module, &module));
        Fixture { eta3, target, delta0: deltas[0].clone(), delta1: deltas[1].clone(), res }
    })
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn add(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplication_is_associative(p in 0..PARAMS.len(), a in word(12), b in word(12), c in word(12)) {
        let g = &groups()[p];
        let (a, b, c) = (g.evaluate(&a), g.evaluate(&b), g.evaluate(&c));
        prop_assert_eq!(g.multiply(&g.multiply(&a, &b), &c), g.multiply(&a, &g.multiply(&b, &c)));
    }

    #[test]
    fn inverse_cancels(p in 0..PARAMS.len(), w in word(12)) {
        let g = &groups()[p];
        let x = g.evaluate(&w);
        prop_assert!(g.multiply(&x, &g.inverse(&x)).is_identity());
        prop_assert_eq!(g.inverse(&x), g.evaluate(&invert_word(&w)));
    }

    #[test]
    fn word_representative_evaluates_back(p in 0..PARAMS.len(), w in word(12)) {
        let g = &groups()[p];
        let x = g.evaluate(&w);
        prop_assert_eq!(g.evaluate(&x.word_representative()), x);
    }

    #[test]
    fn nf4_round_trips(p in 0..PARAMS.len(), w in word(12)) {
        let g = &groups()[p];
        let x = g.evaluate(&w);
        prop_assert_eq!(g.from_nf4(&g.to_nf4(&x)), x);
    }

    #[test]
    fn characters_are_homomorphisms(p in 0..PARAMS.len(), signs in (any::<bool>(), any::<bool>(), any::<bool>()), a in word(12), b in word(12)) {
        let g = &groups()[p];
        let s = |b: bool| if b { -1 } else { 1 };
        let chi = Character::new(s(signs.0), s(signs.1), s(signs.2)).unwrap();
        prop_assume!(chi.check(g.params()).is_ok());
        let (x, y) = (g.evaluate(&a), g.evaluate(&b));
        prop_assert_eq!(chi.value(&g.multiply(&x, &y)), chi.value(&x) * chi.value(&y));
        let letters: i64 = a.iter().map(|l| chi.value_of(l.generator)).product();
        prop_assert_eq!(chi.value(&x), letters);
    }

    #[test]
    fn ring_laws(p in 0..PARAMS.len(), a in ring_element(4), b in ring_element(4), c in ring_element(4)) {
        let g = &groups()[p];
        let (a, b, c) = (build(g, &a), build(g, &b), build(g, &c));
        prop_assert_eq!(a.mul(&b, g).mul(&c, g), a.mul(&b.mul(&c, g), g));
        prop_assert_eq!(a.mul(&(&b + &c), g), &a.mul(&b, g) + &a.mul(&c, g));
        prop_assert_eq!((&a + &b).mul(&c, g), &a.mul(&c, g) + &b.mul(&c, g));
        prop_assert_eq!(a.mul(&b, g).augmentation(), a.augmentation() * b.augmentation());
        prop_assert_eq!(GroupRingElement::monomial(1, one(g)).mul(&a, g), a.clone());
    }

    #[test]
    fn antipode_reverses_products(p in 0..PARAMS.len(), a in ring_element(4), b in ring_element(4)) {
        let g = &groups()[p];
        let (a, b) = (build(g, &a), build(g, &b));
        prop_assert_eq!(a.mul(&b, g).antipode(g), b.antipode(g).mul(&a.antipode(g), g));
        prop_assert_eq!(a.antipode(g).antipode(g), a);
    }

    #[test]
    fn fox_fundamental_identity(p in 0..PARAMS.len(), w in word(12)) {
        let g = &groups()[p];
        let grad = fox_gradient(g, &w);
        let mut sum = GroupRingElement::zero();
        for (d, gen) in grad.iter().zip(Generator::ALL) {
            let minus_one = GroupRingElement::from_terms([(g.generator(gen), Int::from(1)), (one(g), Int::from(-1))]);
            sum += &d.mul(&minus_one, g);
        }
        let expected = GroupRingElement::from_terms([(g.evaluate(&w), Int::from(1)), (one(g), Int::from(-1))]);
        prop_assert_eq!(sum, expected);
    }

    #[test]
    fn representation_is_multiplicative(p in 0..PARAMS.len(), a in ring_element(3), b in ring_element(3)) {
        let g = &groups()[p];
        let module = rank_two(g.params());
        let (a, b) = (build(g, &a), build(g, &b));
        prop_assert_eq!(module.represent(&a.mul(&b, g)), &module.represent(&a) * &module.represent(&b));
    }

    #[test]
    fn cup_product_respects_coboundaries(
        u in prop::collection::vec(-3i64..=3, 2),
        v in prop::collection::vec(-3i64..=3, 2),
        c in prop::collection::vec(-3i64..=3, 2),
    ) {
        let f = fixture();
        let p = Products::new(&f.res);
        let gens = f.eta3.cohomology[1].generators();
        let combine = |k: &[i64]| gens.iter().zip(k).fold(vec![Int::zero(); 3], |acc, (g, &x)| {
            add(&acc, &g.iter().map(|e| e * x).collect::<Vec<_>>())
        });
        let (u, v) = (combine(&u), combine(&v));
        let u2 = add(&u, &f.delta0.apply(&ints(&c[..1])));
        let v2 = add(&v, &f.delta0.apply(&ints(&c[1..])));
        let h2 = &f.target.cohomology[2];
        let lhs = h2.coordinates(&p.cup_11(&f.eta3, &u, &f.eta3, &v).unwrap()).unwrap();
        let rhs = h2.coordinates(&p.cup_11(&f.eta3, &u2, &f.eta3, &v2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cup_12_respects_coboundaries(k in -3i64..=3, c in prop::collection::vec(-3i64..=3, 3)) {
        let f = fixture();
        let p = Products::new(&f.res);
        let u = ints(&[0, 0, 1]);
        let v = f.eta3.cohomology[2].generators()[0].iter().map(|x| x * k).collect::<Vec<_>>();
        let v2 = add(&v, &f.delta1.apply(&ints(&c)));
        let h3 = &f.target.cohomology[3];
        let lhs = h3.coordinates(&p.cup_12(&f.eta3, &u, &f.eta3, &v, &f.target).unwrap()).unwrap();
        let rhs = h3.coordinates(&p.cup_12(&f.eta3, &u, &f.eta3, &v2, &f.target).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn swap_is_an_involution(na in 1usize..4, nb in 1usize..4, blocks in 1usize..4, seed in prop::collection::vec(-9i64..=9, 36)) {
        let w = ints(&seed[..na * nb * blocks]);
        prop_assert_eq!(swap(nb, na, &swap(na, nb, &w)), w);
    }
}

#[test]
fn cap_with_fundamental_class_is_bijective_in_top_degree() {
    for (r, s, t, u) in PARAMS.into_iter().take(4) {
        let res = Resolution::new(GroupParams::new(r, s, t, u).unwrap());
        let p = Products::new(&res);
        let mut modules =
            vec![CoefficientModule::trivial_z(res.params()), CoefficientModule::zp(res.params(), 5).unwrap()];
        for chi in [Character::ETA1, Character::ETA2, Character::ETA3] {
            modules.push(CoefficientModule::character(res.params(), chi).unwrap());
        }
        for m in modules {
            let data = ModuleData::new(&res, m);
            let images: Vec<Vec<Int>> =
                data.cohomology[3].generators().iter().map(|g| p.cap_with_zeta(3, &data, g).unwrap()).collect();
            assert!(data.homology[0].generated_by(&images).unwrap(), "{} on {:?}", data.module.name(), (r, s, t, u));
            assert_eq!(data.cohomology[3].invariants(), data.homology[0].invariants());
        }
    }
}

#[test]
fn cap_with_fundamental_class_is_bijective_in_degree_two() {
    for (r, s, t, u) in PARAMS.into_iter().take(4) {
        let res = Resolution::new(GroupParams::new(r, s, t, u).unwrap());
        let p = Products::new(&res);
        for chi in [Character::TRIVIAL, Character::ETA1, Character::ETA2, Character::ETA3] {
            let data = ModuleData::new(&res, CoefficientModule::character(res.params(), chi).unwrap());
            let images: Vec<Vec<Int>> =
                data.cohomology[2].generators().iter().map(|g| p.cap_with_zeta(2, &data, g).unwrap()).collect();
            assert!(data.homology[1].generated_by(&images).unwrap(), "{chi:?} on {:?}", (r, s, t, u));
            assert_eq!(data.cohomology[2].invariants(), data.homology[1].invariants());
        }
    }
}
