mod common;

use frobskein_core::skein2::{
    canonicalize, normalize_element, rewrite_word, standard_position, BruteForceOracle, Mark,
    NormalForm, SkeinElement, SphereConfig,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn oracle_agrees_on_small_configurations() {
    let oracle = BruteForceOracle::new(5).unwrap();
    for c in common::configs(5, 3) {
        let e = SkeinElement::config(c.clone());
        assert_eq!(
            normalize_element(&e).unwrap(),
            oracle.normal_form(&e).unwrap(),
            "[{c}]"
        );
    }
}

#[test]
fn odd_plain_configurations_vanish() {
    for len in [1, 3, 5, 7] {
        assert!(
            normalize_element(&SkeinElement::config(SphereConfig::plain(len)))
                .unwrap()
                .is_zero()
        );
    }
}

#[test]
fn generators_map_to_basis() {
    for k in 0..=4u32 {
        let nf =
            normalize_element(&SkeinElement::config(SphereConfig::plain(2 * k as usize))).unwrap();
        assert_eq!(nf, NormalForm::x_pow(k));
    }
    let dot = normalize_element(&SkeinElement::word(&[Mark::Dot])).unwrap();
    assert_eq!(dot, NormalForm::e());
}

#[test]
fn relations_are_sound() {
    for (r, lhs) in common::relation_instances(5) {
        let rhs = rewrite_word(r, &lhs, 0).unwrap();
        let left = normalize_element(&SkeinElement::word(&lhs)).unwrap();
        let right = normalize_element(&rhs).unwrap();
        assert_eq!(left, right, "relation {r} at {lhs:?}");
    }
}

#[test]
fn functionals_kill_relations() {
    for (r, lhs) in common::relation_instances(5) {
        let diff = SkeinElement::word(&lhs)
            .sub(&rewrite_word(r, &lhs, 0).unwrap())
            .unwrap();
        let nf = normalize_element(&diff).unwrap();
        for k in 0..=3 {
            assert!(
                nf.lambda_k(k).is_zero(),
                "lambda_{k} on relation {r} at {lhs:?}"
            );
        }
        assert!(
            nf.lambda_d().is_zero(),
            "lambda_d on relation {r} at {lhs:?}"
        );
    }
}

#[test]
fn random_orders_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for c in common::configs(6, 6) {
        let e = SkeinElement::config(c.clone());
        let want = normalize_element(&e).unwrap();
        for _ in 0..50 {
            assert_eq!(common::random_rewrite(&mut rng, &e, 6), want, "[{c}]");
        }
    }
}

fn word() -> impl Strategy<Value = Vec<Mark>> {
    prop::collection::vec(
        prop::bool::ANY.prop_map(|b| if b { Mark::Dot } else { Mark::Plain }),
        0..=7,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn oracle_agrees_on_random_sums(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = common::random_element(&mut rng, 5, 4);
        let oracle = BruteForceOracle::new(5).unwrap();
        prop_assert_eq!(normalize_element(&e).unwrap(), oracle.normal_form(&e).unwrap());
    }

    #[test]
    fn standard_position_is_canonical(w in word(), rot in 0usize..8) {
        let c = canonicalize(&w);
        let s = standard_position(&c);
        prop_assert_eq!(standard_position(&s), s.clone());
        let mut rotated = w.clone();
        if !w.is_empty() {
            rotated.rotate_left(rot % w.len());
        }
        prop_assert_eq!(standard_position(&canonicalize(&rotated)), s.clone());
        prop_assert_eq!(s.dots(), c.dots());
        prop_assert_eq!(s.len(), c.len());
    }

    #[test]
    fn normal_form_is_linear(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_element(&mut rng, 6, 3);
        let b = common::random_element(&mut rng, 6, 3);
        let c = common::random_coeff(&mut rng);
        let lhs = normalize_element(&a.add(&b.scale(&c)).unwrap()).unwrap();
        let rhs = normalize_element(&a).unwrap().add(&normalize_element(&b).unwrap().scale(&c));
        prop_assert_eq!(lhs, rhs);
    }
}
