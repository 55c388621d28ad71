use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tsspic::catalog;
use tsspic::graph::AutomorphismGroup;
use tsspic::mcg::GroupAtom;
use tsspic::picard::{picard_group, static_picard};
use tsspic::{EqualityVerdict, FreeWord, PicardGroupDescription, Rational, TssSurface};

fn surfaces() -> Vec<TssSurface> {
    let p = catalog::two_pi_approx();
    vec![
        catalog::sphere_equator(p.clone()),
        catalog::cylinder_one_curve(p.clone()),
        catalog::cylinder_two_curves(p.clone(), p.clone()),
        catalog::cylinder_two_curves(p.clone(), catalog::pi_approx()),
        catalog::cylinder_chain(3, p.clone()),
        catalog::torus_parallel(2, p.clone()),
        catalog::torus_parallel(4, p.clone()),
        catalog::genus2_separating(p),
    ]
}

fn group(which: usize) -> PicardGroupDescription {
    picard_group(&surfaces()[which]).unwrap()
}

#[test]
fn static_part_is_the_product_of_leaf_factors() {
    for s in surfaces() {
        let d = picard_group(&s).unwrap();
        let stat = static_picard(&s).unwrap();
        let from_leaves: u32 = d.leaves.iter().map(|l| l.group.free_rank()).sum();
        assert_eq!(stat.free_rank(), from_leaves);
        let normal = d.normal_part();
        let tori = normal.atoms().iter().filter(|a| matches!(a, GroupAtom::Torus(_))).count();
        assert_eq!(tori, s.curves.len());
        assert_eq!(normal.free_rank(), stat.free_rank());
    }
}

#[test]
fn annulus_twists_compare_by_their_sum() {
    let d = group(2);
    let a = d.from_boundary_twist("L", "T1", 1).unwrap();
    let b = d.from_boundary_twist("L", "T2", 1).unwrap();
    assert_eq!(d.elements_equal(&a, &b).unwrap(), EqualityVerdict::Equal);
    let c = d.from_boundary_twist("L", "T2", 2).unwrap();
    assert!(matches!(d.elements_equal(&a, &c).unwrap(), EqualityVerdict::Distinct(_)));
}

#[test]
fn full_period_flow_is_the_identity() {
    let d = group(1);
    let period = d.periods[0].clone();
    let full = d.from_modular_flow("T", &period).unwrap();
    assert_eq!(full, d.identity_element());
    let half = d.from_modular_flow("T", &(period / Rational::from_integer(2.into()))).unwrap();
    assert!(!d.is_static(&half).unwrap());
}

#[test]
fn words_are_decided_by_homology_or_left_open() {
    let d = group(7);
    let leaf = d.leaves.iter().find(|l| l.generators.len() >= 2).expect("a leaf with generators");
    let id = leaf.id.clone();
    let a = d.from_pmod_word(&id, FreeWord::generator_power(0, 1)).unwrap();
    let a_inv = d.from_pmod_word(&id, FreeWord::generator_power(0, -1)).unwrap();
    let e = d.identity_element();
    assert_eq!(d.elements_equal(&d.compose(&a, &a_inv).unwrap(), &e).unwrap(), EqualityVerdict::Equal);
    assert!(matches!(d.elements_equal(&a, &e).unwrap(), EqualityVerdict::Distinct(_)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leaf_space_image_is_a_homomorphism(which in 0usize..8, seed in any::<u64>()) {
        let d = group(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (d.random_element(&mut rng, 4), d.random_element(&mut rng, 4));
        let xy = d.compose(&x, &y).unwrap();
        let lhs = d.leaf_space_image(&xy).unwrap();
        let rhs = d.compose_images(&d.leaf_space_image(&x).unwrap(), &d.leaf_space_image(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernel_is_the_static_part(which in 0usize..8, seed in any::<u64>()) {
        let d = group(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = d.random_element(&mut rng, 4);
        prop_assert_eq!(d.is_static(&x).unwrap(), d.leaf_space_image(&x).unwrap().is_identity());
        x.outer = d.outer.identity().clone();
        for a in &mut x.angles {
            *a = Rational::from_integer(0.into());
        }
        prop_assert!(d.is_static(&x).unwrap());
    }

    #[test]
    fn group_laws_with_words(which in 0usize..8, seed in any::<u64>()) {
        let d = group(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (
            d.random_element(&mut rng, 6),
            d.random_element(&mut rng, 6),
            d.random_element(&mut rng, 6),
        );
        let l = d.compose(&d.compose(&x, &y).unwrap(), &z).unwrap();
        let r = d.compose(&x, &d.compose(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        let inv = d.invert(&x).unwrap();
        prop_assert_eq!(d.compose(&x, &inv).unwrap(), d.identity_element());
        prop_assert_eq!(d.invert(&inv).unwrap(), x.clone());
        prop_assert_eq!(d.elements_equal(&x, &x).unwrap(), EqualityVerdict::Equal);
    }

    #[test]
    fn conjugating_by_an_involution_twice_is_trivial(which in 0usize..8, seed in any::<u64>()) {
        let d = group(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = d.random_element(&mut rng, 4);
        for g in d.outer.elements.iter().filter(|g| AutomorphismGroup::element_order(g) == 2) {
            let s = d.from_graph_automorphism(g).unwrap();
            prop_assert_eq!(d.compose(&s, &s).unwrap(), d.identity_element());
            let conj = |y| d.compose(&d.compose(&s, y).unwrap(), &s).unwrap();
            prop_assert_eq!(conj(&conj(&x)), x.clone());
        }
    }

    #[test]
    fn reversals_negate_twists(which in 0usize..8, seed in any::<u64>()) {
        let d = group(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = d.random_element(&mut rng, 0);
        x.outer = d.outer.identity().clone();
        for g in d.outer.elements.iter().filter(|g| g.reversal) {
            let s = d.from_graph_automorphism(g).unwrap();
            let conj = d.compose(&d.compose(&s, &x).unwrap(), &d.invert(&s).unwrap()).unwrap();
            let total = |e: &tsspic::PicardElement| -> i64 { e.twists.iter().flatten().sum() };
            prop_assert_eq!(total(&conj), -total(&x));
        }
    }

    #[test]
    fn element_json_round_trip(which in 0usize..8, seed in any::<u64>()) {
        let d = group(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = d.random_element(&mut rng, 5);
        prop_assert_eq!(d.element_from_json(&d.element_to_json(&x)).unwrap(), x);
    }
}
