use num_rational::BigRational;
use proptest::prelude::*;
use weng_zeta::weyl::{
    admissible, diagram_automorphisms, inversion_set, longest_element, FeInvolution,
};
use weng_zeta::{build_root_system, Kind, RootSystemData, WeylElement};

const TYPES: [(Kind, usize); 9] = [
    (Kind::A, 3),
    (Kind::B, 3),
    (Kind::C, 3),
    (Kind::D, 4),
    (Kind::G, 2),
    (Kind::F, 4),
    (Kind::A, 5),
    (Kind::D, 5),
    (Kind::E, 6),
];

fn system_and_word() -> impl Strategy<Value = (RootSystemData, Vec<usize>)> {
    (0..TYPES.len(), prop::collection::vec(0usize..8, 0..24)).prop_map(|(i, w)| {
        let (k, r) = TYPES[i];
        let word = w.into_iter().map(|j| j % r).collect();
        (build_root_system(k, r).unwrap(), word)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn length_is_inversion_count((rs, word) in system_and_word()) {
        let w = WeylElement::from_word(&rs, &word);
        prop_assert_eq!(w.length(), inversion_set(&rs, &w).len());
        prop_assert_eq!(w.length() % 2, word.len() % 2);
        prop_assert!(w.length() <= word.len());
    }

    #[test]
    fn inverse_and_composition((rs, word) in system_and_word()) {
        let w = WeylElement::from_word(&rs, &word);
        let rev: Vec<usize> = word.iter().rev().copied().collect();
        let inv = w.inverse(&rs);
        prop_assert_eq!(&inv, &WeylElement::from_word(&rs, &rev));
        prop_assert!(w.compose(&inv, &rs).is_identity());
        prop_assert_eq!(inv.length(), w.length());
    }

    #[test]
    fn roots_are_permuted((rs, word) in system_and_word()) {
        let w = WeylElement::from_word(&rs, &word);
        let mut images: Vec<Vec<i32>> = rs.positive_roots().iter().map(|a| {
            let b = w.apply_root(a);
            if b.is_positive() { b.coeffs().to_vec() } else { b.neg().coeffs().to_vec() }
        }).collect();
        images.sort();
        let mut all: Vec<Vec<i32>> = rs.positive_roots().iter().map(|a| a.coeffs().to_vec()).collect();
        all.sort();
        prop_assert_eq!(images, all);
    }

    #[test]
    fn weight_action_matches_root_action((rs, word) in system_and_word()) {
        let w = WeylElement::from_word(&rs, &word);
        for a in rs.positive_roots().iter().take(6) {
            let lhs = w.act_on_weight(&rs, &rs.root_as_weight(a));
            let rhs = rs.root_as_weight(&w.apply_root(a));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn involution_preserves_admissibility((rs, word) in system_and_word(), p in 0usize..8) {
        let p = p % rs.rank();
        let w = WeylElement::from_word(&rs, &word);
        let iota = FeInvolution::new(&rs, p).unwrap();
        let image = iota.apply(&rs, &w);
        prop_assert_eq!(iota.apply(&rs, &image), w.clone());
        prop_assert_eq!(admissible(&rs, p, &w), admissible(&rs, p, &image));
    }

    #[test]
    fn automorphisms_conjugate((rs, word) in system_and_word()) {
        let w = WeylElement::from_word(&rs, &word);
        for a in diagram_automorphisms(&rs) {
            let mapped: Vec<usize> = word.iter().map(|&j| a.apply_index(j)).collect();
            prop_assert_eq!(a.conjugate(&w), WeylElement::from_word(&rs, &mapped));
        }
    }
}

#[test]
fn rho_pairs_to_one_with_simple_coroots() {
    for (k, r) in TYPES {
        let rs = build_root_system(k, r).unwrap();
        for j in 0..r {
            let alpha = weng_zeta::Root::simple(r, j);
            assert_eq!(
                rs.pair_weight_coroot(&rs.rho(), &alpha).unwrap(),
                BigRational::from_integer(1.into())
            );
        }
    }
}

#[test]
fn longest_element_negates_positive_roots() {
    for (k, r) in TYPES {
        let rs = build_root_system(k, r).unwrap();
        let w0 = longest_element(&rs);
        assert_eq!(w0.length(), rs.num_positive());
        assert!(rs
            .positive_roots()
            .iter()
            .all(|a| !w0.apply_root(a).is_positive()));
    }
}
