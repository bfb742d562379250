use std::sync::Arc;

use gammaspec::barcat::{colimit_of_components, hocolim};
use gammaspec::dkspec::ring::FinCommRing;
use gammaspec::gammaunits::FinMonoid;
use gammaspec::ispace::boxprod::check_free_product;
use gammaspec::ispace::{box_oracle, box_product, compare_with_oracle, random_ispace, InjCat};
use gammaspec::linalg::AbGroup;
use gammaspec::sset::traits::check_identities;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| gammaspec::linalg::abgroup::gcd(*k, n) == 1).count() as u64
}

#[test]
fn twenty_seeded_pairs_match_the_oracle_at_n_4() {
    let base = Arc::new(InjCat::new(4).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for i in 0..20 {
        let x = random_ispace(&mut rng, &base).unwrap();
        let y = random_ispace(&mut rng, &base).unwrap();
        let b = box_product(&x, &y).unwrap();
        compare_with_oracle(&b, &box_oracle(&x, &y).unwrap()).unwrap_or_else(|e| panic!("pair {i}: {e}"));
    }
}

#[test]
fn free_on_m_box_free_on_n_is_free_on_m_plus_n() {
    let base = Arc::new(InjCat::new(4).unwrap());
    for m in 0..=4 {
        for n in 0..=4 - m {
            check_free_product(m, n, &base).unwrap_or_else(|e| panic!("F_{m} ⊠ F_{n}: {e}"));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn box_product_agrees_with_the_oracle(seed in any::<u64>(), n in 1usize..=3) {
        let base = Arc::new(InjCat::new(n).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_ispace(&mut rng, &base).unwrap();
        let y = random_ispace(&mut rng, &base).unwrap();
        let b = box_product(&x, &y).unwrap();
        prop_assert!(compare_with_oracle(&b, &box_oracle(&x, &y).unwrap()).is_ok());
    }

    #[test]
    fn hocolims_of_random_diagrams_are_simplicial(seed in any::<u64>(), n in 1usize..=2) {
        let base = Arc::new(InjCat::new(n).unwrap());
        let x = random_ispace(&mut ChaCha8Rng::seed_from_u64(seed), &base).unwrap();
        let d = x.diagram();
        let b = hocolim(d.base(), d, 3).unwrap();
        prop_assert!(check_identities(&b, 3).is_ok());
        prop_assert_eq!(b.components().unwrap(), colimit_of_components(d).unwrap());
    }

    #[test]
    fn units_of_z_mod_n_have_totient_order(n in 2u32..40) {
        let ring = FinCommRing::zmod(n).unwrap();
        let units = ring.unit_group();
        prop_assert_eq!(units.order(), Some(totient(n as u64)));
        prop_assert_eq!(FinMonoid::multiplicative(&ring).unit_group().unwrap(), units);
        // zero absorbs everything, so the completion collapses
        prop_assert_eq!(FinMonoid::multiplicative(&ring).group_completion().unwrap().group, AbGroup::zero());
    }
}
