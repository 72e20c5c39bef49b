use katoforms::forms::{is_exact, random_form};
use katoforms::hp::verify_certificate;
use katoforms::oracle::{exhaustive_exactness, solve_wp_plus_d, SearchBounds};
use katoforms::{DiffForm, FunctionField};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn field(p: u64) -> FunctionField {
    FunctionField::new(p, &["x"]).unwrap()
}

proptest! {
    #![proptest_config(config(60))]

    #[test]
    fn wider_bounds_keep_witnesses(p in prop_oneof![Just(2u64), Just(3u64)], seed in any::<u64>(), n in 0usize..=1, d in 1u32..=3) {
        let f = field(p);
        let x = f.var(0);
        let w = random_form(&f, n, 3, 2, seed).filter_terms(|_| true);
        let narrow = SearchBounds::with_denominators(d, vec![f.one()]);
        let wide = SearchBounds::with_denominators(d + 2, vec![f.one(), x.clone()]);
        let a = solve_wp_plus_d(&w, &narrow).unwrap();
        let b = solve_wp_plus_d(&w, &wide).unwrap();
        if let Some(c) = a.found() {
            prop_assert!(verify_certificate(&w, &DiffForm::zero(&f, n), c).unwrap());
            prop_assert!(b.is_found());
        }
        if let Some(c) = b.found() {
            prop_assert!(verify_certificate(&w, &DiffForm::zero(&f, n), c).unwrap());
        }
    }

    #[test]
    fn exactness_search_is_sound(p in prop_oneof![Just(2u64), Just(3u64)], seed in any::<u64>()) {
        let f = field(p);
        let x = f.var(0);
        let w = random_form(&f, 1, 4, 3, seed);
        let bounds = SearchBounds::with_denominators(6, vec![f.one(), x.clone(), x.pow(2)]);
        let found = exhaustive_exactness(&w, &bounds).unwrap();
        if let Some(eta) = found.found() {
            prop_assert_eq!(&eta.d(), &w);
        }
        if !is_exact(&w) {
            prop_assert!(!found.is_found());
        }
    }
}
