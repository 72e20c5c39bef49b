use katoforms::extensions::{AdaptedData, ExtensionSpec};
use katoforms::forms::{
    antiderivative, cartier, is_closed, is_exact, nu_member, random_element, random_form,
    RandomSpec,
};
use katoforms::hp::{cert_power, verify_certificate};
use katoforms::{DiffForm, FunctionField};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NAMES: [&str; 3] = ["x", "y", "z"];

fn setting() -> impl Strategy<Value = (u64, usize, usize)> {
    (prop_oneof![Just(2u64), Just(3u64)], 1usize..=3, 0usize..=2)
        .prop_map(|(p, m, n)| (p, m, n.min(m)))
}

fn field(p: u64, m: usize) -> FunctionField {
    FunctionField::new(p, &NAMES[..m]).unwrap()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(150))]

    #[test]
    fn d_squares_to_zero((p, m, n) in setting(), seed in any::<u64>()) {
        let f = field(p, m);
        let w = random_form(&f, n, 4, 3, seed);
        prop_assert!(w.d().d().is_zero());
        prop_assert!(is_closed(&w.d()));
    }

    #[test]
    fn cartier_inverts_sp((p, m, n) in setting(), seed in any::<u64>()) {
        let f = field(p, m);
        let w = random_form(&f, n, 4, 3, seed);
        prop_assert_eq!(cartier(&w.sp()).unwrap(), w.clone());
        if n < m {
            let dw = random_form(&f, n, 4, 3, seed ^ 1).d();
            prop_assert!(cartier(&dw).unwrap().is_zero());
            prop_assert!(is_exact(&dw));
            let eta = antiderivative(&dw).unwrap();
            prop_assert_eq!(eta.d(), dw);
        }
    }

    #[test]
    fn logarithmic_wedges_are_fixed((p, m, n) in setting(), seed in any::<u64>()) {
        let f = field(p, m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = RandomSpec { degree: 3, terms: 2, denominators: true };
        let slots: Vec<_> = (0..n).map(|_| random_element(&f, &mut rng, &spec)).filter(|a| !a.is_zero()).collect();
        let w = DiffForm::dlog_wedge(&f, &slots).unwrap();
        prop_assert!(nu_member(&w));
        prop_assert!(w.wp().is_zero() || is_exact(&w.wp()));
    }

    #[test]
    fn powers_are_congruent((p, m, n) in setting(), seed in any::<u64>(), i in 0u32..=3) {
        let f = field(p, m);
        let v = random_form(&f, n, 3, 2, seed);
        let c = cert_power(&v, i);
        prop_assert_eq!(&c.lhs, &v.sp_iter(i));
        prop_assert!(verify_certificate(&c.lhs, &c.rhs, &c.cert).unwrap());
    }

    #[test]
    fn restriction_is_functorial((p, m, n) in setting(), seed in any::<u64>(), e in 1u32..=2) {
        let f = field(p, m);
        let data = AdaptedData::new(vec![(0, e)]).unwrap();
        let ext = ExtensionSpec::build_adapted(&f, &data).unwrap();
        let w = random_form(&f, n, 3, 3, seed);
        let z = random_form(&f, if n < m { 1 } else { 0 }, 3, 2, seed ^ 7);
        prop_assert_eq!(ext.restrict(&w.d()).unwrap(), ext.restrict(&w).unwrap().d());
        prop_assert_eq!(ext.restrict(&w.sp()).unwrap(), ext.restrict(&w).unwrap().sp());
        let wedge = w.wedge(&z).unwrap();
        prop_assert_eq!(ext.restrict(&wedge).unwrap(), ext.restrict(&w).unwrap().wedge(&ext.restrict(&z).unwrap()).unwrap());
        let w2 = random_form(&f, n, 3, 3, seed ^ 3);
        prop_assert_eq!(ext.restrict(&w.add(&w2)).unwrap(), ext.restrict(&w).unwrap().add(&ext.restrict(&w2).unwrap()));
    }
}
