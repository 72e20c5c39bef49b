use katoforms::forms::{random_element, random_form, RandomSpec};
use katoforms::hp::{
    cert_exponent_reduction, cert_power, cert_product_rule, verify_certificate, Certificate,
    GeneratorSystem, RebaseMove,
};
use katoforms::{FunctionField, RatFunc};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(p: u64) -> FunctionField {
    FunctionField::new(p, &["x", "y", "z"]).unwrap()
}

fn primes() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3u64)]
}

fn monomial_base(f: &FunctionField, rng: &mut ChaCha8Rng) -> RatFunc {
    loop {
        let e: Vec<u32> = (0..f.nvars()).map(|_| rng.gen_range(0..3)).collect();
        if e.iter().any(|&x| x > 0) {
            return f.monomial(&e);
        }
    }
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
    #![proptest_config(config(120))]

    #[test]
    fn power_certificates_verify(p in primes(), seed in any::<u64>(), n in 0usize..=2, i in 0u32..=3) {
        let f = field(p);
        let v = random_form(&f, n, 3, 3, seed);
        let c = cert_power(&v, i);
        prop_assert!(verify_certificate(&c.lhs, &c.rhs, &c.cert).unwrap());
        prop_assert!(c.reversed().verify());
    }

    #[test]
    fn product_rule_certificates_verify(p in primes(), seed in any::<u64>(), n in 0usize..=1) {
        let f = field(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = RandomSpec { degree: 2, terms: 2, denominators: true };
        let r = rng.gen_range(1..=2);
        let b: Vec<RatFunc> = (0..r).map(|_| random_element(&f, &mut rng, &spec)).filter(|x| !x.is_zero()).collect();
        prop_assume!(!b.is_empty());
        let k: Vec<u64> = b.iter().map(|_| rng.gen_range(1..=4)).collect();
        let v = random_form(&f, n, 2, 2, rng.gen());
        let c = cert_product_rule(&b, &k, &v).unwrap();
        prop_assert!(verify_certificate(&c.lhs, &c.rhs, &c.cert).unwrap());
    }

    #[test]
    fn exponent_reduction_certificates_verify(p in primes(), seed in any::<u64>(), n in 0usize..=1, t in 1u32..=2) {
        let f = field(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = rng.gen_range(1..=2);
        let b: Vec<RatFunc> = (0..r).map(|_| monomial_base(&f, &mut rng)).collect();
        let pt = p.pow(t);
        let k: Vec<u64> = b.iter().map(|_| rng.gen_range(0..3 * pt)).collect();
        let v = random_form(&f, n, 2, 2, rng.gen());
        let red = cert_exponent_reduction(&b, &k, t, &v).unwrap();
        prop_assert!(red.q.iter().all(|&e| e < pt));
        prop_assert!(red.congruence.verify());
        prop_assert!(verify_certificate(&red.congruence.lhs, &red.congruence.rhs, &red.congruence.cert).unwrap());
    }

    #[test]
    fn rebase_certificates_verify(p in primes(), seed in any::<u64>(), n in 1usize..=2, mv in 0usize..4) {
        let f = field(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (f.var(0), f.var(1));
        let b0 = x.pow(p * rng.gen_range(1..=2));
        let pairs = vec![(b0, rng.gen_range(2..=3)), (y, rng.gen_range(1..=2))];
        let sys = GeneratorSystem::new(&f, pairs).unwrap();
        let patterns = sys.patterns();
        let spec = patterns[rng.gen_range(0..patterns.len())].clone();
        let v = random_form(&f, n - 1, 2, 2, rng.gen());
        let g = sys.instance(spec, &v).unwrap();
        let mv = match mv {
            0 => RebaseMove::Permute(vec![1, 0]),
            1 => RebaseMove::Raise(0),
            2 => RebaseMove::Raise(1),
            _ => RebaseMove::Lower(0),
        };
        let r = sys.rebase(&g, &mv).unwrap();
        prop_assert!(r.verify());
        let c = &r.congruence;
        prop_assert!(verify_certificate(&c.lhs, &c.rhs, &c.cert).unwrap());
    }

    #[test]
    fn certificates_roundtrip_as_text(p in primes(), seed in any::<u64>(), n in 0usize..=2) {
        let f = field(p);
        let u = random_form(&f, n, 3, 3, seed);
        let eta = (n > 0).then(|| random_form(&f, n - 1, 3, 3, seed ^ 5));
        let c = Certificate::new(u, eta).unwrap();
        prop_assert_eq!(Certificate::parse(&c.to_string()).unwrap(), c);
    }
}
