//! Seeded random elements and forms for tests and the self-test harness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{FunctionField, Monomial, MultiPoly, RatFunc};

use super::{DiffForm, IndexTuple};

/// Shape of random coefficients.
#[derive(Clone, Copy, Debug)]
pub struct RandomSpec {
    /// Total degree bound for numerators.
    pub degree: u32,
    /// Number of terms tried per numerator.
    pub terms: usize,
    /// Whether to divide by a random non-constant polynomial now and then.
    pub denominators: bool,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            degree: 4,
            terms: 3,
            denominators: true,
        }
    }
}

fn random_poly<R: Rng>(field: &FunctionField, rng: &mut R, degree: u32, terms: usize) -> MultiPoly {
    let m = field.nvars();
    let p = field.p();
    let mut out = MultiPoly::zero(field.prime(), m);
    for _ in 0..terms {
        let total = rng.gen_range(0..=degree);
        let mut e = vec![0u32; m];
        for _ in 0..total {
            if m > 0 {
                e[rng.gen_range(0..m)] += 1;
            }
        }
        let c = rng.gen_range(1..p) as i64;
        out = out.add(&MultiPoly::from_terms(
            field.prime(),
            m,
            [(Monomial::from_exponents(&e), c)],
        ));
    }
    out
}

pub fn random_element<R: Rng>(field: &FunctionField, rng: &mut R, spec: &RandomSpec) -> RatFunc {
    let num = random_poly(field, rng, spec.degree, spec.terms);
    if spec.denominators && field.nvars() > 0 && rng.gen_bool(0.3) {
        let den = random_poly(field, rng, 2, 2).add(&MultiPoly::one(field.prime(), field.nvars()));
        if !den.is_zero() {
            return RatFunc::normalize(num, den).expect("nonzero denominator");
        }
    }
    RatFunc::from_poly(num)
}

/// Random degree-`n` form with up to `terms` basis terms; deterministic in `seed`.
pub fn random_form(
    field: &FunctionField,
    n: usize,
    degree: u32,
    terms: usize,
    seed: u64,
) -> DiffForm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_form_with(
        field,
        n,
        &RandomSpec {
            degree,
            terms: 3,
            denominators: true,
        },
        terms,
        &mut rng,
    )
}

pub(crate) fn random_form_with<R: Rng>(
    field: &FunctionField,
    n: usize,
    spec: &RandomSpec,
    terms: usize,
    rng: &mut R,
) -> DiffForm {
    let tuples = IndexTuple::all(field.nvars(), n);
    let mut w = DiffForm::zero(field, n);
    if tuples.is_empty() {
        return w;
    }
    for _ in 0..terms {
        let s = tuples[rng.gen_range(0..tuples.len())].clone();
        w.add_term(s, random_element(field, rng, spec));
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_in_seed() {
        let f = FunctionField::new(3, &["x", "y"]).unwrap();
        for seed in [1u64, 2, 3] {
            assert_eq!(
                random_form(&f, 1, 4, 3, seed),
                random_form(&f, 1, 4, 3, seed)
            );
        }
        assert_ne!(random_form(&f, 1, 4, 3, 1), random_form(&f, 1, 4, 3, 2));
    }
}
