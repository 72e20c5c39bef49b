//! Multivariate GCD over F_p by content/primitive-part recursion on one
//! variable at a time, with a primitive pseudo-remainder sequence in that
//! variable.

use super::poly::MultiPoly;

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let field = a.field();
    let nvars = a.nvars();
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(field, nvars);
    }
    if a == b {
        return a.monic();
    }

    let ma = a.monomial_content();
    let mb = b.monomial_content();
    if !ma.is_one() || !mb.is_one() {
        let g = gcd(&a.div_monomial(&ma), &b.div_monomial(&mb));
        return g.mul_monomial(&ma.gcd(&mb), 1);
    }
    if a.is_monomial() || b.is_monomial() {
        // monomial content already removed, so a lone monomial is constant here
        return MultiPoly::one(field, nvars);
    }

    let sa = a.support_vars();
    let sb = b.support_vars();
    if let Some(v) = (0..nvars).find(|&v| sa[v] && !sb[v]) {
        return gcd(&content_in(a, v), b);
    }
    if let Some(v) = (0..nvars).find(|&v| sb[v] && !sa[v]) {
        return gcd(a, &content_in(b, v));
    }

    // both involve exactly the same variables; recurse on the one of lowest degree
    let v = (0..nvars)
        .filter(|&v| sa[v])
        .min_by_key(|&v| a.degree_in(v).min(b.degree_in(v)))
        .expect("non-constant polynomial has a variable");
    let (big, small) = if (b.degree_in(v), b.num_terms()) <= (a.degree_in(v), a.num_terms()) {
        (a, b)
    } else {
        (b, a)
    };

    // Only the smaller operand is made primitive: with `ps` primitive in x_v,
    // gcd(pp(big), ps) = gcd(big, ps) = gcd(ps, prem(big, ps)).
    let cs = content_in(small, v);
    let mut c = cs.clone();
    for coef in big.coeffs_in(v).iter().filter(|c| !c.is_zero()) {
        if c.is_constant() {
            break;
        }
        c = gcd(&c, coef);
    }
    let mut pa = small.div_exact(&cs).expect("content divides").coeffs_in(v);
    let mut r = pseudo_rem(&big.coeffs_in(v), &pa);
    loop {
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            pa = vec![MultiPoly::one(field, nvars)];
            break;
        }
        let pr = primitive_part(&r);
        r = pseudo_rem(&pa, &pr);
        pa = pr;
    }
    let g = MultiPoly::from_coeffs_in(field, nvars, v, &pa);
    g.mul(&c).monic()
}

/// GCD of the coefficients of `a` viewed as a polynomial in `x_v`.
pub fn content_in(a: &MultiPoly, v: usize) -> MultiPoly {
    let coeffs = a.coeffs_in(v);
    fold_gcd(coeffs.iter().filter(|c| !c.is_zero()))
}

fn fold_gcd<'a>(mut it: impl Iterator<Item = &'a MultiPoly>) -> MultiPoly {
    let first = match it.next() {
        Some(c) => c.monic(),
        None => panic!("content of the zero polynomial"),
    };
    let mut g = first;
    for c in it {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, c);
    }
    g
}

/// Pseudo-remainder of univariate coefficient vectors (trailing zeros trimmed).
fn pseudo_rem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<MultiPoly> = a.to_vec();
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bc.mul(&lr));
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
    }
    r
}

fn primitive_part(c: &[MultiPoly]) -> Vec<MultiPoly> {
    let g = fold_gcd(c.iter().filter(|x| !x.is_zero()));
    let mut out: Vec<MultiPoly> = c
        .iter()
        .map(|x| x.div_exact(&g).expect("content divides"))
        .collect();
    trim(&mut out);
    out
}

fn trim(v: &mut Vec<MultiPoly>) {
    while v.last().is_some_and(MultiPoly::is_zero) {
        v.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::prime::PrimeField;

    fn var(p: u64, n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(PrimeField::new(p).unwrap(), n, i)
    }

    #[test]
    fn common_factor_recovered() {
        let (x, y, z) = (var(3, 3, 0), var(3, 3, 1), var(3, 3, 2));
        let one = MultiPoly::one(x.field(), 3);
        let h = x.mul(&y).add(&z).add(&one);
        let a = h.mul(&x.add(&y.mul(&y)));
        let b = h.mul(&z.mul(&z).sub(&x));
        assert_eq!(gcd(&a, &b), h.monic());
    }

    #[test]
    fn coprime_is_one() {
        let (x, y) = (var(2, 2, 0), var(2, 2, 1));
        let one = MultiPoly::one(x.field(), 2);
        let g = gcd(&x.add(&one), &y.add(&x));
        assert!(g.is_one());
    }

    #[test]
    fn monomial_parts() {
        let (x, y) = (var(5, 2, 0), var(5, 2, 1));
        let a = x.mul(&x).mul(&y);
        let b = x.mul(&y).mul(&y).add(&x.mul(&x).mul(&y));
        assert_eq!(gcd(&a, &b), x.mul(&y));
    }
}
