use std::fmt;

use super::gcd::gcd;
use super::poly::{Monomial, MultiPoly};
use super::prime::PrimeField;
use crate::error::{Error, Result};

/// Element of F_p(x_1, ..., x_m) in canonical form: `gcd(num, den) = 1`,
/// `den` monic under graded-lex, zero stored as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

/// Removes every common factor of `num` and `den`, given that each common
/// irreducible non-monomial factor divides `base`.
fn cancel_common(
    mut num: MultiPoly,
    mut den: MultiPoly,
    base: &MultiPoly,
) -> (MultiPoly, MultiPoly) {
    if num.is_zero() || den.is_constant() {
        return (num, den);
    }
    let mono = num.monomial_content().gcd(&den.monomial_content());
    if !mono.is_one() {
        num = num.div_monomial(&mono);
        den = den.div_monomial(&mono);
    }
    let r = base.factor_base();
    if r.is_constant() || num.is_constant() {
        return (num, den);
    }
    loop {
        let mut g = gcd(&num, &r);
        if g.is_constant() {
            break;
        }
        let mut q = den.div_exact(&g);
        if q.is_none() {
            g = gcd(&g, &den);
            if g.is_constant() {
                break;
            }
            q = den.div_exact(&g);
        }
        den = q.expect("gcd divides");
        num = num.div_exact(&g).expect("gcd divides");
    }
    (num, den)
}

impl RatFunc {
    /// Canonicalize `num / den`.
    pub fn normalize(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize_nonzero(num, den))
    }

    fn normalize_nonzero(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero(num.field(), num.nvars());
        }
        let base = den.clone();
        let (num, den) = cancel_common(num, den, &base);
        Self::from_coprime(num, den)
    }

    /// Trusted constructor for already coprime parts; only fixes the leading coefficient.
    fn from_coprime(num: MultiPoly, den: MultiPoly) -> Self {
        debug_assert!(!den.is_zero());
        let lc = den.leading_coeff();
        if num.is_zero() {
            return Self::zero(num.field(), num.nvars());
        }
        if lc == 1 {
            RatFunc { num, den }
        } else {
            let inv = num.field().inv(lc);
            RatFunc {
                num: num.scale(inv),
                den: den.scale(inv),
            }
        }
    }

    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        RatFunc {
            num: MultiPoly::zero(field, nvars),
            den: MultiPoly::one(field, nvars),
        }
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        Self::constant(field, nvars, 1)
    }

    pub fn constant(field: PrimeField, nvars: usize, c: i64) -> Self {
        RatFunc {
            num: MultiPoly::constant(field, nvars, c),
            den: MultiPoly::one(field, nvars),
        }
    }

    pub fn var(field: PrimeField, nvars: usize, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(field, nvars, i))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.field(), p.nvars());
        RatFunc { num: p, den }
    }

    pub fn from_monomial(field: PrimeField, m: Monomial) -> Self {
        Self::from_poly(MultiPoly::monomial(field, m, 1))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn field(&self) -> PrimeField {
        self.num.field()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return RatFunc {
                    num,
                    den: self.den.clone(),
                };
            }
            return Self::normalize_nonzero(num, self.den.clone());
        }
        // a common factor of the sum and the new denominator divides gcd(d1, d2)
        if let Some(q) = other.den.div_exact(&self.den) {
            let (num, den) = cancel_common(
                self.num.mul(&q).add(&other.num),
                other.den.clone(),
                &self.den,
            );
            return Self::from_coprime(num, den);
        }
        if let Some(q) = self.den.div_exact(&other.den) {
            let (num, den) = cancel_common(
                other.num.mul(&q).add(&self.num),
                self.den.clone(),
                &other.den,
            );
            return Self::from_coprime(num, den);
        }
        let g = gcd(&self.den, &other.den);
        let a = other.den.div_exact(&g).expect("gcd divides");
        let b = self.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&a).add(&other.num.mul(&b));
        let (num, den) = cancel_common(num, self.den.mul(&a), &g);
        Self::from_coprime(num, den)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field(), self.nvars());
        }
        if self.is_polynomial() && other.is_polynomial() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        let (n1, d2) = cancel_common(self.num.clone(), other.den.clone(), &other.den);
        let (n2, d1) = cancel_common(other.num.clone(), self.den.clone(), &self.den);
        Self::from_coprime(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn scale(&self, c: i64) -> RatFunc {
        let c = self.field().reduce(c);
        if c == 0 {
            return Self::zero(self.field(), self.nvars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Only monomial factors of the denominator can cancel against `m`.
    pub fn mul_monomial(&self, m: &Monomial) -> RatFunc {
        if self.is_zero() {
            return self.clone();
        }
        let g = m.gcd(&self.den.monomial_content());
        RatFunc {
            num: self.num.mul_monomial(&g.quotient_of(m), 1),
            den: self.den.div_monomial(&g),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> RatFunc {
        if self.is_zero() {
            return self.clone();
        }
        let g = m.gcd(&self.num.monomial_content());
        Self::from_coprime(
            self.num.div_monomial(&g),
            self.den.mul_monomial(&g.quotient_of(m), 1),
        )
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u64) -> RatFunc {
        if e == 0 {
            return Self::one(self.field(), self.nvars());
        }
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Signed integer power; negative exponents need a nonzero element.
    pub fn powi(&self, e: i64) -> Result<RatFunc> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// `self^p`.
    pub fn frobenius(&self) -> RatFunc {
        RatFunc {
            num: self.num.frobenius(),
            den: self.den.frobenius(),
        }
    }

    /// `self^(p^k)`.
    pub fn frobenius_iter(&self, k: u32) -> RatFunc {
        (0..k).fold(self.clone(), |a, _| a.frobenius())
    }

    /// Formal partial derivative with respect to `x_v` (0-based).
    pub fn partial(&self, v: usize) -> Result<RatFunc> {
        if v >= self.nvars() {
            return Err(Error::VariableOutOfRange {
                index: v,
                nvars: self.nvars(),
            });
        }
        Ok(self.partial_unchecked(v))
    }

    pub(crate) fn partial_unchecked(&self, v: usize) -> RatFunc {
        let dn = self.num.partial(v);
        if self.den.is_constant() {
            return Self::from_coprime(dn, self.den.clone());
        }
        let dd = self.den.partial(v);
        if dd.is_zero() {
            return Self::normalize_nonzero(dn, self.den.clone());
        }
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let (num, den) = cancel_common(num, self.den.mul(&self.den), &self.den);
        Self::from_coprime(num, den)
    }

    /// Substitute `images[i]` for `x_i`. All images must share a target field.
    pub fn substitute(&self, images: &[RatFunc]) -> Result<RatFunc> {
        let n = substitute_poly(&self.num, images)?;
        let d = substitute_poly(&self.den, images)?;
        n.div(&d)
            .map_err(|_| Error::Invalid("substitution sends the denominator to zero".into()))
    }
}

fn substitute_poly(p: &MultiPoly, images: &[RatFunc]) -> Result<RatFunc> {
    assert_eq!(p.nvars(), images.len(), "substitution arity");
    let (tf, tn) = match images.first() {
        Some(i) => (i.field(), i.nvars()),
        None => {
            let c = p.constant_value().unwrap_or(0) as i64;
            return Ok(RatFunc::constant(p.field(), 0, c));
        }
    };
    let mut cache: Vec<Vec<RatFunc>> = vec![vec![RatFunc::one(tf, tn)]; images.len()];
    let mut acc = RatFunc::zero(tf, tn);
    for (m, c) in p.terms() {
        let mut t = RatFunc::constant(tf, tn, c as i64);
        for (i, &e) in m.exponents().iter().enumerate() {
            let powers = &mut cache[i];
            while powers.len() <= e as usize {
                let next = powers.last().unwrap().mul(&images[i]);
                powers.push(next);
            }
            if e > 0 {
                t = t.mul(&powers[e as usize]);
            }
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "({:?})", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn normalize_cancels_common_factor() {
        // (x^2 + x) / x over F_2 is x + 1
        let f = fp(2);
        let x = MultiPoly::var(f, 1, 0);
        let r = RatFunc::normalize(x.mul(&x).add(&x), x.clone()).unwrap();
        assert_eq!(r, RatFunc::from_poly(x.add(&MultiPoly::one(f, 1))));
        // multiply back
        assert_eq!(
            r.mul(&RatFunc::from_poly(x.clone())).num(),
            &x.mul(&x).add(&x)
        );
    }

    #[test]
    fn normalize_trivial_cases() {
        let f = fp(3);
        let x = MultiPoly::var(f, 1, 0);
        let zero = RatFunc::normalize(MultiPoly::zero(f, 1), x.pow(3)).unwrap();
        assert!(zero.is_zero());
        assert!(zero.den().is_one());
        assert!(RatFunc::normalize(x.clone(), x.clone()).unwrap().is_one());
        assert_eq!(
            RatFunc::normalize(x.clone(), MultiPoly::zero(f, 1)),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn monic_denominator() {
        let f = fp(5);
        let x = MultiPoly::var(f, 1, 0);
        let r = RatFunc::normalize(MultiPoly::one(f, 1), x.scale(3)).unwrap();
        assert_eq!(r.den().leading_coeff(), 1);
        assert_eq!(r.num().constant_value(), Some(2));
    }

    #[test]
    fn partial_examples() {
        // d/dx (x^2 y + x) over F_2 = 1
        let f = fp(2);
        let x = RatFunc::var(f, 2, 0);
        let y = RatFunc::var(f, 2, 1);
        let e = x.mul(&x).mul(&y).add(&x);
        assert!(e.partial(0).unwrap().is_one());
        assert!(y.partial(0).unwrap().is_zero());
        assert!(matches!(
            y.partial(2),
            Err(Error::VariableOutOfRange { .. })
        ));
        // d/dx (1/x) over F_3 = 2/x^2
        let f3 = fp(3);
        let x3 = RatFunc::var(f3, 1, 0);
        let got = x3.inv().unwrap().partial(0).unwrap();
        let want = RatFunc::constant(f3, 1, 2).div(&x3.mul(&x3)).unwrap();
        assert_eq!(got, want);
    }
}
