use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::prime::PrimeField;

/// Exponent vector, ordered graded-lexicographically (total degree first,
/// then lexicographic with x_1 > x_2 > ...).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub(crate) SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn scale(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in F_p[x_1, ..., x_m]. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    pub(crate) field: PrimeField,
    pub(crate) nvars: usize,
    pub(crate) terms: BTreeMap<Monomial, u32>,
}

impl MultiPoly {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        MultiPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: i64) -> Self {
        let c = field.reduce(c);
        let mut p = Self::zero(field, nvars);
        if c != 0 {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        Self::constant(field, nvars, 1)
    }

    pub fn var(field: PrimeField, nvars: usize, i: usize) -> Self {
        Self::monomial(field, Monomial::var(nvars, i), 1)
    }

    pub fn monomial(field: PrimeField, m: Monomial, c: u32) -> Self {
        let nvars = m.0.len();
        let mut p = Self::zero(field, nvars);
        let c = c % field.p();
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(
        field: PrimeField,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, i64)>,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), nvars);
            p.add_term(m, field.reduce(c));
        }
        p
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, &c)| m.is_one() && c == 1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<u32> {
        if self.is_zero() {
            Some(0)
        } else if self.is_constant() {
            self.terms.values().next().copied()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn leading(&self) -> Option<(&Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn leading_coeff(&self) -> u32 {
        self.leading().map_or(0, |(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let f = self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(*e.get(), c);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert!(self.field == other.field && self.nvars == other.nvars);
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (m, &c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let f = self.field;
        MultiPoly {
            field: f,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), f.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        let f = self.field;
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), f.neg(c));
        }
        out
    }

    pub fn scale(&self, c: u32) -> MultiPoly {
        let f = self.field;
        let c = c % f.p();
        if c == 0 {
            return Self::zero(f, self.nvars);
        }
        MultiPoly {
            field: f,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &a)| (m.clone(), f.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u32) -> MultiPoly {
        let f = self.field;
        let c = c % f.p();
        if c == 0 {
            return Self::zero(f, self.nvars);
        }
        MultiPoly {
            field: f,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, &k)| (a.mul(m), f.mul(k, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert!(self.field == other.field && self.nvars == other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        if other.is_monomial() {
            let (m, c) = other.leading().unwrap();
            return self.mul_monomial(m, c);
        }
        if self.is_monomial() {
            let (m, c) = self.leading().unwrap();
            return other.mul_monomial(m, c);
        }
        let f = self.field;
        let mut acc: std::collections::HashMap<Monomial, u32> = std::collections::HashMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e = acc.entry(a.mul(b)).or_insert(0);
                *e = f.add(*e, f.mul(ca, cb));
            }
        }
        MultiPoly {
            field: f,
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = Self::one(self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^p`, computed by the Frobenius (coefficients are fixed by x -> x^p on F_p).
    pub fn frobenius(&self) -> MultiPoly {
        let p = self.field.p();
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &c)| (m.scale(p), c)).collect(),
        }
    }

    /// A polynomial with the same irreducible factors apart from monomials:
    /// the monomial content removed, then p-th roots taken while every
    /// exponent is divisible by p.
    pub(crate) fn factor_base(&self) -> MultiPoly {
        let p = self.field.p();
        let mut cur = self.div_monomial(&self.monomial_content());
        while !cur.is_constant() && cur.terms.keys().all(|m| m.0.iter().all(|e| e % p == 0)) {
            cur = MultiPoly {
                field: self.field,
                nvars: self.nvars,
                terms: cur
                    .terms
                    .iter()
                    .map(|(m, &c)| (Monomial(m.0.iter().map(|e| e / p).collect()), c))
                    .collect(),
            };
        }
        cur
    }

    pub fn partial(&self, v: usize) -> MultiPoly {
        let f = self.field;
        let mut out = Self::zero(f, self.nvars);
        for (m, &c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let k = f.mul(c, e % f.p());
            if k == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.0[v] -= 1;
            out.add_term(nm, k);
        }
        out
    }

    /// Scale so that the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => self.scale(self.field.inv(c)),
        }
    }

    /// Componentwise minimum of all exponent vectors (the monomial content).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, &c)| (m.quotient_of(a), c))
                .collect(),
        }
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let f = self.field;
        if divisor.is_monomial() {
            let (dm, dc) = divisor.leading().unwrap();
            if !self.terms.keys().all(|m| dm.divides(m)) {
                return None;
            }
            let inv = f.inv(dc);
            return Some(MultiPoly {
                field: f,
                nvars: self.nvars,
                terms: self
                    .terms
                    .iter()
                    .map(|(m, &c)| (dm.quotient_of(m), f.mul(c, inv)))
                    .collect(),
            });
        }
        let (lm, lc) = divisor.leading().map(|(m, c)| (m.clone(), c)).unwrap();
        let inv = f.inv(lc);
        let mut rem = self.clone();
        let mut quot = Self::zero(f, self.nvars);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c)) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = f.mul(c, inv);
            rem = rem.sub(&divisor.mul_monomial(&qm, qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients as a polynomial in `x_v`: entry `i` is the coefficient of `x_v^i`.
    pub fn coeffs_in(&self, v: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(self.field, self.nvars); deg + 1];
        for (m, &c) in &self.terms {
            let e = m.0[v] as usize;
            let mut nm = m.clone();
            nm.0[v] = 0;
            out[e].terms.insert(nm, c);
        }
        out
    }

    pub fn from_coeffs_in(
        field: PrimeField,
        nvars: usize,
        v: usize,
        coeffs: &[MultiPoly],
    ) -> MultiPoly {
        let mut out = Self::zero(field, nvars);
        for (i, c) in coeffs.iter().enumerate() {
            for (m, &k) in &c.terms {
                let mut nm = m.clone();
                nm.0[v] += i as u32;
                out.add_term(nm, k);
            }
        }
        out
    }

    /// Variables occurring with positive degree.
    pub fn support_vars(&self) -> Vec<bool> {
        let mut occ = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    occ[i] = true;
                }
            }
        }
        occ
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    write!(f, "*x{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}
