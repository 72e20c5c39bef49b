//! Differential forms over F_p(x_1, ..., x_m).
//!
//! Forms are stored in the plain basis `dx_s = dx_{s1} ^ ... ^ dx_{sn}` with
//! strictly increasing index tuples. The logarithmic basis
//! `dlog x_s = dx_s / (x_{s1} ... x_{sn})` is a view: a plain coefficient `a`
//! corresponds to the log coefficient `a * x_s`.

mod ops;
mod random;

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{FunctionField, Monomial, RatFunc};

pub use ops::{antiderivative, cartier, cartier_raw, is_closed, is_exact, nu_member};
pub use random::{random_element, random_form, RandomSpec};

/// Strictly increasing tuple of 0-based variable indices, compared
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IndexTuple(SmallVec<[usize; 4]>);

impl IndexTuple {
    pub fn empty() -> Self {
        IndexTuple(SmallVec::new())
    }

    pub fn new(entries: &[usize]) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(format!(
                "index tuple {entries:?} is not strictly increasing"
            )));
        }
        Ok(IndexTuple(SmallVec::from_slice(entries)))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn meets(&self, set: &[usize]) -> bool {
        self.0.iter().any(|i| set.contains(i))
    }

    /// Monomial `x_{s1} ... x_{sn}` as an exponent vector.
    pub fn monomial(&self, nvars: usize) -> Monomial {
        let mut e = vec![0u32; nvars];
        for &i in self.0.iter() {
            e[i] = 1;
        }
        Monomial::from_exponents(&e)
    }

    /// `dx_i ^ dx_self` rewritten as `sign * dx_(self + i)`; `None` if `i` is present.
    pub fn insert(&self, i: usize) -> Option<(bool, IndexTuple)> {
        match self.0.binary_search(&i) {
            Ok(_) => None,
            Err(pos) => {
                let mut t = self.0.clone();
                t.insert(pos, i);
                Some((pos % 2 == 1, IndexTuple(t)))
            }
        }
    }

    /// Remove `i`, returning the sign of `dx_i ^ dx_rest = sign * dx_self`.
    pub fn remove(&self, i: usize) -> Option<(bool, IndexTuple)> {
        match self.0.binary_search(&i) {
            Err(_) => None,
            Ok(pos) => {
                let mut t = self.0.clone();
                t.remove(pos);
                Some((pos % 2 == 1, IndexTuple(t)))
            }
        }
    }

    /// `dx_self ^ dx_other = sign * dx_merged`; `None` if they overlap.
    pub fn merge(&self, other: &IndexTuple) -> Option<(bool, IndexTuple)> {
        let mut inversions = 0usize;
        let mut out: SmallVec<[usize; 4]> = SmallVec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            if j == other.0.len() || (i < self.0.len() && self.0[i] < other.0[j]) {
                out.push(self.0[i]);
                i += 1;
            } else if i == self.0.len() || other.0[j] < self.0[i] {
                inversions += self.0.len() - i;
                out.push(other.0[j]);
                j += 1;
            } else {
                return None;
            }
        }
        Some((inversions % 2 == 1, IndexTuple(out)))
    }

    /// All strictly increasing tuples of length `n` from `0..m`, in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<IndexTuple> {
        fn rec(start: usize, m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexTuple>) {
            if cur.len() == n {
                out.push(IndexTuple(SmallVec::from_slice(cur)));
                return;
            }
            for i in start..m {
                cur.push(i);
                rec(i + 1, m, n, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n <= m {
            rec(0, m, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

/// Homogeneous differential form of degree `n`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffForm {
    field: FunctionField,
    degree: usize,
    coeffs: BTreeMap<IndexTuple, RatFunc>,
}

impl DiffForm {
    pub fn zero(field: &FunctionField, degree: usize) -> Self {
        DiffForm {
            field: field.clone(),
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn scalar(field: &FunctionField, f: RatFunc) -> Self {
        let mut w = Self::zero(field, 0);
        w.add_term(IndexTuple::empty(), f);
        w
    }

    /// `dx_i`.
    pub fn dx(field: &FunctionField, i: usize) -> Self {
        Self::basis(field, IndexTuple(SmallVec::from_slice(&[i])), field.one())
    }

    /// `coeff * dx_s`.
    pub fn basis(field: &FunctionField, s: IndexTuple, coeff: RatFunc) -> Self {
        let mut w = Self::zero(field, s.len());
        w.add_term(s, coeff);
        w
    }

    /// `coeff * dlog x_s`.
    pub fn log_basis(field: &FunctionField, s: IndexTuple, coeff: RatFunc) -> Self {
        let c = coeff.div_monomial(&s.monomial(field.nvars()));
        Self::basis(field, s, c)
    }

    /// `da / a`.
    pub fn dlog(a: &RatFunc, field: &FunctionField) -> Result<Self> {
        let inv = a.inv()?;
        Ok(Self::scalar(field, a.clone()).d().scale(&inv))
    }

    /// `dlog a_1 ^ ... ^ dlog a_n` (the constant 1 for an empty list).
    pub fn dlog_wedge(field: &FunctionField, slots: &[RatFunc]) -> Result<Self> {
        let mut acc = Self::scalar(field, field.one());
        for a in slots {
            acc = acc.wedge(&Self::dlog(a, field)?)?;
        }
        Ok(acc)
    }

    pub fn from_terms(
        field: &FunctionField,
        degree: usize,
        terms: impl IntoIterator<Item = (IndexTuple, RatFunc)>,
    ) -> Result<Self> {
        let mut w = Self::zero(field, degree);
        for (s, c) in terms {
            if s.len() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: s.len(),
                });
            }
            if let Some(&i) = s.entries().last() {
                if i >= field.nvars() {
                    return Err(Error::VariableOutOfRange {
                        index: i,
                        nvars: field.nvars(),
                    });
                }
            }
            if !field.owns(&c) {
                return Err(Error::FieldMismatch);
            }
            w.add_term(s, c);
        }
        Ok(w)
    }

    pub fn field(&self) -> &FunctionField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexTuple, &RatFunc)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, s: &IndexTuple) -> RatFunc {
        self.coeffs
            .get(s)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// The coefficient of a 0-form.
    pub fn as_scalar(&self) -> Option<RatFunc> {
        (self.degree == 0).then(|| self.coeff(&IndexTuple::empty()))
    }

    /// Log-basis coefficients `a_s * x_s`.
    pub fn log_coeffs(&self) -> BTreeMap<IndexTuple, RatFunc> {
        let m = self.field.nvars();
        self.coeffs
            .iter()
            .map(|(s, a)| (s.clone(), a.mul_monomial(&s.monomial(m))))
            .collect()
    }

    pub(crate) fn add_term(&mut self, s: IndexTuple, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(s) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, other: &DiffForm) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &DiffForm) -> Result<DiffForm> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.add_term(s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &DiffForm) -> Result<DiffForm> {
        self.try_add(&other.neg())
    }

    /// Panicking addition for forms known to be compatible.
    pub fn add(&self, other: &DiffForm) -> DiffForm {
        self.try_add(other).expect("incompatible forms")
    }

    pub fn sub(&self, other: &DiffForm) -> DiffForm {
        self.try_sub(other).expect("incompatible forms")
    }

    pub fn neg(&self) -> DiffForm {
        DiffForm {
            field: self.field.clone(),
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(s, c)| (s.clone(), c.neg()))
                .collect(),
        }
    }

    /// Multiply by a function.
    pub fn scale(&self, f: &RatFunc) -> DiffForm {
        let mut out = Self::zero(&self.field, self.degree);
        if f.is_zero() {
            return out;
        }
        for (s, c) in &self.coeffs {
            out.add_term(s.clone(), c.mul(f));
        }
        out
    }

    pub fn scale_int(&self, k: i64) -> DiffForm {
        self.scale(&self.field.constant(k))
    }

    /// Exterior derivative.
    pub fn d(&self) -> DiffForm {
        let m = self.field.nvars();
        let mut out = Self::zero(&self.field, self.degree + 1);
        if self.degree >= m {
            return out;
        }
        for (s, a) in &self.coeffs {
            for i in 0..m {
                if let Some((neg, t)) = s.insert(i) {
                    let da = a.partial_unchecked(i);
                    if da.is_zero() {
                        continue;
                    }
                    out.add_term(t, if neg { da.neg() } else { da });
                }
            }
        }
        out
    }

    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Self::zero(&self.field, self.degree + other.degree);
        if self.degree + other.degree > self.field.nvars() {
            return Ok(out);
        }
        for (s, a) in &self.coeffs {
            for (t, b) in &other.coeffs {
                if let Some((neg, u)) = s.merge(t) {
                    let c = a.mul(b);
                    out.add_term(u, if neg { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `s_p`: raise every logarithmic coefficient to the p-th power.
    /// In the plain basis `a dx_s` goes to `a^p x_s^(p-1) dx_s`.
    pub fn sp(&self) -> DiffForm {
        let m = self.field.nvars();
        let p = self.field.p();
        let mut out = Self::zero(&self.field, self.degree);
        for (s, a) in &self.coeffs {
            let c = a.frobenius().mul_monomial(&s.monomial(m).scale(p - 1));
            out.add_term(s.clone(), c);
        }
        out
    }

    /// `s_p` applied `k` times.
    pub fn sp_iter(&self, k: u32) -> DiffForm {
        (0..k).fold(self.clone(), |w, _| w.sp())
    }

    /// Artin–Schreier map `s_p - id`.
    pub fn wp(&self) -> DiffForm {
        self.sp().sub(self)
    }

    /// Keep only the terms whose index tuple satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&IndexTuple) -> bool) -> DiffForm {
        DiffForm {
            field: self.field.clone(),
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(s, _)| keep(s))
                .map(|(s, c)| (s.clone(), c.clone()))
                .collect(),
        }
    }

    /// Apply `f` to every coefficient, keeping the basis; `f` must stay in `field`.
    pub fn map_coeffs(
        &self,
        field: &FunctionField,
        mut f: impl FnMut(&IndexTuple, &RatFunc) -> RatFunc,
    ) -> DiffForm {
        let mut out = Self::zero(field, self.degree);
        for (s, c) in &self.coeffs {
            out.add_term(s.clone(), f(s, c));
        }
        out
    }
}

impl fmt::Debug for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::print_form(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2xy() -> FunctionField {
        FunctionField::new(2, &["x", "y"]).unwrap()
    }

    #[test]
    fn merge_signs() {
        let a = IndexTuple::new(&[1]).unwrap();
        let b = IndexTuple::new(&[0]).unwrap();
        let (neg, t) = a.merge(&b).unwrap();
        assert!(neg);
        assert_eq!(t.entries(), &[0, 1]);
        assert!(a.merge(&a).is_none());
        assert!(IndexTuple::new(&[2, 1]).is_err());
    }

    #[test]
    fn d_examples() {
        let f = f2xy();
        let (x, y) = (f.var(0), f.var(1));
        // d(x dy) = dx ^ dy
        let w = DiffForm::dx(&f, 1).scale(&x);
        assert_eq!(
            w.d(),
            DiffForm::dx(&f, 0).wedge(&DiffForm::dx(&f, 1)).unwrap()
        );
        // d(x^2 dy) = 0 in char 2
        assert!(DiffForm::dx(&f, 1).scale(&x.pow(2)).d().is_zero());
        assert!(DiffForm::scalar(&f, f.one()).d().is_zero());
        let _ = y;
    }

    #[test]
    fn wedge_examples() {
        let f = FunctionField::new(3, &["x", "y", "z"]).unwrap();
        let dx = DiffForm::dx(&f, 0);
        assert!(dx.wedge(&dx).unwrap().is_zero());
        let lhs = DiffForm::dx(&f, 1)
            .scale(&f.var(0))
            .wedge(&DiffForm::dx(&f, 2))
            .unwrap();
        let want = DiffForm::basis(&f, IndexTuple::new(&[1, 2]).unwrap(), f.var(0));
        assert_eq!(lhs, want);
        let other = FunctionField::new(3, &["a", "b", "c"]).unwrap();
        assert_eq!(
            dx.wedge(&DiffForm::dx(&other, 0)),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn sp_and_wp_examples() {
        let f = FunctionField::new(2, &["x"]).unwrap();
        let x = f.var(0);
        let dx = DiffForm::dx(&f, 0);
        assert_eq!(dx.sp(), dx.scale(&x));
        let dlog = DiffForm::dlog(&x, &f).unwrap();
        assert_eq!(dlog.sp(), dlog);
        assert!(dlog.wp().is_zero());
        assert!(DiffForm::zero(&f, 1).sp().is_zero());
        assert_eq!(dx.wp(), dx.scale(&x.add(&f.one())));
        assert!(DiffForm::zero(&f, 1).wp().is_zero());
    }

    #[test]
    fn degree_above_arity_is_zero() {
        let f = FunctionField::new(2, &["x"]).unwrap();
        let dx = DiffForm::dx(&f, 0);
        let two = dx.wedge(&DiffForm::dx(&f, 0)).unwrap();
        assert!(two.is_zero());
        assert!(dx.d().is_zero());
    }
}
