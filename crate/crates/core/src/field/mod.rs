//! Exact arithmetic in F_p and the rational function field F_p(x_1, ..., x_m).
//!
//! The variables x_1 < ... < x_m are the fixed p-basis of the field: every
//! element has a unique expansion `f = sum_j g_j^p x^j` over exponent vectors
//! `j` in `{0, ..., p-1}^m` ([`frobenius_decompose`]). Everything in the
//! differential-form layer (s_p, the Cartier operator, exactness) is built on
//! that expansion.

mod gcd;
mod poly;
mod prime;
mod ratfunc;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use gcd::gcd;
pub use poly::{Monomial, MultiPoly};
pub use prime::PrimeField;
pub use ratfunc::RatFunc;

use crate::error::{Error, Result};

/// F_p(x_1, ..., x_m) together with variable names. The variables, in order,
/// form the p-basis used by every basis-dependent operation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FunctionField {
    prime: PrimeField,
    vars: Arc<[String]>,
}

impl FunctionField {
    pub fn new(p: u64, vars: &[&str]) -> Result<Self> {
        Self::from_names(p, vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn from_names(p: u64, vars: Vec<String>) -> Result<Self> {
        let prime = PrimeField::new(p)?;
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::Invalid(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate variable `{v}`")));
            }
        }
        Ok(FunctionField {
            prime,
            vars: vars.into(),
        })
    }

    pub fn prime(&self) -> PrimeField {
        self.prime
    }

    pub fn p(&self) -> u32 {
        self.prime.p()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var(&self, i: usize) -> RatFunc {
        RatFunc::var(self.prime, self.nvars(), i)
    }

    pub fn zero(&self) -> RatFunc {
        RatFunc::zero(self.prime, self.nvars())
    }

    pub fn one(&self) -> RatFunc {
        RatFunc::one(self.prime, self.nvars())
    }

    pub fn constant(&self, c: i64) -> RatFunc {
        RatFunc::constant(self.prime, self.nvars(), c)
    }

    pub fn monomial(&self, exps: &[u32]) -> RatFunc {
        RatFunc::from_monomial(self.prime, Monomial::from_exponents(exps))
    }

    /// Whether `f` is an element of this field (same characteristic and arity).
    pub fn owns(&self, f: &RatFunc) -> bool {
        f.field() == self.prime && f.nvars() == self.nvars()
    }

    /// Text name such as `F2(x,y)`.
    pub fn descriptor(&self) -> String {
        format!("F{}({})", self.p(), self.vars.join(","))
    }

    /// Parse `F2(x,y)`.
    pub fn parse_descriptor(s: &str) -> Result<Self> {
        let s = s.trim();
        let rest = s
            .strip_prefix('F')
            .ok_or_else(|| Error::Parse(format!("field descriptor `{s}` must start with F")))?;
        let open = rest
            .find('(')
            .ok_or_else(|| Error::Parse(format!("field descriptor `{s}` lacks `(`")))?;
        let p: u64 = rest[..open]
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad characteristic in `{s}`")))?;
        let inner = rest[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("field descriptor `{s}` lacks `)`")))?;
        let vars: Vec<String> = inner
            .split(',')
            .map(|v| v.trim().to_string())
            .filter(|v| !v.is_empty())
            .collect();
        Self::from_names(p, vars)
    }

    pub fn pbasis(&self) -> PBasis {
        PBasis {
            vars: self.vars.clone(),
        }
    }
}

impl fmt::Debug for FunctionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// The ordered p-basis of a [`FunctionField`]: its variables. The order is
/// the one used for index tuples and the filtration by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PBasis {
    vars: Arc<[String]>,
}

impl PBasis {
    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    /// Indices `< j`, i.e. the generators of F_{<j} over F^p.
    pub fn below(&self, j: usize) -> std::ops::Range<usize> {
        0..j.min(self.vars.len())
    }
}

/// Unique expansion `f = sum_j g_j^p x^j`, keyed by the exponent vector `j`
/// (entries in `0..p`). Zero components are omitted.
pub type FrobeniusDecomposition = BTreeMap<Monomial, RatFunc>;

pub fn frobenius_decompose(f: &RatFunc) -> FrobeniusDecomposition {
    let field = f.field();
    let p = field.p();
    let n = f.nvars();
    let mut out = FrobeniusDecomposition::new();
    if f.is_zero() {
        return out;
    }
    // f = num * den^(p-1) / den^p, so decompose the polynomial numerator
    let den = f.den();
    let lifted = if den.is_one() {
        f.num().clone()
    } else {
        f.num().mul(&den.pow(p as u64 - 1))
    };
    let mut parts: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
    for (m, c) in lifted.terms() {
        let j = Monomial::from_exponents(&m.exponents().iter().map(|e| e % p).collect::<Vec<_>>());
        let root =
            Monomial::from_exponents(&m.exponents().iter().map(|e| e / p).collect::<Vec<_>>());
        parts
            .entry(j)
            .or_insert_with(|| MultiPoly::zero(field, n))
            .add_term(root, c);
    }
    for (j, h) in parts {
        let g = RatFunc::normalize(h, den.clone()).expect("nonzero denominator");
        out.insert(j, g);
    }
    out
}

/// Rebuild `sum_j g_j^p x^j`.
pub fn frobenius_reconstruct(field: &FunctionField, parts: &FrobeniusDecomposition) -> RatFunc {
    parts.iter().fold(field.zero(), |acc, (j, g)| {
        acc.add(&g.frobenius().mul_monomial(j))
    })
}

/// `g` with `g^p = f`, if `f` is a p-th power.
pub fn pth_root(f: &RatFunc) -> Option<RatFunc> {
    let parts = frobenius_decompose(f);
    match parts.len() {
        0 => Some(f.clone()),
        1 => parts
            .into_iter()
            .next()
            .filter(|(j, _)| j.is_one())
            .map(|(_, g)| g),
        _ => None,
    }
}

/// Whether `f` lies in F^p(x_S): every component of the Frobenius expansion
/// has its exponent vector supported inside `subset`.
pub fn subfield_membership(f: &RatFunc, subset: &[usize]) -> bool {
    frobenius_decompose(f).keys().all(|j| {
        j.exponents()
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || subset.contains(&i))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_round_trip() {
        let f = FunctionField::parse_descriptor("F3(x, y,z)").unwrap();
        assert_eq!(f.descriptor(), "F3(x,y,z)");
        assert!(FunctionField::parse_descriptor("F4(x)").is_err());
        assert!(FunctionField::parse_descriptor("F2(x,x)").is_err());
    }

    #[test]
    fn decompose_examples() {
        let f = FunctionField::new(2, &["x", "y"]).unwrap();
        let (x, y) = (f.var(0), f.var(1));
        // x^3 y + y^2 = x^2 * (xy) + y^2
        let e = x.pow(3).mul(&y).add(&y.pow(2));
        let d = frobenius_decompose(&e);
        assert_eq!(d.len(), 2);
        assert_eq!(d[&Monomial::from_exponents(&[1, 1])], x);
        assert_eq!(d[&Monomial::from_exponents(&[0, 0])], y);
        assert_eq!(frobenius_reconstruct(&f, &d), e);

        let x2 = frobenius_decompose(&x.pow(2));
        assert_eq!(x2.len(), 1);
        assert_eq!(x2[&Monomial::from_exponents(&[0, 0])], x);

        let g = FunctionField::new(3, &["x"]).unwrap();
        let d3 = frobenius_decompose(&g.var(0));
        assert_eq!(d3.len(), 1);
        assert!(d3[&Monomial::from_exponents(&[1])].is_one());
    }

    #[test]
    fn pth_root_examples() {
        let f = FunctionField::new(2, &["x", "y"]).unwrap();
        let (x, y) = (f.var(0), f.var(1));
        assert_eq!(pth_root(&x.pow(2)), Some(x.clone()));
        assert_eq!(pth_root(&x), None);
        let q = x.pow(2).add(&y.pow(2)).div(&y.pow(4)).unwrap();
        assert_eq!(pth_root(&q), Some(x.add(&y).div(&y.pow(2)).unwrap()));
    }

    #[test]
    fn subfield_examples() {
        let f = FunctionField::new(2, &["x", "y"]).unwrap();
        let (x, y) = (f.var(0), f.var(1));
        assert!(subfield_membership(&x.add(&y.pow(2)), &[0]));
        assert!(!subfield_membership(&y, &[0]));
        assert!(subfield_membership(&x.pow(2).mul(&y.pow(2)), &[]));
    }
}
