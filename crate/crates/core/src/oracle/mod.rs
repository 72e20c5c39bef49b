//! Bounded witness search by linear algebra. Since `a -> a^p` is additive
//! and fixes F_p, `wp(u) + d(eta) = omega` is F_p-linear in the coefficients
//! of `u` and `eta` over any finite spanning set, so each bounded search is one
//! linear system.

mod linear;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{gcd, FunctionField, Monomial, MultiPoly, RatFunc};
use crate::forms::{DiffForm, IndexTuple};
use crate::hp::Certificate;
use crate::text::rat_infix;

pub use linear::{solve_linear_fp, LinearSystem};

/// Candidate coefficients `monomial / den` with `deg(monomial) <= degree`,
/// `den` from `denominators`, and optional per-variable exponent caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub degree: u32,
    pub denominators: Vec<RatFunc>,
    pub caps: Option<Vec<u32>>,
}

impl SearchBounds {
    /// Polynomial candidates only.
    pub fn polynomial(field: &FunctionField, degree: u32) -> Self {
        SearchBounds {
            degree,
            denominators: vec![field.one()],
            caps: None,
        }
    }

    pub fn with_denominators(degree: u32, denominators: Vec<RatFunc>) -> Self {
        SearchBounds {
            degree,
            denominators,
            caps: None,
        }
    }

    /// Same bounds pushed into another field (denominators mapped by `map`).
    pub fn map_denominators(
        &self,
        mut map: impl FnMut(&RatFunc) -> Result<RatFunc>,
    ) -> Result<Self> {
        Ok(SearchBounds {
            degree: self.degree,
            denominators: self
                .denominators
                .iter()
                .map(&mut map)
                .collect::<Result<_>>()?,
            caps: None,
        })
    }

    fn monomials(&self, nvars: usize) -> Vec<Monomial> {
        fn rec(
            var: usize,
            left: u32,
            caps: Option<&[u32]>,
            cur: &mut Vec<u32>,
            out: &mut Vec<Monomial>,
        ) {
            if var == cur.len() {
                out.push(Monomial::from_exponents(cur));
                return;
            }
            let cap = caps.map_or(left, |c| c[var].min(left));
            for e in 0..=cap {
                cur[var] = e;
                rec(var + 1, left - e, caps, cur, out);
            }
            cur[var] = 0;
        }
        let mut out = Vec::new();
        rec(
            0,
            self.degree,
            self.caps.as_deref(),
            &mut vec![0; nvars],
            &mut out,
        );
        out.sort();
        out
    }

    fn candidates(&self, field: &FunctionField) -> Result<Vec<RatFunc>> {
        let mut out = Vec::new();
        for den in &self.denominators {
            if !field.owns(den) {
                return Err(Error::FieldMismatch);
            }
            let inv = den.inv()?;
            for m in self.monomials(field.nvars()) {
                let c = inv.mul_monomial(&m);
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        Ok(out)
    }

    pub fn describe(&self, field: &FunctionField) -> String {
        let dens: Vec<String> = self
            .denominators
            .iter()
            .map(|d| rat_infix(d, field))
            .collect();
        format!(
            "numerator degree <= {}, denominators {{{}}}",
            self.degree,
            dens.join(", ")
        )
    }

    pub fn report(&self, field: &FunctionField) -> BoundsReport {
        BoundsReport {
            degree: self.degree,
            denominators: self
                .denominators
                .iter()
                .map(|d| rat_infix(d, field))
                .collect(),
            caps: self.caps.clone(),
        }
    }
}

/// Serializable echo of the bounds used by a search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub degree: u32,
    pub denominators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caps: Option<Vec<u32>>,
}

/// Result of a bounded search; a negative answer only speaks for its bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    NotFound { bounds: SearchBounds },
}

impl<T> Search<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Search::Found(t) => Some(t),
            Search::NotFound { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }
}

impl<T> fmt::Display for Search<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Search::Found(_) => f.write_str("found"),
            Search::NotFound { bounds } => write!(
                f,
                "none within numerator degree <= {} over {} denominators",
                bounds.degree,
                bounds.denominators.len()
            ),
        }
    }
}

fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let g = gcd(a, b);
    a.mul(&b.div_exact(&g).expect("gcd divides")).monic()
}

/// Unknown columns: each is a basis form `c * dx_s` whose image under the
/// linear map is recorded.
struct Column {
    basis: DiffForm,
    image: DiffForm,
    in_eta: bool,
}

fn solve_columns(field: &FunctionField, target: &DiffForm, cols: &[Column]) -> Option<Vec<u32>> {
    let mut common = target.terms().fold(
        MultiPoly::one(field.prime(), field.nvars()),
        |acc, (_, c)| lcm(&acc, c.den()),
    );
    for c in cols {
        for (_, a) in c.image.terms() {
            common = lcm(&common, a.den());
        }
    }
    let vectorize = |w: &DiffForm| -> BTreeMap<(IndexTuple, Monomial), u32> {
        let mut out = BTreeMap::new();
        for (s, a) in w.terms() {
            let scaled = a
                .num()
                .mul(&common.div_exact(a.den()).expect("common multiple"));
            for (m, c) in scaled.terms() {
                out.insert((s.clone(), m.clone()), c);
            }
        }
        out
    };
    let b = vectorize(target);
    let colvecs: Vec<_> = cols.iter().map(|c| vectorize(&c.image)).collect();
    let mut keys: Vec<(IndexTuple, Monomial)> = b.keys().cloned().collect();
    for v in &colvecs {
        keys.extend(v.keys().cloned());
    }
    keys.sort();
    keys.dedup();
    let mut sys = LinearSystem::new(field.prime(), cols.len());
    for k in &keys {
        let row = colvecs
            .iter()
            .map(|v| v.get(k).copied().unwrap_or(0))
            .collect();
        sys.push_row(row, b.get(k).copied().unwrap_or(0));
    }
    solve_linear_fp(&sys)
}

fn basis_columns(
    field: &FunctionField,
    degree: usize,
    cands: &[RatFunc],
    image: impl Fn(&DiffForm) -> DiffForm,
    in_eta: bool,
) -> Vec<Column> {
    let mut out = Vec::new();
    for s in IndexTuple::all(field.nvars(), degree) {
        for c in cands {
            let basis = DiffForm::basis(field, s.clone(), c.clone());
            let image = image(&basis);
            if !image.is_zero() {
                out.push(Column {
                    basis,
                    image,
                    in_eta,
                });
            }
        }
    }
    out
}

fn assemble(
    field: &FunctionField,
    n: usize,
    cols: &[Column],
    x: &[u32],
) -> (DiffForm, Option<DiffForm>) {
    let mut u = DiffForm::zero(field, n);
    let mut eta = (n > 0).then(|| DiffForm::zero(field, n - 1));
    for (c, &xi) in cols.iter().zip(x) {
        if xi == 0 {
            continue;
        }
        let term = c.basis.scale_int(xi as i64);
        if c.in_eta {
            let e = eta.as_mut().expect("eta columns only in positive degree");
            *e = e.add(&term);
        } else {
            u = u.add(&term);
        }
    }
    (u, eta)
}

/// Search `(u, eta)` with `wp(u) + d(eta) = omega` inside `bounds`.
pub fn solve_wp_plus_d(w: &DiffForm, bounds: &SearchBounds) -> Result<Search<Certificate>> {
    let field = w.field();
    let n = w.degree();
    if w.is_zero() {
        return Ok(Search::Found(Certificate::zero(field, n)));
    }
    let cands = bounds.candidates(field)?;
    let mut cols = basis_columns(field, n, &cands, DiffForm::wp, false);
    if n > 0 {
        cols.extend(basis_columns(field, n - 1, &cands, DiffForm::d, true));
    }
    Ok(match solve_columns(field, w, &cols) {
        Some(x) => {
            let (u, eta) = assemble(field, n, &cols, &x);
            let cert = Certificate::new(u, eta)?;
            debug_assert_eq!(cert.value(), *w);
            Search::Found(cert)
        }
        None => Search::NotFound {
            bounds: bounds.clone(),
        },
    })
}

/// Search `eta` with `d(eta) = omega` inside `bounds`.
pub fn exhaustive_exactness(w: &DiffForm, bounds: &SearchBounds) -> Result<Search<DiffForm>> {
    let field = w.field();
    let n = w.degree();
    if n == 0 {
        return Ok(if w.is_zero() {
            Search::Found(DiffForm::zero(field, 0))
        } else {
            Search::NotFound {
                bounds: bounds.clone(),
            }
        });
    }
    if w.is_zero() {
        return Ok(Search::Found(DiffForm::zero(field, n - 1)));
    }
    let cands = bounds.candidates(field)?;
    let cols = basis_columns(field, n - 1, &cands, DiffForm::d, true);
    Ok(match solve_columns(field, w, &cols) {
        Some(x) => {
            let (_, eta) = assemble(field, n, &cols, &x);
            Search::Found(eta.expect("positive degree"))
        }
        None => Search::NotFound {
            bounds: bounds.clone(),
        },
    })
}

/// `u` with `u^p - u = c` inside `bounds`.
pub fn artin_schreier_solve(
    c: &RatFunc,
    field: &FunctionField,
    bounds: &SearchBounds,
) -> Result<Search<RatFunc>> {
    if !field.owns(c) {
        return Err(Error::FieldMismatch);
    }
    Ok(
        match solve_wp_plus_d(&DiffForm::scalar(field, c.clone()), bounds)? {
            Search::Found(cert) => Search::Found(cert.u().as_scalar().expect("degree 0")),
            Search::NotFound { bounds } => Search::NotFound { bounds },
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::verify_certificate;

    #[test]
    fn wp_plus_d_examples() {
        let f = FunctionField::new(2, &["x"]).unwrap();
        let x = f.var(0);
        let dx = DiffForm::dx(&f, 0);
        let b = SearchBounds::polynomial(&f, 2);
        let w = dx.scale(&x.add(&f.one()));
        let c = solve_wp_plus_d(&w, &b).unwrap();
        assert!(verify_certificate(&w, &DiffForm::zero(&f, 1), c.found().unwrap()).unwrap());
        let w = dx.scale(&x);
        let c = solve_wp_plus_d(&w, &b).unwrap();
        assert!(verify_certificate(&w, &DiffForm::zero(&f, 1), c.found().unwrap()).unwrap());

        let g = FunctionField::new(2, &["x", "y"]).unwrap();
        let w = DiffForm::dlog(&g.var(0), &g).unwrap().scale(&g.var(1));
        let b = SearchBounds::with_denominators(6, vec![g.one(), g.var(0)]);
        assert!(!solve_wp_plus_d(&w, &b).unwrap().is_found());
    }

    #[test]
    fn exactness_examples() {
        let f = FunctionField::new(2, &["x"]).unwrap();
        let x = f.var(0);
        let dx = DiffForm::dx(&f, 0);
        let b = SearchBounds::with_denominators(8, vec![f.one(), x.clone(), x.pow(2)]);
        assert!(exhaustive_exactness(&dx, &b).unwrap().is_found());
        assert!(!exhaustive_exactness(&dx.scale(&x), &b).unwrap().is_found());
        assert!(exhaustive_exactness(&DiffForm::zero(&f, 1), &b)
            .unwrap()
            .is_found());
    }

    #[test]
    fn artin_schreier_examples() {
        let f = FunctionField::new(2, &["x"]).unwrap();
        let x = f.var(0);
        let b = SearchBounds::polynomial(&f, 8);
        assert_eq!(
            artin_schreier_solve(&x.pow(2).add(&x), &f, &b)
                .unwrap()
                .found(),
            Some(&x)
        );
        assert_eq!(
            artin_schreier_solve(&f.zero(), &f, &b).unwrap().found(),
            Some(&f.zero())
        );
        assert!(!artin_schreier_solve(&x, &f, &b).unwrap().is_found());
    }
}
