//! Cartier operator and the decision procedures built on it.
//!
//! Every log-basis coefficient expands as `a_s = sum_j g_{j,s}^p x^j`, and `d`
//! preserves the index `j`: `d(g^p x^j dlog x_s) = g^p x^j theta_j ^ dlog x_s`
//! with `theta_j = sum_i j_i dlog x_i`. The `j = 0` piece has `d = 0` and is
//! where `C` lives; each `j != 0` piece is a Koszul complex for `theta_j`,
//! hence acyclic, which gives both the exactness test and [`antiderivative`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{frobenius_decompose, Monomial, RatFunc};

use super::{DiffForm, IndexTuple};

pub fn is_closed(w: &DiffForm) -> bool {
    w.d().is_zero()
}

/// Cartier operator without the closedness check:
/// `C(sum a_s dlog x_s) = sum g_{0,s} dlog x_s`.
pub fn cartier_raw(w: &DiffForm) -> DiffForm {
    let field = w.field();
    let m = field.nvars();
    let zero_index = Monomial::one(m);
    let mut out = DiffForm::zero(field, w.degree());
    for (s, a) in w.log_coeffs() {
        let parts = frobenius_decompose(&a);
        if let Some(g0) = parts.get(&zero_index) {
            out.add_term(s.clone(), g0.div_monomial(&s.monomial(m)));
        }
    }
    out
}

/// Cartier operator on closed forms.
pub fn cartier(w: &DiffForm) -> Result<DiffForm> {
    if !is_closed(w) {
        return Err(Error::NotClosed);
    }
    Ok(cartier_raw(w))
}

/// `w` is exact iff it is closed and `C(w) = 0`.
pub fn is_exact(w: &DiffForm) -> bool {
    if w.degree() == 0 {
        return w.is_zero();
    }
    is_closed(w) && cartier_raw(w).is_zero()
}

/// `w` lies in `ker(wp)` iff it is closed and fixed by `C`.
pub fn nu_member(w: &DiffForm) -> bool {
    is_closed(w) && cartier_raw(w) == *w
}

/// An explicit `eta` with `d(eta) = w`, or `None` when `w` is not exact
/// (always `None` in degree 0).
pub fn antiderivative(w: &DiffForm) -> Option<DiffForm> {
    if w.degree() == 0 || !is_closed(w) {
        return None;
    }
    let field = w.field();
    let m = field.nvars();
    let p = field.prime();

    // group log coefficients by Frobenius index j
    let mut pieces: BTreeMap<Monomial, Vec<(IndexTuple, RatFunc)>> = BTreeMap::new();
    for (s, a) in w.log_coeffs() {
        for (j, g) in frobenius_decompose(&a) {
            pieces.entry(j).or_default().push((s.clone(), g));
        }
    }

    let mut eta = DiffForm::zero(field, w.degree() - 1);
    for (j, terms) in pieces {
        let exps = j.exponents();
        let Some(lead) = exps.iter().position(|&e| e != 0) else {
            // nonzero j = 0 piece means C(w) != 0
            return None;
        };
        let scale = RatFunc::constant(p, m, p.inv(exps[lead]) as i64).mul_monomial(&j);
        for (s, g) in terms {
            // interior product with the dual of dlog x_lead
            if let Some((neg, rest)) = s.remove(lead) {
                let c = g.frobenius().mul(&scale);
                let c = if neg { c.neg() } else { c };
                eta.add_term(rest.clone(), c.div_monomial(&rest.monomial(m)));
            }
        }
    }
    debug_assert_eq!(eta.d(), *w);
    Some(eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FunctionField;

    #[test]
    fn cartier_examples() {
        let f = FunctionField::new(2, &["x"]).unwrap();
        let x = f.var(0);
        let dx = DiffForm::dx(&f, 0);
        assert!(cartier(&dx).unwrap().is_zero());
        assert_eq!(cartier(&dx.scale(&x)).unwrap(), dx);
        let dlog = DiffForm::dlog(&x, &f).unwrap();
        assert_eq!(cartier(&dlog).unwrap(), dlog);

        let g = FunctionField::new(2, &["x", "y"]).unwrap();
        let open = DiffForm::dx(&g, 1).scale(&g.var(0));
        assert_eq!(cartier(&open), Err(Error::NotClosed));
    }

    #[test]
    fn exactness_examples() {
        let f = FunctionField::new(2, &["x"]).unwrap();
        let x = f.var(0);
        let dx = DiffForm::dx(&f, 0);
        assert!(!is_exact(&dx.scale(&x)));
        assert!(is_exact(&dx));
        assert!(is_exact(&dx.scale(&x.pow(2))));
        assert_eq!(
            antiderivative(&dx.scale(&x.pow(2))).unwrap().d(),
            dx.scale(&x.pow(2))
        );
        assert!(antiderivative(&dx.scale(&x)).is_none());
    }

    #[test]
    fn nu_examples() {
        let f = FunctionField::new(2, &["x", "y"]).unwrap();
        let (x, y) = (f.var(0), f.var(1));
        let dlx = DiffForm::dlog(&x, &f).unwrap();
        assert!(nu_member(&dlx));
        assert!(!nu_member(&DiffForm::dx(&f, 0).scale(&x)));
        let two = dlx.wedge(&DiffForm::dlog(&y, &f).unwrap()).unwrap();
        assert!(nu_member(&two));
    }

    #[test]
    fn antiderivative_in_three_variables() {
        let f = FunctionField::new(3, &["x", "y", "z"]).unwrap();
        let (x, y, z) = (f.var(0), f.var(1), f.var(2));
        let eta = DiffForm::dx(&f, 1).scale(&x.mul(&z).add(&y.pow(2)).div(&x.add(&z)).unwrap());
        let w = eta.d();
        let back = antiderivative(&w).unwrap();
        assert_eq!(back.d(), w);
    }
}
