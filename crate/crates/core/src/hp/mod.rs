//! Congruences modulo `wp(Omega^n) + d(Omega^(n-1))`, always witnessed by an
//! explicit pair `(u, eta)` with `lhs - rhs = wp(u) + d(eta)`.

mod generators;
mod rewrite;
mod vanish;

use crate::error::{Error, Result};
use crate::field::FunctionField;
use crate::forms::DiffForm;
use crate::text::{field_from_sexp, field_to_sexp, form_from_sexp, form_to_sexp, Sexp};

pub use generators::{
    kf_generators, GeneratorInstance, GeneratorSpec, GeneratorSystem, Rebase, RebaseMove,
};
pub(crate) use rewrite::power_product;
pub use rewrite::{cert_exponent_reduction, cert_power, cert_product_rule, ExponentReduction};
pub use vanish::{log_generators, vanish_certificate, vanish_log_certificate, LogGenerator};

/// Witness `(u, eta)`; `eta` is absent in degree 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    field: FunctionField,
    u: DiffForm,
    eta: Option<DiffForm>,
}

impl Certificate {
    pub fn new(u: DiffForm, eta: Option<DiffForm>) -> Result<Self> {
        let field = u.field().clone();
        match (&eta, u.degree()) {
            (None, 0) => {}
            (None, _) => {
                return Err(Error::Invalid(
                    "certificate of positive degree needs eta".into(),
                ))
            }
            (Some(e), 0) if e.is_zero() => {
                return Ok(Certificate {
                    field,
                    u,
                    eta: None,
                })
            }
            (Some(_), 0) => return Err(Error::Invalid("degree-0 certificates have no eta".into())),
            (Some(e), n) => {
                if e.field() != &field {
                    return Err(Error::FieldMismatch);
                }
                if e.degree() != n - 1 {
                    return Err(Error::DegreeMismatch {
                        expected: n - 1,
                        got: e.degree(),
                    });
                }
            }
        }
        Ok(Certificate { field, u, eta })
    }

    pub fn zero(field: &FunctionField, n: usize) -> Self {
        Certificate {
            field: field.clone(),
            u: DiffForm::zero(field, n),
            eta: (n > 0).then(|| DiffForm::zero(field, n - 1)),
        }
    }

    pub fn from_u(u: DiffForm) -> Self {
        let n = u.degree();
        let f = u.field().clone();
        Certificate {
            field: f.clone(),
            u,
            eta: (n > 0).then(|| DiffForm::zero(&f, n - 1)),
        }
    }

    pub fn from_eta(field: &FunctionField, eta: DiffForm) -> Self {
        let n = eta.degree() + 1;
        Certificate {
            field: field.clone(),
            u: DiffForm::zero(field, n),
            eta: Some(eta),
        }
    }

    pub fn field(&self) -> &FunctionField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.u.degree()
    }

    pub fn u(&self) -> &DiffForm {
        &self.u
    }

    pub fn eta(&self) -> Option<&DiffForm> {
        self.eta.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.eta.as_ref().is_none_or(DiffForm::is_zero)
    }

    /// `wp(u) + d(eta)`.
    pub fn value(&self) -> DiffForm {
        let mut v = self.u.wp();
        if let Some(e) = &self.eta {
            v = v.add(&e.d());
        }
        v
    }

    /// Certificate for the sum of two congruences.
    pub fn plus(&self, other: &Certificate) -> Result<Certificate> {
        let u = self.u.try_add(&other.u)?;
        let eta = match (&self.eta, &other.eta) {
            (Some(a), Some(b)) => Some(a.try_add(b)?),
            (None, None) => None,
            _ => {
                return Err(Error::DegreeMismatch {
                    expected: self.degree(),
                    got: other.degree(),
                })
            }
        };
        Ok(Certificate {
            field: self.field.clone(),
            u,
            eta,
        })
    }

    pub fn neg(&self) -> Certificate {
        Certificate {
            field: self.field.clone(),
            u: self.u.neg(),
            eta: self.eta.as_ref().map(DiffForm::neg),
        }
    }

    pub fn to_sexp(&self) -> Sexp {
        let mut eta = vec![Sexp::atom("eta")];
        if let Some(e) = &self.eta {
            eta.push(form_to_sexp(e));
        }
        Sexp::list(vec![
            Sexp::atom("cert"),
            Sexp::list(vec![Sexp::atom("u"), form_to_sexp(&self.u)]),
            Sexp::List(eta),
            field_to_sexp(&self.field),
        ])
    }

    pub fn from_sexp(s: &Sexp) -> Result<Self> {
        let items = s.tagged("cert")?;
        if items.len() != 3 {
            return Err(Error::Parse(
                "certificate must be `(cert (u FORM) (eta FORM) (field ...))`".into(),
            ));
        }
        let field = field_from_sexp(&items[2])?;
        let u_items = items[0].tagged("u")?;
        let [u_form] = u_items else {
            return Err(Error::Parse("`(u FORM)` expected".into()));
        };
        let u = form_from_sexp(u_form, &field)?;
        let eta = match items[1].tagged("eta")? {
            [] => None,
            [e] => Some(form_from_sexp(e, &field)?),
            _ => return Err(Error::Parse("`(eta FORM)` expected".into())),
        };
        Certificate::new(u, eta)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_sexp(&Sexp::parse(text)?)
    }
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}

/// Exact check of `lhs - rhs = wp(u) + d(eta)`.
pub fn verify_certificate(lhs: &DiffForm, rhs: &DiffForm, cert: &Certificate) -> Result<bool> {
    if lhs.degree() != rhs.degree() {
        return Err(Error::DegreeMismatch {
            expected: lhs.degree(),
            got: rhs.degree(),
        });
    }
    if cert.degree() != lhs.degree() {
        return Err(Error::DegreeMismatch {
            expected: lhs.degree(),
            got: cert.degree(),
        });
    }
    if lhs.field() != rhs.field() || cert.field() != lhs.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(lhs.sub(rhs) == cert.value())
}

/// A certified congruence `lhs = rhs` in `H_p^(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub lhs: DiffForm,
    pub rhs: DiffForm,
    pub cert: Certificate,
}

impl Congruence {
    pub fn verify(&self) -> bool {
        verify_certificate(&self.lhs, &self.rhs, &self.cert).unwrap_or(false)
    }

    /// `rhs = lhs`.
    pub fn reversed(&self) -> Congruence {
        Congruence {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            cert: self.cert.neg(),
        }
    }

    /// Chain `a = b` and `b = c` into `a = c`.
    pub fn then(&self, next: &Congruence) -> Result<Congruence> {
        if self.rhs != next.lhs {
            return Err(Error::Invalid("congruences do not chain".into()));
        }
        Ok(Congruence {
            lhs: self.lhs.clone(),
            rhs: next.rhs.clone(),
            cert: self.cert.plus(&next.cert)?,
        })
    }
}
