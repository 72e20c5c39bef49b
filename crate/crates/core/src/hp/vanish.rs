//! Witnesses that generators die over the extension, and the logarithmic
//! generator family `b-powers * s^(p^t) dlog s ^ dlog a_2 ^ ... ^ dlog a_n`.

use crate::error::{Error, Result};
use crate::extensions::{AdaptedData, ExtensionSpec};
use crate::field::{pth_root, FunctionField, RatFunc};
use crate::forms::{antiderivative, nu_member, DiffForm};

use super::generators::{GeneratorInstance, GeneratorSpec, GeneratorSystem};
use super::rewrite::power_product;
use super::Certificate;

/// `p^t`-th root of `f` that is itself a p-th power.
fn deep_root(f: &RatFunc, t: u32) -> Result<RatFunc> {
    let mut g = f.clone();
    for _ in 0..t {
        g = pth_root(&g).ok_or_else(|| {
            Error::UnsupportedExtension("base power has no root of the needed order over E".into())
        })?;
    }
    if pth_root(&g).is_none() {
        return Err(Error::UnsupportedExtension(
            "base power is not a p-th power over E at the needed order".into(),
        ));
    }
    Ok(g)
}

/// Complete `(u, eta)` for `target = wp(u) + d(eta)` by absorbing any exact
/// remainder into `eta`.
fn finish(target: &DiffForm, u: DiffForm, eta: DiffForm) -> Result<Certificate> {
    let field = target.field();
    let rest = target.sub(&u.wp()).sub(&eta.d());
    let eta = if rest.is_zero() {
        eta
    } else {
        let extra = antiderivative(&rest).ok_or_else(|| {
            Error::UnsupportedExtension(
                "restriction does not commute with s_p up to exact forms".into(),
            )
        })?;
        eta.add(&extra)
    };
    let cert = Certificate::new(u, Some(eta))?;
    if cert.value() != *target || cert.field() != field {
        return Err(Error::CertificateFailed(
            "vanishing witness did not verify".into(),
        ));
    }
    Ok(cert)
}

/// Certificate over E for `restrict(g) = 0`.
pub fn vanish_certificate(g: &GeneratorInstance, ext: &ExtensionSpec) -> Result<Certificate> {
    let sys = &g.system;
    if sys.field() != ext.source() {
        return Err(Error::FieldMismatch);
    }
    let target = ext.restrict(&g.value)?;
    let e = ext.target();
    let n = g.degree();
    if target.is_zero() {
        return Ok(Certificate::zero(e, n));
    }
    let v_e = ext.restrict(&g.inst)?;
    match &g.spec {
        GeneratorSpec::TypeI { index } => {
            let b = ext.restrict_element(&sys.bases()[*index])?;
            if pth_root(&b).is_none() {
                return Err(Error::UnsupportedExtension(format!(
                    "base {} is not a p-th power over E",
                    index + 1
                )));
            }
            finish(&target, DiffForm::zero(e, n), v_e.scale(&b))
        }
        GeneratorSpec::TypeII { t, k } => {
            let gamma = deep_root(
                &ext.restrict_element(&power_product(sys.field(), sys.bases(), k))?,
                *t,
            )?;
            let w = v_e.d().scale(&gamma);
            let mut u = DiffForm::zero(e, n);
            let mut cur = w;
            for _ in 0..*t {
                u = u.add(&cur);
                cur = cur.sp();
            }
            finish(&target, u, v_e.scale(&gamma))
        }
    }
}

/// `coefficient * dlog s ^ dlog a_2 ^ ... ^ dlog a_n`, with the coefficient
/// `b_j s` (type (i)) or `b^k s^(p^t)` (type (ii)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogGenerator {
    pub system: GeneratorSystem,
    pub spec: GeneratorSpec,
    pub s: RatFunc,
    pub slots: Vec<RatFunc>,
    /// The 1-form `coefficient * dlog s`.
    pub head: DiffForm,
    /// `dlog a_2 ^ ... ^ dlog a_n` (the constant 1 when `n = 1`).
    pub tail: DiffForm,
    pub value: DiffForm,
}

impl LogGenerator {
    pub fn is_trivial(&self) -> bool {
        self.spec.is_trivial()
    }

    /// `value = head ^ tail` with `tail` logarithmic.
    pub fn shape_ok(&self) -> bool {
        self.head.degree() == 1
            && nu_member(&self.tail)
            && DiffForm::dlog_wedge(self.value.field(), &self.slots).is_ok_and(|t| t == self.tail)
            && self.head.wedge(&self.tail).is_ok_and(|w| w == self.value)
    }

    pub fn coefficient(&self) -> RatFunc {
        let f = self.system.field();
        match &self.spec {
            GeneratorSpec::TypeI { index } => self.system.bases()[*index].mul(&self.s),
            GeneratorSpec::TypeII { t, k } => {
                power_product(f, self.system.bases(), k).mul(&self.s.pow((f.p() as u64).pow(*t)))
            }
        }
    }
}

/// All logarithmic generators for the given `s` values and slot lists
/// (each of length `n - 1`). Empty for `n = 0`.
pub fn log_generators(
    field: &FunctionField,
    data: &AdaptedData,
    n: usize,
    s_values: &[RatFunc],
    slot_lists: &[Vec<RatFunc>],
) -> Result<Vec<LogGenerator>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let system = GeneratorSystem::from_adapted(field, data)?;
    let mut out = Vec::new();
    for slots in slot_lists {
        if slots.len() != n - 1 {
            return Err(Error::DegreeMismatch {
                expected: n - 1,
                got: slots.len(),
            });
        }
    }
    for spec in system.patterns() {
        for s in s_values {
            let dlog_s = DiffForm::dlog(s, field)?;
            for slots in slot_lists {
                let tail = DiffForm::dlog_wedge(field, slots)?;
                let mut g = LogGenerator {
                    system: system.clone(),
                    spec: spec.clone(),
                    s: s.clone(),
                    slots: slots.clone(),
                    head: DiffForm::zero(field, 1),
                    tail,
                    value: DiffForm::zero(field, n),
                };
                g.head = dlog_s.scale(&g.coefficient());
                g.value = g.head.wedge(&g.tail)?;
                if !g.shape_ok() {
                    return Err(Error::Invalid(
                        "generator does not factor with a logarithmic tail".into(),
                    ));
                }
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// Certificate over E for `restrict(g) = 0`. With `lambda` the restricted
/// `dlog s ^ tail`, `zeta` an antiderivative of `wp(lambda)` and
/// `c = gamma s` where `gamma^(p^t)` is the restricted b-power:
/// `u = sum_{j<t} c^(p^j) lambda`, `eta = gamma s tail - sum_{1<=j<=t} c^(p^j) zeta`.
pub fn vanish_log_certificate(g: &LogGenerator, ext: &ExtensionSpec) -> Result<Certificate> {
    if g.system.field() != ext.source() {
        return Err(Error::FieldMismatch);
    }
    let e = ext.target();
    let n = g.value.degree();
    let target = ext.restrict(&g.value)?;
    if target.is_zero() {
        return Ok(Certificate::zero(e, n));
    }
    let s_e = ext.restrict_element(&g.s)?;
    let tail_e = ext.restrict(&g.tail)?;
    match &g.spec {
        GeneratorSpec::TypeI { index } => {
            let b = ext.restrict_element(&g.system.bases()[*index])?;
            if pth_root(&b).is_none() {
                return Err(Error::UnsupportedExtension(format!(
                    "base {} is not a p-th power over E",
                    index + 1
                )));
            }
            finish(&target, DiffForm::zero(e, n), tail_e.scale(&b.mul(&s_e)))
        }
        GeneratorSpec::TypeII { t, k } => {
            let gamma = deep_root(
                &ext.restrict_element(&power_product(g.system.field(), g.system.bases(), k))?,
                *t,
            )?;
            let c = gamma.mul(&s_e);
            let lambda = DiffForm::dlog(&s_e, e)?.wedge(&tail_e)?;
            let zeta = antiderivative(&lambda.wp()).ok_or_else(|| {
                Error::CertificateFailed(
                    "logarithmic form is not s_p-fixed up to exact forms".into(),
                )
            })?;
            let p = e.p() as u64;
            let mut u = DiffForm::zero(e, n);
            let mut eta = tail_e.scale(&c);
            for j in 0..*t {
                u = u.add(&lambda.scale(&c.pow(p.pow(j))));
                eta = eta.sub(&zeta.scale(&c.pow(p.pow(j + 1))));
            }
            finish(&target, u, eta)
        }
    }
}
