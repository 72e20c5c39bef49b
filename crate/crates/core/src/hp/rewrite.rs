//! Certified rewriting rules: iterated s_p, the product rule for
//! `b^k dv`, and exponent reduction for `b^k (dv)^[p^t]`.

use crate::error::{Error, Result};
use crate::field::{FunctionField, RatFunc};
use crate::forms::DiffForm;

use super::{Certificate, Congruence};

/// `sp^i(v) = v` with `u = sum_{j<i} sp^j(v)`.
pub fn cert_power(v: &DiffForm, i: u32) -> Congruence {
    let mut u = DiffForm::zero(v.field(), v.degree());
    let mut cur = v.clone();
    for _ in 0..i {
        u = u.add(&cur);
        cur = cur.sp();
    }
    Congruence {
        lhs: cur,
        rhs: v.clone(),
        cert: Certificate::from_u(u),
    }
}

fn check_bases(field: &FunctionField, b: &[RatFunc], k: &[u64]) -> Result<()> {
    if b.len() != k.len() {
        return Err(Error::Invalid(format!(
            "{} bases but {} exponents",
            b.len(),
            k.len()
        )));
    }
    for bi in b {
        if !field.owns(bi) {
            return Err(Error::FieldMismatch);
        }
        if bi.is_zero() {
            return Err(Error::Invalid("bases must be nonzero".into()));
        }
    }
    Ok(())
}

pub(crate) fn power_product(field: &FunctionField, b: &[RatFunc], k: &[u64]) -> RatFunc {
    b.iter()
        .zip(k)
        .fold(field.one(), |acc, (bi, &ki)| acc.mul(&bi.pow(ki)))
}

/// `b_1^k_1 ... b_r^k_r dv = sum_j b_j d(k_j b^k / b_j * v)`, all `k_j >= 1`.
/// The difference is `d((1 - sum k_j) b^k v)`.
pub fn cert_product_rule(b: &[RatFunc], k: &[u64], v: &DiffForm) -> Result<Congruence> {
    let field = v.field();
    check_bases(field, b, k)?;
    if let Some(pos) = k.iter().position(|&e| e == 0) {
        return Err(Error::BadExponent(format!(
            "exponent k_{} must be at least 1",
            pos + 1
        )));
    }
    let prod = power_product(field, b, k);
    let lhs = v.d().scale(&prod);
    let mut rhs = DiffForm::zero(field, v.degree() + 1);
    for (bj, &kj) in b.iter().zip(k) {
        let coeff = prod.div(bj)?.scale(kj as i64);
        rhs = rhs.add(&v.scale(&coeff).d().scale(bj));
    }
    let total: i64 = k.iter().map(|&e| (e % field.p() as u64) as i64).sum();
    let eta = v.scale(&prod.scale(1 - total));
    Ok(Congruence {
        lhs,
        rhs,
        cert: Certificate::from_eta(field, eta),
    })
}

/// Outcome of reducing `b^k (dv)^[p^t]` to `b^q (d omega)^[p^t] + sum_i b_i d(omega_i)`.
#[derive(Clone, Debug)]
pub struct ExponentReduction {
    pub q: Vec<u64>,
    pub omega: DiffForm,
    pub omegas: Vec<DiffForm>,
    pub congruence: Congruence,
}

/// Lowers every exponent below `p^t`. Each pass takes some `k_i >= p^t` and
/// uses, with `R` the remaining product, `X = b_i^(k_i - p^t) R`,
/// `Y = b_i^(k_i - 1) R` and `w = sp^t(v)`,
/// `b_i^k_i R (dv)^[p^t] = X (d(b_i v))^[p^t] + b_i d(Y w) - d(b_i Y w)`.
/// This needs `sp(dlog b_i) = dlog b_i`, true for monomials in the
/// variables; other bases are rejected when their exponent must be lowered.
pub fn cert_exponent_reduction(
    b: &[RatFunc],
    k: &[u64],
    t: u32,
    v: &DiffForm,
) -> Result<ExponentReduction> {
    let field = v.field();
    check_bases(field, b, k)?;
    if t == 0 {
        return Err(Error::BadExponent("t must be at least 1".into()));
    }
    let pt = (field.p() as u64).pow(t);
    let n = v.degree() + 1;
    let mut q = k.to_vec();
    let mut omega = v.clone();
    let mut omegas = vec![DiffForm::zero(field, n - 1); b.len()];
    let mut eta = DiffForm::zero(field, n - 1);
    for i in 0..b.len() {
        if q[i] < pt {
            continue;
        }
        let dlog = DiffForm::dlog(&b[i], field)?;
        if dlog.sp() != dlog {
            return Err(Error::Invalid(format!(
                "base {} is not a monomial in the p-basis",
                i + 1
            )));
        }
        while q[i] >= pt {
            let rest: RatFunc = b
                .iter()
                .zip(&q)
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(field.one(), |acc, (_, (bj, &kj))| acc.mul(&bj.pow(kj)));
            let y = b[i].pow(q[i] - 1).mul(&rest);
            let w = omega.sp_iter(t);
            let yw = w.scale(&y);
            eta = eta.sub(&yw.scale(&b[i]));
            omegas[i] = omegas[i].add(&yw);
            omega = omega.scale(&b[i]);
            q[i] -= pt;
        }
    }
    let lhs = v.d().sp_iter(t).scale(&power_product(field, b, k));
    let mut rhs = omega.d().sp_iter(t).scale(&power_product(field, b, &q));
    for (bi, wi) in b.iter().zip(&omegas) {
        rhs = rhs.add(&wi.d().scale(bi));
    }
    let cert = Certificate::from_eta(field, eta);
    Ok(ExponentReduction {
        q,
        omega,
        omegas,
        congruence: Congruence { lhs, rhs, cert },
    })
}
