//! Generators of the quadratic and bilinear Witt kernels of an adapted
//! extension in characteristic 2, with hyperbolicity and metabolicity
//! witnesses over E.

use crate::error::{Error, Result};
use crate::extensions::{AdaptedData, ExtensionSpec};
use crate::field::{pth_root, subfield_membership, FunctionField, RatFunc};
use crate::hp::{power_product, GeneratorSpec, GeneratorSystem};

use super::matrix::{self, Matrix};
use super::{
    is_isometry, lagrangian_check, metabolic_check, pfister_quad, require_char2, split_lagrangian,
    BilForm, IsometryCert, LagrangianCert, MetabolicCert, PfisterSymbol, QuadForm,
};

/// `<<s, a_2, ..., a_n, c]]` with `c = s b_j` (type (i)) or
/// `c = s^(2^t) b^k` (type (ii)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadGenerator {
    pub system: GeneratorSystem,
    pub spec: GeneratorSpec,
    pub s: RatFunc,
    pub symbol: PfisterSymbol,
    pub form: QuadForm,
}

impl QuadGenerator {
    pub fn is_trivial(&self) -> bool {
        self.spec.is_trivial()
    }

    /// `<c_1, ..., c_k>_b (x) form`.
    pub fn scaled(&self, cs: &[RatFunc]) -> Result<QuadForm> {
        self.form.scale_diagonal(cs)
    }
}

fn tail_for(system: &GeneratorSystem, spec: &GeneratorSpec, s: &RatFunc) -> RatFunc {
    match spec {
        GeneratorSpec::TypeI { index } => s.mul(&system.bases()[*index]),
        GeneratorSpec::TypeII { t, k } => {
            s.pow(1u64 << t)
                .mul(&power_product(system.field(), system.bases(), k))
        }
    }
}

/// One generator per pattern, `s` value and slot list (the extra slots
/// `a_2, ..., a_n`; pass `&[vec![]]` for the 2-fold forms).
pub fn quadratic_kernel_generators(
    field: &FunctionField,
    data: &AdaptedData,
    s_values: &[RatFunc],
    slot_lists: &[Vec<RatFunc>],
) -> Result<Vec<QuadGenerator>> {
    require_char2(field)?;
    let system = GeneratorSystem::from_adapted(field, data)?;
    if s_values.iter().any(RatFunc::is_zero) {
        return Err(Error::Invalid("s must be nonzero".into()));
    }
    let mut out = Vec::new();
    for spec in system.patterns() {
        for s in s_values {
            let c = tail_for(&system, &spec, s);
            for extra in slot_lists {
                let slots = std::iter::once(s.clone())
                    .chain(extra.iter().cloned())
                    .collect();
                let symbol = PfisterSymbol::new(field, slots, Some(c.clone()))?;
                let form = pfister_quad(&symbol)?;
                out.push(QuadGenerator {
                    system: system.clone(),
                    spec: spec.clone(),
                    s: s.clone(),
                    symbol,
                    form,
                });
            }
        }
    }
    Ok(out)
}

/// `forms[i + 1](v) = forms[i](steps[i] v)`, ending in a form with the given
/// Lagrangian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicChain {
    pub forms: Vec<QuadForm>,
    pub steps: Vec<IsometryCert>,
    pub lagrangian: LagrangianCert,
}

impl HyperbolicChain {
    pub fn verify(&self) -> bool {
        let Some(last) = self.forms.last() else {
            return false;
        };
        self.forms.len() == self.steps.len() + 1
            && self
                .forms
                .iter()
                .all(|q| q.dim() == last.dim() && q.is_nonsingular())
            && self
                .steps
                .iter()
                .enumerate()
                .all(|(i, t)| is_isometry(&self.forms[i], &self.forms[i + 1], t))
            && lagrangian_check(last, &self.lagrangian)
    }

    /// Chain for `q` over E: verifies and starts at `restrict(q)`.
    pub fn certifies(&self, q: &QuadForm, ext: &ExtensionSpec) -> bool {
        self.verify()
            && q.restrict(ext)
                .is_ok_and(|r| self.forms.first() == Some(&r))
    }

    /// The same chain for `<c_1, ..., c_k>_b (x) forms[0]`.
    pub fn scale_diagonal(&self, cs: &[RatFunc]) -> Result<Self> {
        let forms = self
            .forms
            .iter()
            .map(|q| q.scale_diagonal(cs))
            .collect::<Result<Vec<_>>>()?;
        let f = forms[0].field().clone();
        let steps = self
            .steps
            .iter()
            .map(|s| IsometryCert {
                t: cs.iter().fold(Vec::new(), |acc: Matrix, _| {
                    matrix::block_diag(&f, &acc, &s.t)
                }),
            })
            .collect();
        let n = self.forms[0].dim();
        let mut basis = Vec::new();
        for blk in 0..cs.len() {
            for v in &self.lagrangian.basis {
                let mut w = vec![f.zero(); n * cs.len()];
                w[blk * n..(blk + 1) * n].clone_from_slice(v);
                basis.push(w);
            }
        }
        Ok(HyperbolicChain {
            forms,
            steps,
            lagrangian: LagrangianCert { basis },
        })
    }
}

/// `c` written as `a^(2^t)` with `a / s` a square `theta^2`.
fn split_tail(s: &RatFunc, c: &RatFunc) -> Option<(u32, RatFunc, RatFunc)> {
    let s_inv = s.inv().ok()?;
    let mut a = c.clone();
    for t in 0..64 {
        if let Some(theta) = pth_root(&a.mul(&s_inv)) {
            return Some((t, a, theta));
        }
        a = pth_root(&a)?;
    }
    None
}

/// `[1, a^(2^t)] _|_ s [1, a^(2^t)]` to `[1, a] _|_ s [1, a]` (when `t > 0`)
/// to `[theta^2, s] _|_ [s, theta^2]`, which has the diagonal Lagrangian.
fn two_fold_chain(field: &FunctionField, s: &RatFunc, c: &RatFunc) -> Option<HyperbolicChain> {
    if s.is_zero() || c.is_zero() {
        return None;
    }
    let (t, a, theta) = split_tail(s, c)?;
    let (zero, one) = (field.zero(), field.one());
    let two_fold = |c: &RatFunc| {
        let b = QuadForm::binary(field, one.clone(), c.clone());
        b.orth_sum(&b.scale(s)).expect("same field")
    };
    let mut forms = vec![two_fold(c)];
    let mut steps = Vec::new();
    if t > 0 {
        let mut w = zero.clone();
        let mut pw = a.clone();
        for _ in 0..t {
            w = w.add(&pw);
            pw = pw.pow(2);
        }
        let block = vec![vec![one.clone(), w], vec![zero.clone(), one.clone()]];
        steps.push(IsometryCert {
            t: matrix::block_diag(field, &block, &block),
        });
        forms.push(two_fold(&a));
    }
    let theta_sq = theta.pow(2);
    let scaling = [theta.clone(), theta.inv().ok()?, one.clone(), s.inv().ok()?];
    steps.push(IsometryCert {
        t: matrix::diagonal(field, &scaling),
    });
    forms.push(
        QuadForm::binary(field, theta_sq.clone(), s.clone())
            .orth_sum(&QuadForm::binary(field, s.clone(), theta_sq))
            .ok()?,
    );
    let lagrangian = LagrangianCert {
        basis: vec![
            vec![one.clone(), zero.clone(), zero.clone(), one.clone()],
            vec![zero.clone(), one.clone(), one, zero],
        ],
    };
    Some(HyperbolicChain {
        forms,
        steps,
        lagrangian,
    })
}

/// Chain for a form over E that is literally a Pfister form
/// `<<s, a_2, ..., a_n, c]]` or an orthogonal sum of split binary blocks.
pub fn hyperbolic_chain(q: &QuadForm) -> Result<HyperbolicChain> {
    require_char2(q.field())?;
    if let Some(lagrangian) = split_lagrangian(q) {
        return Ok(HyperbolicChain {
            forms: vec![q.clone()],
            steps: Vec::new(),
            lagrangian,
        });
    }
    let sym = PfisterSymbol::recognize(q).ok_or_else(|| {
        Error::UnsupportedExtension("form is neither split nor in Pfister layout".into())
    })?;
    let field = q.field();
    let (s, rest) = sym
        .slots()
        .split_first()
        .ok_or_else(|| Error::UnsupportedExtension("1-fold form with no split block".into()))?;
    let c = sym.tail().expect("recognized with tail");
    let base = two_fold_chain(field, s, c).ok_or_else(|| {
        Error::UnsupportedExtension("tail is not of the form (s theta^2)^(2^t) over E".into())
    })?;
    let mut diag = vec![field.one()];
    for a in rest {
        let scaled: Vec<RatFunc> = diag.iter().map(|d| d.mul(a)).collect();
        diag.extend(scaled);
    }
    let chain = if rest.is_empty() {
        base
    } else {
        base.scale_diagonal(&diag)?
    };
    debug_assert_eq!(chain.forms[0], *q);
    Ok(chain)
}

/// Verified hyperbolicity chain for `restrict(q)`.
pub fn hyperbolic_cert(q: &QuadForm, ext: &ExtensionSpec) -> Result<HyperbolicChain> {
    let chain = hyperbolic_chain(&q.restrict(ext)?)?;
    if !chain.certifies(q, ext) {
        return Err(Error::CertificateFailed(
            "hyperbolicity chain did not verify".into(),
        ));
    }
    Ok(chain)
}

/// `<1, x>_b` for `x` in the nonzero part of `F^2(b_1, ..., b_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilGenerator {
    pub x: RatFunc,
    pub form: BilForm,
}

pub fn bilinear_kernel_generators(
    field: &FunctionField,
    data: &AdaptedData,
    xs: &[RatFunc],
) -> Result<Vec<BilGenerator>> {
    require_char2(field)?;
    let indices = data.indices();
    let mut out = Vec::new();
    for x in xs {
        if !field.owns(x) {
            return Err(Error::FieldMismatch);
        }
        if x.is_zero() || !subfield_membership(x, &indices) {
            return Err(Error::NotInSubfield(crate::text::rat_infix(x, field)));
        }
        out.push(BilGenerator {
            x: x.clone(),
            form: BilForm::diagonal(field, &[field.one(), x.clone()]),
        });
    }
    Ok(out)
}

/// Isotropic vector `(sqrt(x), 1)` of `<1, x>_b` over E.
pub fn metabolic_cert(g: &BilGenerator, ext: &ExtensionSpec) -> Result<MetabolicCert> {
    let x = ext.restrict_element(&g.x)?;
    let y = pth_root(&x)
        .ok_or_else(|| Error::UnsupportedExtension("x is not a square over E".into()))?;
    let cert = MetabolicCert {
        vector: vec![y, ext.target().one()],
    };
    if !metabolic_check(&g.form.restrict(ext)?, &cert) {
        return Err(Error::CertificateFailed(
            "isotropic vector did not verify".into(),
        ));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::kato_f;

    #[test]
    fn generator_patterns() {
        let f = FunctionField::new(2, &["x", "y"]).unwrap();
        let (x, y) = (f.var(0), f.var(1));
        let data = AdaptedData::new(vec![(0, 2)]).unwrap();
        let gs =
            quadratic_kernel_generators(&f, &data, std::slice::from_ref(&y), &[vec![]]).unwrap();
        let tails: Vec<RatFunc> = gs
            .iter()
            .filter(|g| !g.is_trivial())
            .map(|g| g.symbol.tail().unwrap().clone())
            .collect();
        assert!(tails.contains(&y.mul(&x)));
        assert!(tails.contains(&y.pow(2).mul(&x)));
        let one = AdaptedData::new(vec![(0, 1)]).unwrap();
        let gs =
            quadratic_kernel_generators(&f, &one, std::slice::from_ref(&y), &[vec![]]).unwrap();
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].symbol.tail(), Some(&y.mul(&x)));
        let both = AdaptedData::new(vec![(0, 1), (1, 1)]).unwrap();
        let gs = quadratic_kernel_generators(&f, &both, &[x.add(&y)], &[vec![]]).unwrap();
        assert!(gs
            .iter()
            .all(|g| matches!(g.spec, GeneratorSpec::TypeI { .. })));
        assert_eq!(gs.len(), 2);
    }

    #[test]
    fn chains_for_worked_example() {
        let f = FunctionField::new(2, &["x", "y"]).unwrap();
        let (x, y) = (f.var(0), f.var(1));
        let data = AdaptedData::new(vec![(0, 2)]).unwrap();
        let ext = ExtensionSpec::build_adapted(&f, &data).unwrap();
        let u = ext.target().var(0);
        let s = y.clone();
        let sym = PfisterSymbol::new(&f, vec![s.clone()], Some(s.pow(2).mul(&x))).unwrap();
        let chain = hyperbolic_cert(&pfister_quad(&sym).unwrap(), &ext).unwrap();
        assert_eq!(chain.steps.len(), 2);
        let sy = ext.target().var(1);
        let w = sy.mul(&u.pow(2));
        assert_eq!(chain.steps[0].t[0][1], w);
        assert_eq!(chain.steps[1].t[0][0], u);

        let sym = PfisterSymbol::new(&f, vec![s.clone()], Some(s.mul(&x))).unwrap();
        let one = AdaptedData::new(vec![(0, 1)]).unwrap();
        let ext1 = ExtensionSpec::build_adapted(&f, &one).unwrap();
        let chain = hyperbolic_cert(&pfister_quad(&sym).unwrap(), &ext1).unwrap();
        assert_eq!(chain.steps.len(), 1);

        let h = QuadForm::hyperbolic_plane(&f);
        let chain = hyperbolic_cert(&h.orth_sum(&h).unwrap(), &ext1).unwrap();
        assert!(chain.steps.is_empty());
    }

    #[test]
    fn scaled_and_multi_slot_chains() {
        let f = FunctionField::new(2, &["x", "y", "z"]).unwrap();
        let (x, y, z) = (f.var(0), f.var(1), f.var(2));
        let data = AdaptedData::new(vec![(0, 2)]).unwrap();
        let ext = ExtensionSpec::build_adapted(&f, &data).unwrap();
        let gs =
            quadratic_kernel_generators(&f, &data, std::slice::from_ref(&y), &[vec![z.clone()]])
                .unwrap();
        for g in &gs {
            assert_eq!(g.form.dim(), 8);
            let chain = hyperbolic_cert(&g.form, &ext).unwrap();
            assert!(chain.certifies(&g.form, &ext));
            let cs = [f.one(), z.add(&x)];
            let scaled = g.scaled(&cs).unwrap();
            let cs_e: Vec<RatFunc> = cs
                .iter()
                .map(|c| ext.restrict_element(c).unwrap())
                .collect();
            assert!(chain
                .scale_diagonal(&cs_e)
                .unwrap()
                .certifies(&scaled, &ext));
            assert_eq!(kato_f(&g.symbol).unwrap().degree(), 2);
        }
    }

    #[test]
    fn bilinear_generators() {
        let f = FunctionField::new(2, &["x", "y", "z"]).unwrap();
        let (x, y, z) = (f.var(0), f.var(1), f.var(2));
        let data = AdaptedData::new(vec![(0, 1)]).unwrap();
        let ext = ExtensionSpec::build_adapted(&f, &data).unwrap();
        let gs =
            bilinear_kernel_generators(&f, &data, &[x.clone(), f.one(), x.mul(&y.pow(2))]).unwrap();
        let c = metabolic_cert(&gs[0], &ext).unwrap();
        assert_eq!(c.vector, vec![ext.target().var(0), ext.target().one()]);
        assert_eq!(
            metabolic_cert(&gs[1], &ext).unwrap().vector,
            vec![ext.target().one(), ext.target().one()]
        );
        assert!(metabolic_cert(&gs[2], &ext).is_ok());
        assert!(matches!(
            bilinear_kernel_generators(&f, &data, &[z]),
            Err(Error::NotInSubfield(_))
        ));
    }
}
