//! The generator system of the kernel of `H_p^(n+1)(F) -> H_p^(n+1)(E)` for
//! `E = F(b_1^(1/p^m_1), ..., b_r^(1/p^m_r))`:
//! (i) `b_i dz`, and (ii) `b_1^k_1 ... b_r^k_r (dv)^[p^t]` for `1 <= t < max m_i`,
//! `0 <= k_i < p^t`, `max(1, p^(t - m_i + 1)) | k_i`.

use crate::error::{Error, Result};
use crate::extensions::AdaptedData;
use crate::field::{pth_root, FunctionField, RatFunc};
use crate::forms::DiffForm;

use super::rewrite::{cert_exponent_reduction, cert_power, cert_product_rule, power_product};
use super::{Certificate, Congruence};

/// Bases `b_i` with root exponents `m_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSystem {
    field: FunctionField,
    bases: Vec<RatFunc>,
    exps: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorSpec {
    /// `b_index dz`.
    TypeI { index: usize },
    /// `b^k (dv)^[p^t]`.
    TypeII { t: u32, k: Vec<u64> },
}

impl GeneratorSpec {
    /// All exponents zero: the form is `(dv)^[p^t]`, which is `0` in `H_p`.
    pub fn is_trivial(&self) -> bool {
        matches!(self, GeneratorSpec::TypeII { k, .. } if k.iter().all(|&e| e == 0))
    }

    /// Every exponent divisible by `p`.
    pub fn is_divisible(&self, p: u64) -> bool {
        matches!(self, GeneratorSpec::TypeII { k, .. } if k.iter().all(|&e| e % p == 0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorInstance {
    pub system: GeneratorSystem,
    pub spec: GeneratorSpec,
    /// The instantiating `(n-1)`-form (`z` or `v`).
    pub inst: DiffForm,
    pub value: DiffForm,
}

impl GeneratorInstance {
    pub fn is_trivial(&self) -> bool {
        self.spec.is_trivial()
    }

    pub fn degree(&self) -> usize {
        self.value.degree()
    }

    /// Recompute the value from spec and instance.
    pub fn value_matches(&self) -> bool {
        self.system
            .value_of(&self.spec, &self.inst)
            .is_ok_and(|v| v == self.value)
    }

    /// For a divisible type-(ii) generator with `t >= 2`, the generator with
    /// `(t - 1, k / p)` and the congruence `self = that` from one s_p step.
    pub fn reduce_divisible(&self) -> Option<(GeneratorInstance, Congruence)> {
        let p = self.system.field.p() as u64;
        match &self.spec {
            GeneratorSpec::TypeII { t, k } if *t >= 2 && self.spec.is_divisible(p) => {
                let spec = GeneratorSpec::TypeII {
                    t: t - 1,
                    k: k.iter().map(|e| e / p).collect(),
                };
                let smaller = self.system.instance(spec, &self.inst).ok()?;
                let c = cert_power(&smaller.value, 1);
                Some((smaller, c))
            }
            _ => None,
        }
    }

    /// For a trivial generator `(dv)^[p^t]`, the certificate that it is `0`.
    pub fn trivial_certificate(&self) -> Option<Congruence> {
        match &self.spec {
            GeneratorSpec::TypeII { t, .. } if self.is_trivial() => {
                let dv = self.inst.d();
                let step = cert_power(&dv, *t);
                let exact = Certificate::from_eta(self.value.field(), self.inst.clone());
                let cert = step.cert.plus(&exact).ok()?;
                Some(Congruence {
                    lhs: self.value.clone(),
                    rhs: DiffForm::zero(self.value.field(), self.degree()),
                    cert,
                })
            }
            _ => None,
        }
    }
}

/// How to re-express a generator in a modified system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RebaseMove {
    /// New position `j` holds old pair `perm[j]`.
    Permute(Vec<usize>),
    /// `(b_i, m_i) -> (b_i^p, m_i + 1)`.
    Raise(usize),
    /// `(b_i, m_i) -> (b_i^(1/p), m_i - 1)`; needs `b_i` a p-th power and `m_i >= 2`.
    Lower(usize),
}

/// `g = sum of terms` in `H_p`, with terms generators of `system`.
#[derive(Clone, Debug)]
pub struct Rebase {
    pub system: GeneratorSystem,
    pub terms: Vec<GeneratorInstance>,
    pub congruence: Congruence,
}

impl Rebase {
    pub fn verify(&self) -> bool {
        let sum = self.terms.iter().fold(
            DiffForm::zero(self.congruence.rhs.field(), self.congruence.rhs.degree()),
            |acc, g| acc.add(&g.value),
        );
        sum == self.congruence.rhs
            && self.congruence.verify()
            && self.terms.iter().all(|g| {
                g.system == self.system && self.system.admissible(&g.spec) && g.value_matches()
            })
    }
}

impl GeneratorSystem {
    pub fn new(field: &FunctionField, pairs: Vec<(RatFunc, u32)>) -> Result<Self> {
        let mut bases = Vec::new();
        let mut exps = Vec::new();
        for (b, m) in pairs {
            if !field.owns(&b) {
                return Err(Error::FieldMismatch);
            }
            if b.is_zero() {
                return Err(Error::Invalid("bases must be nonzero".into()));
            }
            if m == 0 {
                return Err(Error::BadExponent(
                    "root exponents must be at least 1".into(),
                ));
            }
            bases.push(b);
            exps.push(m);
        }
        Ok(GeneratorSystem {
            field: field.clone(),
            bases,
            exps,
        })
    }

    /// The distinguished variables of an adapted extension, in listed order.
    pub fn from_adapted(field: &FunctionField, data: &AdaptedData) -> Result<Self> {
        let pairs = data
            .pairs()
            .iter()
            .map(|&(i, m)| {
                if i >= field.nvars() {
                    Err(Error::VariableOutOfRange {
                        index: i + 1,
                        nvars: field.nvars(),
                    })
                } else {
                    Ok((field.var(i), m))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, pairs)
    }

    pub fn field(&self) -> &FunctionField {
        &self.field
    }

    pub fn bases(&self) -> &[RatFunc] {
        &self.bases
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn max_exponent(&self) -> u32 {
        self.exps.iter().copied().max().unwrap_or(0)
    }

    /// `max(1, p^(t - m_i + 1))`.
    pub fn step(&self, t: u32, i: usize) -> u64 {
        let p = self.field.p() as u64;
        if t + 1 > self.exps[i] {
            p.pow(t + 1 - self.exps[i])
        } else {
            1
        }
    }

    pub fn admissible(&self, spec: &GeneratorSpec) -> bool {
        match spec {
            GeneratorSpec::TypeI { index } => *index < self.len(),
            GeneratorSpec::TypeII { t, k } => {
                let pt = (self.field.p() as u64).pow(*t);
                *t >= 1
                    && *t < self.max_exponent()
                    && k.len() == self.len()
                    && k.iter()
                        .enumerate()
                        .all(|(i, &e)| e < pt && e % self.step(*t, i) == 0)
            }
        }
    }

    /// All admissible patterns: type (i) first, then type (ii) by `t` and `k`.
    pub fn patterns(&self) -> Vec<GeneratorSpec> {
        let mut out: Vec<GeneratorSpec> = (0..self.len())
            .map(|index| GeneratorSpec::TypeI { index })
            .collect();
        let p = self.field.p() as u64;
        for t in 1..self.max_exponent() {
            let pt = p.pow(t);
            let choices: Vec<Vec<u64>> = (0..self.len())
                .map(|i| (0..pt).step_by(self.step(t, i) as usize).collect())
                .collect();
            let mut k = vec![0u64; self.len()];
            cartesian(&choices, 0, &mut k, &mut |k| {
                out.push(GeneratorSpec::TypeII { t, k: k.to_vec() })
            });
        }
        out
    }

    fn value_of(&self, spec: &GeneratorSpec, inst: &DiffForm) -> Result<DiffForm> {
        match spec {
            GeneratorSpec::TypeI { index } => Ok(inst.d().scale(&self.bases[*index])),
            GeneratorSpec::TypeII { t, k } => {
                Ok(inst
                    .d()
                    .sp_iter(*t)
                    .scale(&power_product(&self.field, &self.bases, k)))
            }
        }
    }

    pub fn instance(&self, spec: GeneratorSpec, inst: &DiffForm) -> Result<GeneratorInstance> {
        if inst.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if !self.admissible(&spec) {
            return Err(Error::Invalid(format!(
                "pattern {spec:?} is not admissible"
            )));
        }
        let value = self.value_of(&spec, inst)?;
        Ok(GeneratorInstance {
            system: self.clone(),
            spec,
            inst: inst.clone(),
            value,
        })
    }

    fn with_pair(&self, i: usize, b: RatFunc, m: u32) -> GeneratorSystem {
        let mut s = self.clone();
        s.bases[i] = b;
        s.exps[i] = m;
        s
    }

    fn check_instance(&self, g: &GeneratorInstance) -> Result<()> {
        if g.system != *self {
            return Err(Error::Invalid(
                "generator belongs to a different system".into(),
            ));
        }
        Ok(())
    }

    /// Re-express `g` (a generator of `self`) through the generators of the
    /// moved system, with a certificate.
    pub fn rebase(&self, g: &GeneratorInstance, mv: &RebaseMove) -> Result<Rebase> {
        self.check_instance(g)?;
        let field = &self.field;
        let p = field.p() as u64;
        let n = g.degree();
        let same = |system: &GeneratorSystem, spec: GeneratorSpec| -> Result<Rebase> {
            let term = system.instance(spec, &g.inst)?;
            let congruence = Congruence {
                lhs: g.value.clone(),
                rhs: term.value.clone(),
                cert: Certificate::zero(field, n),
            };
            Ok(Rebase {
                system: system.clone(),
                terms: vec![term],
                congruence,
            })
        };
        let via_sp = |system: &GeneratorSystem, spec: GeneratorSpec| -> Result<Rebase> {
            let term = system.instance(spec, &g.inst)?;
            let congruence = cert_power(&g.value, 1).reversed();
            debug_assert_eq!(congruence.rhs, term.value);
            Ok(Rebase {
                system: system.clone(),
                terms: vec![term],
                congruence,
            })
        };
        match mv {
            RebaseMove::Permute(perm) => {
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                if sorted != (0..self.len()).collect::<Vec<_>>() {
                    return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
                }
                let system = GeneratorSystem {
                    field: field.clone(),
                    bases: perm.iter().map(|&j| self.bases[j].clone()).collect(),
                    exps: perm.iter().map(|&j| self.exps[j]).collect(),
                };
                let spec = match &g.spec {
                    GeneratorSpec::TypeI { index } => GeneratorSpec::TypeI {
                        index: perm.iter().position(|j| j == index).expect("permutation"),
                    },
                    GeneratorSpec::TypeII { t, k } => GeneratorSpec::TypeII {
                        t: *t,
                        k: perm.iter().map(|&j| k[j]).collect(),
                    },
                };
                same(&system, spec)
            }
            RebaseMove::Raise(i) => {
                let i = *i;
                self.check_index(i)?;
                let system = self.with_pair(i, self.bases[i].pow(p), self.exps[i] + 1);
                match &g.spec {
                    GeneratorSpec::TypeI { index } if *index != i => same(&system, g.spec.clone()),
                    GeneratorSpec::TypeI { .. } => {
                        let mut k = vec![0; self.len()];
                        k[i] = 1;
                        via_sp(&system, GeneratorSpec::TypeII { t: 1, k })
                    }
                    GeneratorSpec::TypeII { t, k } if k[i] % p == 0 => {
                        let mut k2 = k.clone();
                        k2[i] /= p;
                        same(&system, GeneratorSpec::TypeII { t: *t, k: k2 })
                    }
                    GeneratorSpec::TypeII { t, k } => {
                        let k2 = k
                            .iter()
                            .enumerate()
                            .map(|(j, &e)| if j == i { e } else { p * e })
                            .collect();
                        via_sp(&system, GeneratorSpec::TypeII { t: t + 1, k: k2 })
                    }
                }
            }
            RebaseMove::Lower(i) => {
                let i = *i;
                self.check_index(i)?;
                if self.exps[i] < 2 {
                    return Err(Error::BadExponent(format!(
                        "cannot lower root exponent {} of base {}",
                        self.exps[i],
                        i + 1
                    )));
                }
                let root = pth_root(&self.bases[i])
                    .ok_or_else(|| Error::Invalid(format!("base {} is not a p-th power", i + 1)))?;
                let system = self.with_pair(i, root, self.exps[i] - 1);
                self.lower(g, i, system)
            }
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            return Err(Error::Invalid(format!("no base with index {}", i + 1)));
        }
        Ok(())
    }

    fn lower(&self, g: &GeneratorInstance, i: usize, system: GeneratorSystem) -> Result<Rebase> {
        let field = &self.field;
        let p = field.p() as u64;
        let n = g.degree();
        let zero = DiffForm::zero(field, n);
        match &g.spec {
            GeneratorSpec::TypeI { index } if *index != i => {
                let term = system.instance(g.spec.clone(), &g.inst)?;
                let congruence = Congruence {
                    lhs: g.value.clone(),
                    rhs: term.value.clone(),
                    cert: Certificate::zero(field, n),
                };
                Ok(Rebase {
                    system,
                    terms: vec![term],
                    congruence,
                })
            }
            GeneratorSpec::TypeI { .. } => {
                // b^p dv = d(b^p v)
                let cert = Certificate::from_eta(field, g.inst.scale(&self.bases[i]));
                Ok(Rebase {
                    system,
                    terms: vec![],
                    congruence: Congruence {
                        lhs: g.value.clone(),
                        rhs: zero,
                        cert,
                    },
                })
            }
            GeneratorSpec::TypeII { t, k } => {
                let m = system.max_exponent();
                let mut lowered: Vec<u64> = k.clone();
                lowered[i] = p * k[i];
                if *t >= m {
                    // every other exponent is divisible by p: pull one s_p out first
                    let ell: Vec<u64> = lowered.iter().map(|e| e / p).collect();
                    let h =
                        g.inst
                            .d()
                            .sp_iter(t - 1)
                            .scale(&power_product(field, &system.bases, &ell));
                    let first = cert_power(&h, 1);
                    debug_assert_eq!(first.lhs, g.value);
                    let (terms, second) = system.reduce(&ell, t - 1, &g.inst)?;
                    Ok(Rebase {
                        system,
                        terms,
                        congruence: first.then(&second)?,
                    })
                } else {
                    let (terms, c) = system.reduce(&lowered, *t, &g.inst)?;
                    Ok(Rebase {
                        system,
                        terms,
                        congruence: c,
                    })
                }
            }
        }
    }

    /// Write `b^k (dv)^[p^t]` (`dv` when `t = 0`) as a certified sum of generators.
    fn reduce(
        &self,
        k: &[u64],
        t: u32,
        v: &DiffForm,
    ) -> Result<(Vec<GeneratorInstance>, Congruence)> {
        let field = &self.field;
        let n = v.degree() + 1;
        let mut terms = Vec::new();
        if t == 0 {
            let lhs = v.d().scale(&power_product(field, &self.bases, k));
            let used: Vec<usize> = (0..k.len()).filter(|&j| k[j] > 0).collect();
            if used.is_empty() {
                let cert = Certificate::from_eta(field, v.clone());
                return Ok((
                    terms,
                    Congruence {
                        lhs,
                        rhs: DiffForm::zero(field, n),
                        cert,
                    },
                ));
            }
            let b: Vec<RatFunc> = used.iter().map(|&j| self.bases[j].clone()).collect();
            let ks: Vec<u64> = used.iter().map(|&j| k[j]).collect();
            let c = cert_product_rule(&b, &ks, v)?;
            let prod = power_product(field, &b, &ks);
            for (pos, &j) in used.iter().enumerate() {
                let z = v.scale(&prod.div(&b[pos])?.scale(ks[pos] as i64));
                terms.push(self.instance(GeneratorSpec::TypeI { index: j }, &z)?);
            }
            return Ok((terms, c));
        }
        let red = cert_exponent_reduction(&self.bases, k, t, v)?;
        terms.push(self.instance(
            GeneratorSpec::TypeII {
                t,
                k: red.q.clone(),
            },
            &red.omega,
        )?);
        for (j, w) in red.omegas.iter().enumerate() {
            if !w.is_zero() {
                terms.push(self.instance(GeneratorSpec::TypeI { index: j }, w)?);
            }
        }
        Ok((terms, red.congruence))
    }
}

fn cartesian(choices: &[Vec<u64>], pos: usize, cur: &mut Vec<u64>, emit: &mut impl FnMut(&[u64])) {
    if pos == choices.len() {
        emit(cur);
        return;
    }
    for &c in &choices[pos] {
        cur[pos] = c;
        cartesian(choices, pos + 1, cur, emit);
    }
}

/// Every admissible pattern for the distinguished variables of `data`,
/// crossed with every instantiating `(n-1)`-form. Empty for `n = 0`.
/// Trivial type-(ii) patterns (all `k = 0`) are included; see
/// [`GeneratorInstance::is_trivial`].
pub fn kf_generators(
    field: &FunctionField,
    data: &AdaptedData,
    n: usize,
    inst: &[DiffForm],
) -> Result<Vec<GeneratorInstance>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let system = GeneratorSystem::from_adapted(field, data)?;
    for v in inst {
        if v.degree() != n - 1 {
            return Err(Error::DegreeMismatch {
                expected: n - 1,
                got: v.degree(),
            });
        }
    }
    let mut out = Vec::new();
    for spec in system.patterns() {
        for v in inst {
            out.push(system.instance(spec.clone(), v)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nontrivial(gs: &[GeneratorInstance]) -> Vec<&GeneratorSpec> {
        gs.iter()
            .filter(|g| !g.is_trivial())
            .map(|g| &g.spec)
            .collect()
    }

    #[test]
    fn enumeration_examples() {
        let f = FunctionField::new(2, &["x", "y"]).unwrap();
        let (x, y) = (f.var(0), f.var(1));
        let v = DiffForm::scalar(&f, y.clone());
        let gs = kf_generators(
            &f,
            &AdaptedData::new(vec![(0, 2)]).unwrap(),
            1,
            std::slice::from_ref(&v),
        )
        .unwrap();
        assert_eq!(
            nontrivial(&gs),
            vec![
                &GeneratorSpec::TypeI { index: 0 },
                &GeneratorSpec::TypeII { t: 1, k: vec![1] }
            ]
        );
        assert_eq!(gs[0].value, DiffForm::dx(&f, 1).scale(&x));
        let typeii = gs
            .iter()
            .find(|g| g.spec == GeneratorSpec::TypeII { t: 1, k: vec![1] })
            .unwrap();
        assert_eq!(typeii.value, DiffForm::dx(&f, 1).sp().scale(&x));
        assert!(gs.iter().any(|g| g.is_trivial()));

        let gs = kf_generators(
            &f,
            &AdaptedData::new(vec![(0, 1)]).unwrap(),
            1,
            std::slice::from_ref(&v),
        )
        .unwrap();
        assert!(gs
            .iter()
            .all(|g| matches!(g.spec, GeneratorSpec::TypeI { .. })));

        let g3 = FunctionField::new(3, &["x", "y"]).unwrap();
        let v3 = DiffForm::scalar(&g3, g3.var(1));
        let gs = kf_generators(&g3, &AdaptedData::new(vec![(0, 2)]).unwrap(), 1, &[v3]).unwrap();
        let ks: Vec<u64> = gs
            .iter()
            .filter(|g| !g.is_trivial())
            .filter_map(|g| match &g.spec {
                GeneratorSpec::TypeII { t: 1, k } => Some(k[0]),
                _ => None,
            })
            .collect();
        assert_eq!(ks, vec![1, 2]);
        assert!(
            kf_generators(&f, &AdaptedData::new(vec![(0, 2)]).unwrap(), 0, &[])
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn divisibility_constraints() {
        let f = FunctionField::new(2, &["x", "y"]).unwrap();
        let s = GeneratorSystem::from_adapted(&f, &AdaptedData::new(vec![(0, 3), (1, 1)]).unwrap())
            .unwrap();
        for spec in s.patterns() {
            if let GeneratorSpec::TypeII { t, k } = &spec {
                assert!(k[0] < 1 << t);
                assert_eq!(k[1] % (1 << t), 0);
            }
        }
        assert_eq!(s.patterns().len(), 2 + 2 + 4);
    }

    #[test]
    fn rebase_examples() {
        let f = FunctionField::new(2, &["x", "y", "z"]).unwrap();
        let (x, y) = (f.var(0), f.var(1));
        let v = DiffForm::scalar(&f, f.var(2));
        let s = GeneratorSystem::new(&f, vec![(x.clone(), 1), (y.clone(), 1)]).unwrap();
        let g = s.instance(GeneratorSpec::TypeI { index: 0 }, &v).unwrap();
        let r = s.rebase(&g, &RebaseMove::Permute(vec![1, 0])).unwrap();
        assert_eq!(r.terms[0].value, g.value);
        assert!(r.congruence.cert.is_zero());
        assert!(r.verify());

        let raised = GeneratorSystem::new(&f, vec![(x.pow(2), 2)]).unwrap();
        let g = raised
            .instance(GeneratorSpec::TypeI { index: 0 }, &v)
            .unwrap();
        let r = raised.rebase(&g, &RebaseMove::Lower(0)).unwrap();
        assert!(r.terms.is_empty());
        assert_eq!(r.congruence.cert.eta().unwrap(), &v.scale(&x.pow(2)));
        assert!(r.verify());

        let raised = GeneratorSystem::new(&f, vec![(x.pow(2), 3), (y.clone(), 2)]).unwrap();
        let g = raised
            .instance(
                GeneratorSpec::TypeII {
                    t: 2,
                    k: vec![1, 2],
                },
                &v,
            )
            .unwrap();
        let r = raised.rebase(&g, &RebaseMove::Lower(0)).unwrap();
        assert!(r.verify(), "{r:?}");
    }

    #[test]
    fn divisible_generators_drop_a_level() {
        let f = FunctionField::new(2, &["x", "y"]).unwrap();
        let s =
            GeneratorSystem::from_adapted(&f, &AdaptedData::new(vec![(0, 3)]).unwrap()).unwrap();
        let v = DiffForm::scalar(&f, f.var(1));
        let g = s
            .instance(GeneratorSpec::TypeII { t: 2, k: vec![2] }, &v)
            .unwrap();
        let (h, c) = g.reduce_divisible().unwrap();
        assert_eq!(h.spec, GeneratorSpec::TypeII { t: 1, k: vec![1] });
        assert_eq!(c.lhs, g.value);
        assert!(c.verify());
        let triv = s
            .instance(GeneratorSpec::TypeII { t: 2, k: vec![0] }, &v)
            .unwrap();
        assert!(triv.trivial_certificate().unwrap().verify());
    }
}
