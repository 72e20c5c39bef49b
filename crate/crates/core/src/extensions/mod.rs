//! Purely inseparable extensions `E/F` given by explicit coordinates: `E` is a
//! second rational function field and `F -> E` is the embedding `x_i -> phi(x_i)`.
//! Pure inseparability is certified per target variable by `z^(p^n) = phi(g)`.

mod json;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{subfield_membership, FunctionField, RatFunc};
use crate::forms::{nu_member, DiffForm};

pub use json::{ExtensionFile, ExtensionFileAdapted, ExtensionFileCert, EXTENSION_FORMAT};

/// Distinguished variables `x_i` with root exponents `m_i >= 1`: the adapted
/// extension `F(x_i^(1/p^m_i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdaptedData {
    pairs: Vec<(usize, u32)>,
}

impl AdaptedData {
    pub fn new(pairs: Vec<(usize, u32)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(i, m) in &pairs {
            if m == 0 {
                return Err(Error::BadExponent(format!(
                    "root exponent for variable {} must be at least 1",
                    i + 1
                )));
            }
            if !seen.insert(i) {
                return Err(Error::Invalid(format!("variable {} listed twice", i + 1)));
            }
        }
        Ok(AdaptedData { pairs })
    }

    /// Look variables up by name.
    pub fn from_names(field: &FunctionField, pairs: &[(&str, u32)]) -> Result<Self> {
        let pairs = pairs
            .iter()
            .map(|&(v, m)| {
                field
                    .var_index(v)
                    .map(|i| (i, m))
                    .ok_or_else(|| Error::Invalid(format!("unknown variable `{v}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(pairs)
    }

    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.pairs
    }

    pub fn indices(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(i, _)| i).collect()
    }

    pub fn exponent_of(&self, i: usize) -> Option<u32> {
        self.pairs.iter().find(|&&(j, _)| j == i).map(|&(_, m)| m)
    }

    /// `max m_i` (0 for the trivial extension).
    pub fn exponent(&self) -> u32 {
        self.pairs.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    fn check_field(&self, field: &FunctionField) -> Result<()> {
        match self.pairs.iter().find(|&&(i, _)| i >= field.nvars()) {
            Some(&(i, _)) => Err(Error::VariableOutOfRange {
                index: i + 1,
                nvars: field.nvars(),
            }),
            None => Ok(()),
        }
    }
}

/// `z^(p^n) = phi(g)` for the target variable `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InseparabilityCert {
    pub target_var: usize,
    pub n: u32,
    pub g: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSpec {
    source: FunctionField,
    target: FunctionField,
    images: Vec<RatFunc>,
    certs: Vec<InseparabilityCert>,
    adapted: Option<AdaptedData>,
}

/// Fresh names for distinguished variables: u, v, w, ... then u1, v1, ...
fn fresh_names(taken: &[String], count: usize) -> Vec<String> {
    let mut out = Vec::new();
    let letters = ["u", "v", "w", "s", "t", "r", "q"];
    let mut round = 0;
    while out.len() < count {
        for l in letters {
            let name = if round == 0 {
                l.to_string()
            } else {
                format!("{l}{round}")
            };
            if !taken.contains(&name) && !out.contains(&name) {
                out.push(name);
                if out.len() == count {
                    break;
                }
            }
        }
        round += 1;
    }
    out
}

impl ExtensionSpec {
    /// `E = F(x_i^(1/p^m_i))` with coordinates where `phi(x_i) = z_i^(p^m_i)`
    /// on distinguished indices and `phi(x_i) = z_i` elsewhere.
    pub fn build_adapted(source: &FunctionField, data: &AdaptedData) -> Result<Self> {
        data.check_field(source)?;
        let mut indices = data.indices();
        indices.sort_unstable();
        let fresh = fresh_names(source.vars(), indices.len());
        let mut names: Vec<String> = source.vars().to_vec();
        for (k, &i) in indices.iter().enumerate() {
            names[i] = fresh[k].clone();
        }
        let target = FunctionField::from_names(source.p() as u64, names)?;
        let p = source.p() as u64;
        let mut images = Vec::new();
        let mut certs = Vec::new();
        for i in 0..source.nvars() {
            let m = data.exponent_of(i).unwrap_or(0);
            images.push(target.var(i).pow(p.pow(m)));
            certs.push(InseparabilityCert {
                target_var: i,
                n: m,
                g: source.var(i),
            });
        }
        let spec = ExtensionSpec {
            source: source.clone(),
            target,
            images,
            certs,
            adapted: Some(data.clone()),
        };
        spec.verify()?;
        Ok(spec)
    }

    /// A general embedding. Adaptedness is detected when every image is
    /// `z_i` or a p-power of `z_i`.
    pub fn build_embedding(
        source: &FunctionField,
        target: &FunctionField,
        images: Vec<RatFunc>,
        certs: Vec<InseparabilityCert>,
    ) -> Result<Self> {
        if source.p() != target.p() {
            return Err(Error::FieldMismatch);
        }
        if images.len() != source.nvars() {
            return Err(Error::Invalid(format!(
                "{} images given for {} source variables",
                images.len(),
                source.nvars()
            )));
        }
        let mut spec = ExtensionSpec {
            source: source.clone(),
            target: target.clone(),
            images,
            certs,
            adapted: None,
        };
        spec.verify()?;
        spec.adapted = spec.detect_adapted();
        Ok(spec)
    }

    fn verify(&self) -> Result<()> {
        for (i, im) in self.images.iter().enumerate() {
            if !self.target.owns(im) {
                return Err(Error::Invalid(format!(
                    "image of {} is not in {}",
                    self.source.var_name(i),
                    self.target.descriptor()
                )));
            }
            if im.is_zero() {
                return Err(Error::Invalid(format!(
                    "image of {} is zero",
                    self.source.var_name(i)
                )));
            }
        }
        let p = self.source.p() as u64;
        for j in 0..self.target.nvars() {
            let name = self.target.var_name(j);
            let cert = self
                .certs
                .iter()
                .find(|c| c.target_var == j)
                .ok_or_else(|| {
                    Error::CertificateFailed(format!("no inseparability certificate for {name}"))
                })?;
            if !self.source.owns(&cert.g) {
                return Err(Error::CertificateFailed(format!(
                    "certificate element for {name} is not in the source field"
                )));
            }
            let lhs = self.target.var(j).pow(p.pow(cert.n));
            if lhs != self.restrict_element(&cert.g)? {
                return Err(Error::CertificateFailed(format!(
                    "{name}^({p}^{}) differs from the image of the given element",
                    cert.n
                )));
            }
        }
        Ok(())
    }

    fn detect_adapted(&self) -> Option<AdaptedData> {
        if self.source.nvars() != self.target.nvars() {
            return None;
        }
        let p = self.source.p() as u64;
        let mut pairs = Vec::new();
        for (i, im) in self.images.iter().enumerate() {
            let z = self.target.var(i);
            let m = (0..=20u32).find(|&m| p.checked_pow(m).is_some_and(|e| *im == z.pow(e)))?;
            if m > 0 {
                pairs.push((i, m));
            }
        }
        AdaptedData::new(pairs).ok()
    }

    pub fn source(&self) -> &FunctionField {
        &self.source
    }

    pub fn target(&self) -> &FunctionField {
        &self.target
    }

    pub fn images(&self) -> &[RatFunc] {
        &self.images
    }

    pub fn certs(&self) -> &[InseparabilityCert] {
        &self.certs
    }

    pub fn adapted(&self) -> Option<&AdaptedData> {
        self.adapted.as_ref()
    }

    /// The exponent: largest certified `n_j`.
    pub fn exponent(&self) -> u32 {
        self.certs.iter().map(|c| c.n).max().unwrap_or(0)
    }

    pub fn restrict_element(&self, f: &RatFunc) -> Result<RatFunc> {
        if !self.source.owns(f) {
            return Err(Error::FieldMismatch);
        }
        f.substitute(&self.images)
    }

    /// Image of `omega` in `Omega_E`.
    pub fn restrict(&self, w: &DiffForm) -> Result<DiffForm> {
        if *w.field() != self.source {
            return Err(Error::FieldMismatch);
        }
        let diffs: Vec<DiffForm> = self
            .images
            .iter()
            .map(|im| DiffForm::scalar(&self.target, im.clone()).d())
            .collect();
        let mut out = DiffForm::zero(&self.target, w.degree());
        for (s, a) in w.terms() {
            let mut term = DiffForm::scalar(&self.target, self.restrict_element(a)?);
            for &i in s.entries() {
                if term.is_zero() {
                    break;
                }
                term = term.wedge(&diffs[i])?;
            }
            if !term.is_zero() {
                out = out.add(&term);
            }
        }
        Ok(out)
    }

    /// Kernel membership by the adapted-case criterion; general embeddings
    /// give `NotAdapted` (use [`ExtensionSpec::definitional_kernel_member`]).
    pub fn kernel_member(&self, w: &DiffForm) -> Result<bool> {
        let data = self.adapted.as_ref().ok_or(Error::NotAdapted)?;
        Ok(omega_kernel_member(w, data))
    }

    /// `restrict(w) = 0`, valid for any embedding.
    pub fn definitional_kernel_member(&self, w: &DiffForm) -> Result<bool> {
        Ok(self.restrict(w)?.is_zero())
    }
}

/// Every basis term of `w` contains some `dx_i` with `i` in `indices`, i.e.
/// `w` lies in `sum_i dx_i ^ Omega^(n-1)`.
pub fn in_differential_span(w: &DiffForm, indices: &[usize]) -> bool {
    w.terms().all(|(s, _)| s.meets(indices))
}

/// Membership in the kernel of `Omega_F^n -> Omega_E^n` for an adapted extension.
pub fn omega_kernel_member(w: &DiffForm, data: &AdaptedData) -> bool {
    in_differential_span(w, &data.indices())
}

pub fn nu_kernel_member(w: &DiffForm, data: &AdaptedData) -> bool {
    nu_member(w) && omega_kernel_member(w, data)
}

/// Whether `f` becomes a p-th power in the adapted extension, i.e.
/// `f` lies in `F^p(x_i : i distinguished)`.
pub fn square_class_kernel(f: &RatFunc, data: &AdaptedData) -> bool {
    subfield_membership(f, &data.indices())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::pth_root;

    fn nonmodular() -> ExtensionSpec {
        let f = FunctionField::new(2, &["X", "Y", "Z"]).unwrap();
        let e = FunctionField::new(2, &["X", "w", "u"]).unwrap();
        let (x, w, u) = (e.var(0), e.var(1), e.var(2));
        let images = vec![x.clone(), w.pow(2).add(&x.mul(&u.pow(2))), u.pow(4)];
        let certs = vec![
            InseparabilityCert {
                target_var: 0,
                n: 0,
                g: f.var(0),
            },
            InseparabilityCert {
                target_var: 1,
                n: 2,
                g: f.var(0).pow(2).mul(&f.var(2)).add(&f.var(1).pow(2)),
            },
            InseparabilityCert {
                target_var: 2,
                n: 2,
                g: f.var(2),
            },
        ];
        ExtensionSpec::build_embedding(&f, &e, images, certs).unwrap()
    }

    #[test]
    fn adapted_examples() {
        let f = FunctionField::new(2, &["x", "y"]).unwrap();
        let e =
            ExtensionSpec::build_adapted(&f, &AdaptedData::from_names(&f, &[("x", 2)]).unwrap())
                .unwrap();
        assert_eq!(e.target().descriptor(), "F2(u,y)");
        assert_eq!(e.images()[0], e.target().var(0).pow(4));
        assert_eq!(e.exponent(), 2);

        let g = FunctionField::new(3, &["x"]).unwrap();
        let e = ExtensionSpec::build_adapted(&g, &AdaptedData::new(vec![(0, 1)]).unwrap()).unwrap();
        assert_eq!(e.images()[0], e.target().var(0).pow(3));

        let e = ExtensionSpec::build_adapted(
            &f,
            &AdaptedData::from_names(&f, &[("x", 1), ("y", 2)]).unwrap(),
        )
        .unwrap();
        assert_eq!(e.target().descriptor(), "F2(u,v)");
        assert_eq!(e.images()[1], e.target().var(1).pow(4));
        assert!(AdaptedData::new(vec![(0, 0)]).is_err());
        assert!(AdaptedData::new(vec![(0, 1), (0, 2)]).is_err());
    }

    #[test]
    fn embedding_examples() {
        let e = nonmodular();
        assert!(e.adapted().is_none());
        assert_eq!(e.exponent(), 2);

        let f = FunctionField::new(2, &["x", "y"]).unwrap();
        let id = ExtensionSpec::build_embedding(
            &f,
            &f,
            vec![f.var(0), f.var(1)],
            vec![
                InseparabilityCert {
                    target_var: 0,
                    n: 0,
                    g: f.var(0),
                },
                InseparabilityCert {
                    target_var: 1,
                    n: 0,
                    g: f.var(1),
                },
            ],
        )
        .unwrap();
        assert!(id.adapted().unwrap().is_empty());

        let bad = ExtensionSpec::build_embedding(
            &f,
            &f,
            vec![f.var(0), f.var(1)],
            vec![InseparabilityCert {
                target_var: 0,
                n: 0,
                g: f.var(0),
            }],
        );
        assert!(matches!(bad, Err(Error::CertificateFailed(m)) if m.contains('y')));
        let wrong = ExtensionSpec::build_embedding(
            &f,
            &f,
            vec![f.var(0), f.var(1)],
            vec![
                InseparabilityCert {
                    target_var: 0,
                    n: 1,
                    g: f.var(0),
                },
                InseparabilityCert {
                    target_var: 1,
                    n: 0,
                    g: f.var(1),
                },
            ],
        );
        assert!(matches!(wrong, Err(Error::CertificateFailed(_))));
    }

    #[test]
    fn restrict_examples() {
        let f = FunctionField::new(2, &["x", "y"]).unwrap();
        let e = ExtensionSpec::build_adapted(&f, &AdaptedData::new(vec![(0, 2)]).unwrap()).unwrap();
        assert!(e.restrict(&DiffForm::dx(&f, 0)).unwrap().is_zero());
        assert_eq!(
            e.restrict(&DiffForm::dx(&f, 1)).unwrap(),
            DiffForm::dx(e.target(), 1)
        );

        let s4 = nonmodular();
        let src = s4.source().clone();
        let dxdy = DiffForm::dx(&src, 0).wedge(&DiffForm::dx(&src, 1)).unwrap();
        assert!(s4.restrict(&dxdy).unwrap().is_zero());
        assert!(!in_differential_span(&dxdy, &[2]));
        assert_eq!(s4.kernel_member(&dxdy), Err(Error::NotAdapted));
        assert_eq!(s4.definitional_kernel_member(&dxdy), Ok(true));
    }

    #[test]
    fn kernel_examples() {
        let f = FunctionField::new(2, &["x", "y", "z"]).unwrap();
        let data = AdaptedData::new(vec![(0, 2)]).unwrap();
        let dx = DiffForm::dx(&f, 0);
        let dy = DiffForm::dx(&f, 1);
        let dz = DiffForm::dx(&f, 2);
        assert!(omega_kernel_member(&dx.wedge(&dy).unwrap(), &data));
        assert!(!omega_kernel_member(&dy.wedge(&dz).unwrap(), &data));

        let (x, y, z) = (f.var(0), f.var(1), f.var(2));
        let d1 = AdaptedData::new(vec![(0, 1)]).unwrap();
        let d2 = AdaptedData::new(vec![(0, 1), (1, 1)]).unwrap();
        assert!(nu_kernel_member(&DiffForm::dlog(&x, &f).unwrap(), &d1));
        assert!(!nu_kernel_member(&DiffForm::dlog(&z, &f).unwrap(), &d2));
        assert!(nu_kernel_member(
            &DiffForm::dlog(&x.mul(&y), &f).unwrap(),
            &d2
        ));

        assert!(square_class_kernel(&x, &d1));
        assert!(!square_class_kernel(&z, &d1));
        let x2 = AdaptedData::new(vec![(0, 2)]).unwrap();
        let f_val = x.mul(&y.pow(2));
        assert!(square_class_kernel(&f_val, &x2));
        let ext = ExtensionSpec::build_adapted(&f, &x2).unwrap();
        assert!(pth_root(&ext.restrict_element(&f_val).unwrap()).is_some());
    }
}
