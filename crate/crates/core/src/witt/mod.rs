//! Quadratic and symmetric bilinear forms over rational function fields, with
//! the certificate checkers used for hyperbolicity in characteristic 2.
//!
//! A quadratic form is an upper-triangular matrix `M` with
//! `q(v) = sum_{i <= j} M_ij v_i v_j`; `[a, b]` is `a X^2 + XY + b Y^2` and
//! the hyperbolic plane is `[0, 0]`.

mod kernel;
pub mod matrix;

use crate::error::{Error, Result};
use crate::extensions::ExtensionSpec;
use crate::field::{FunctionField, RatFunc};
use crate::forms::DiffForm;
use crate::text::{parse_infix_rat, rat_from_sexp, rat_to_sexp, Sexp};

use matrix::Matrix;

pub use kernel::{
    bilinear_kernel_generators, hyperbolic_cert, hyperbolic_chain, metabolic_cert,
    quadratic_kernel_generators, BilGenerator, HyperbolicChain, QuadGenerator,
};

fn require_char2(field: &FunctionField) -> Result<()> {
    if field.p() != 2 {
        return Err(Error::Invalid(format!(
            "characteristic 2 required, field has characteristic {}",
            field.p()
        )));
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq)]
pub struct QuadForm {
    field: FunctionField,
    m: Matrix,
}

impl QuadForm {
    /// From any square matrix; entries below the diagonal are folded up.
    pub fn from_matrix(field: &FunctionField, m: Matrix) -> Result<Self> {
        let n = m.len();
        if m.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(
                "quadratic form matrix must be square".into(),
            ));
        }
        if m.iter().flatten().any(|x| !field.owns(x)) {
            return Err(Error::FieldMismatch);
        }
        let mut up = matrix::zeros(field, n, n);
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                up[a][b] = up[a][b].add(x);
            }
        }
        Ok(QuadForm {
            field: field.clone(),
            m: up,
        })
    }

    pub fn zero(field: &FunctionField, dim: usize) -> Self {
        QuadForm {
            field: field.clone(),
            m: matrix::zeros(field, dim, dim),
        }
    }

    /// `[a, b]`.
    pub fn binary(field: &FunctionField, a: RatFunc, b: RatFunc) -> Self {
        let mut q = Self::zero(field, 2);
        q.m[0][0] = a;
        q.m[0][1] = field.one();
        q.m[1][1] = b;
        q
    }

    pub fn hyperbolic_plane(field: &FunctionField) -> Self {
        Self::binary(field, field.zero(), field.zero())
    }

    pub fn field(&self) -> &FunctionField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &RatFunc {
        &self.m[i][j]
    }

    pub fn eval(&self, v: &[RatFunc]) -> RatFunc {
        let mut acc = self.field.zero();
        for i in 0..self.dim() {
            if v[i].is_zero() {
                continue;
            }
            for j in i..self.dim() {
                if !self.m[i][j].is_zero() && !v[j].is_zero() {
                    acc = acc.add(&self.m[i][j].mul(&v[i]).mul(&v[j]));
                }
            }
        }
        acc
    }

    /// `M + M^T`.
    pub fn polar_matrix(&self) -> Matrix {
        let t = matrix::transpose(&self.field, &self.m);
        self.m
            .iter()
            .zip(&t)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            .collect()
    }

    pub fn polar(&self, v: &[RatFunc], w: &[RatFunc]) -> RatFunc {
        let bw = matrix::mat_vec(&self.field, &self.polar_matrix(), w);
        v.iter()
            .zip(&bw)
            .fold(self.field.zero(), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    pub fn is_nonsingular(&self) -> bool {
        matrix::is_invertible(&self.polar_matrix())
    }

    pub fn orth_sum(&self, other: &QuadForm) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(QuadForm {
            field: self.field.clone(),
            m: matrix::block_diag(&self.field, &self.m, &other.m),
        })
    }

    /// `c q`.
    pub fn scale(&self, c: &RatFunc) -> Self {
        QuadForm {
            field: self.field.clone(),
            m: self
                .m
                .iter()
                .map(|r| r.iter().map(|x| x.mul(c)).collect())
                .collect(),
        }
    }

    /// `<c_1, ..., c_k> (x) q = c_1 q _|_ ... _|_ c_k q`.
    pub fn scale_diagonal(&self, cs: &[RatFunc]) -> Result<Self> {
        let mut out = QuadForm::zero(&self.field, 0);
        for c in cs {
            if c.is_zero() {
                return Err(Error::Invalid(
                    "diagonal bilinear entries must be nonzero".into(),
                ));
            }
            out = out.orth_sum(&self.scale(c))?;
        }
        Ok(out)
    }

    pub fn restrict(&self, ext: &ExtensionSpec) -> Result<Self> {
        if &self.field != ext.source() {
            return Err(Error::FieldMismatch);
        }
        let m = self
            .m
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| ext.restrict_element(x))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(QuadForm {
            field: ext.target().clone(),
            m,
        })
    }

    /// `(quad dim ((i j) RAT) ...)`, 1-based, nonzero entries only.
    pub fn to_sexp(&self) -> Sexp {
        let mut items = vec![Sexp::atom("quad"), Sexp::atom(self.dim().to_string())];
        for (i, row) in self.m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    let idx = Sexp::list(vec![
                        Sexp::atom((i + 1).to_string()),
                        Sexp::atom((j + 1).to_string()),
                    ]);
                    items.push(Sexp::list(vec![idx, rat_to_sexp(x)]));
                }
            }
        }
        Sexp::list(items)
    }

    /// Entries may be `(rat ...)` trees or infix atoms; repeated or
    /// lower-triangular positions are summed into the upper triangle.
    pub fn from_sexp(s: &Sexp, field: &FunctionField) -> Result<Self> {
        let items = s.tagged("quad")?;
        let dim = items
            .first()
            .ok_or_else(|| Error::Parse("quad needs a dimension".into()))?
            .as_u64()? as usize;
        let mut m = matrix::zeros(field, dim, dim);
        for item in &items[1..] {
            let pair = item.as_list()?;
            if pair.len() != 2 {
                return Err(Error::Parse("quad entry must be `((i j) value)`".into()));
            }
            let idx = pair[0].as_list()?;
            if idx.len() != 2 {
                return Err(Error::Parse("quad index must be `(i j)`".into()));
            }
            let (i, j) = (idx[0].as_u64()? as usize, idx[1].as_u64()? as usize);
            if i == 0 || j == 0 || i > dim || j > dim {
                return Err(Error::Parse(format!(
                    "quad index ({i} {j}) out of range 1..={dim}"
                )));
            }
            let x = match &pair[1] {
                Sexp::Atom(a) => parse_infix_rat(a, field)?,
                list => rat_from_sexp(list, field)?,
            };
            m[i - 1][j - 1] = m[i - 1][j - 1].add(&x);
        }
        Self::from_matrix(field, m)
    }

    pub fn parse(text: &str, field: &FunctionField) -> Result<Self> {
        Self::from_sexp(&Sexp::parse(text)?, field)
    }
}

impl std::fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}

/// Symmetric bilinear form `b(v, w) = v^T G w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilForm {
    field: FunctionField,
    g: Matrix,
}

impl BilForm {
    pub fn from_matrix(field: &FunctionField, g: Matrix) -> Result<Self> {
        let n = g.len();
        if g.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("bilinear form matrix must be square".into()));
        }
        if g.iter().flatten().any(|x| !field.owns(x)) {
            return Err(Error::FieldMismatch);
        }
        if (0..n).any(|i| (0..i).any(|j| g[i][j] != g[j][i])) {
            return Err(Error::Invalid(
                "bilinear form matrix must be symmetric".into(),
            ));
        }
        Ok(BilForm {
            field: field.clone(),
            g,
        })
    }

    /// `<c_1, ..., c_n>_b`.
    pub fn diagonal(field: &FunctionField, cs: &[RatFunc]) -> Self {
        BilForm {
            field: field.clone(),
            g: matrix::diagonal(field, cs),
        }
    }

    pub fn field(&self) -> &FunctionField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.g.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn eval(&self, v: &[RatFunc], w: &[RatFunc]) -> RatFunc {
        let gw = matrix::mat_vec(&self.field, &self.g, w);
        v.iter()
            .zip(&gw)
            .fold(self.field.zero(), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    pub fn is_nondegenerate(&self) -> bool {
        matrix::is_invertible(&self.g)
    }

    /// Kronecker product.
    pub fn tensor(&self, other: &BilForm) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let (n, m) = (self.dim(), other.dim());
        let mut g = matrix::zeros(&self.field, n * m, n * m);
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..m {
                        g[i * m + k][j * m + l] = self.g[i][j].mul(&other.g[k][l]);
                    }
                }
            }
        }
        Ok(BilForm {
            field: self.field.clone(),
            g,
        })
    }

    pub fn restrict(&self, ext: &ExtensionSpec) -> Result<Self> {
        if &self.field != ext.source() {
            return Err(Error::FieldMismatch);
        }
        let g = self
            .g
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| ext.restrict_element(x))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(BilForm {
            field: ext.target().clone(),
            g,
        })
    }
}

/// `T` with `q2(v) = q1(T v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryCert {
    pub t: Matrix,
}

/// Basis of a totally isotropic subspace of half dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianCert {
    pub basis: Vec<Vec<RatFunc>>,
}

/// A vector `v != 0` with `b(v, v) = 0` for a 2-dimensional form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetabolicCert {
    pub vector: Vec<RatFunc>,
}

/// `<<a_1, ..., a_n>>` with an optional quadratic tail `b`, giving
/// `<<a_1, ..., a_n, b]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfisterSymbol {
    field: FunctionField,
    slots: Vec<RatFunc>,
    tail: Option<RatFunc>,
}

impl PfisterSymbol {
    pub fn new(field: &FunctionField, slots: Vec<RatFunc>, tail: Option<RatFunc>) -> Result<Self> {
        if slots.iter().chain(&tail).any(|x| !field.owns(x)) {
            return Err(Error::FieldMismatch);
        }
        if slots.iter().any(RatFunc::is_zero) {
            return Err(Error::Invalid("Pfister slots must be nonzero".into()));
        }
        Ok(PfisterSymbol {
            field: field.clone(),
            slots,
            tail,
        })
    }

    pub fn field(&self) -> &FunctionField {
        &self.field
    }

    pub fn slots(&self) -> &[RatFunc] {
        &self.slots
    }

    pub fn tail(&self) -> Option<&RatFunc> {
        self.tail.as_ref()
    }

    /// Reads `<<a_1, ..., a_n, b]]` back from the layout produced by
    /// [`pfister_quad`], if `q` has exactly that matrix.
    pub fn recognize(q: &QuadForm) -> Option<Self> {
        let dim = q.dim();
        if dim < 2 || !dim.is_power_of_two() {
            return None;
        }
        let n = dim.trailing_zeros() as usize - 1;
        let f = q.field();
        let slots: Vec<RatFunc> = (0..n).map(|i| q.entry(2 << i, 2 << i).clone()).collect();
        let sym = PfisterSymbol::new(f, slots, Some(q.entry(1, 1).clone())).ok()?;
        (pfister_quad(&sym).ok()? == *q).then_some(sym)
    }
}

/// `<<a_1, ..., a_n>>_b (x) [1, b]`, built as `q -> q _|_ a_i q` for each
/// slot in order starting from `[1, b]`.
pub fn pfister_quad(sym: &PfisterSymbol) -> Result<QuadForm> {
    require_char2(&sym.field)?;
    let b = sym
        .tail
        .clone()
        .ok_or_else(|| Error::Invalid("quadratic Pfister form needs a tail".into()))?;
    let mut q = QuadForm::binary(&sym.field, sym.field.one(), b);
    for a in &sym.slots {
        q = q.orth_sum(&q.scale(a))?;
    }
    Ok(q)
}

/// `<1, -a_1> (x) ... (x) <1, -a_n>`.
pub fn pfister_bil(sym: &PfisterSymbol) -> Result<BilForm> {
    let f = &sym.field;
    let mut b = BilForm::diagonal(f, &[f.one()]);
    for a in &sym.slots {
        b = b.tensor(&BilForm::diagonal(f, &[f.one(), a.neg()]))?;
    }
    Ok(b)
}

/// Arf invariant representative `sum a_i b_i` after reducing `q` to
/// `[a_1, b_1] _|_ ... _|_ [a_r, b_r]` by symplectic elimination.
pub fn arf(q: &QuadForm) -> Result<RatFunc> {
    require_char2(q.field())?;
    let f = q.field();
    if !q.dim().is_multiple_of(2) {
        return Err(Error::Singular);
    }
    let mut rest: Vec<Vec<RatFunc>> = matrix::identity(f, q.dim());
    let mut acc = f.zero();
    while let Some(e) = rest.pop() {
        let pos = rest
            .iter()
            .position(|w| !q.polar(&e, w).is_zero())
            .ok_or(Error::Singular)?;
        let w = rest.swap_remove(pos);
        let inv = q.polar(&e, &w).inv()?;
        let fv: Vec<RatFunc> = w.iter().map(|x| x.mul(&inv)).collect();
        acc = acc.add(&q.eval(&e).mul(&q.eval(&fv)));
        for w in rest.iter_mut() {
            let (bf, be) = (q.polar(w, &fv), q.polar(w, &e));
            for ((x, ei), fi) in w.iter_mut().zip(&e).zip(&fv) {
                *x = x.add(&bf.mul(ei)).add(&be.mul(fi));
            }
        }
    }
    Ok(acc)
}

/// `q2(v) = q1(T v)` as an identity of quadratic forms, with `T` invertible.
pub fn is_isometry(q1: &QuadForm, q2: &QuadForm, cert: &IsometryCert) -> bool {
    let n = q1.dim();
    if q1.field() != q2.field()
        || q2.dim() != n
        || cert.t.len() != n
        || !matrix::is_invertible(&cert.t)
    {
        return false;
    }
    let f = q1.field();
    let pulled = matrix::mul(
        f,
        &matrix::mul(f, &matrix::transpose(f, &cert.t), q1.matrix()),
        &cert.t,
    );
    (0..n).all(|i| {
        pulled[i][i] == q2.m[i][i]
            && ((i + 1)..n).all(|j| pulled[i][j].add(&pulled[j][i]) == q2.m[i][j])
    })
}

/// `q` nonsingular of even dimension, and the basis spans a totally
/// isotropic subspace of dimension `dim / 2`.
pub fn lagrangian_check(q: &QuadForm, cert: &LagrangianCert) -> bool {
    let n = q.dim();
    let b = &cert.basis;
    if !n.is_multiple_of(2)
        || b.len() != n / 2
        || b.iter()
            .any(|v| v.len() != n || v.iter().any(|x| !q.field().owns(x)))
    {
        return false;
    }
    if !q.is_nonsingular() {
        return false;
    }
    b.iter().all(|v| q.eval(v).is_zero())
        && (0..b.len()).all(|i| ((i + 1)..b.len()).all(|j| q.polar(&b[i], &b[j]).is_zero()))
        && matrix::rank(b) == b.len()
}

/// `b` nondegenerate of dimension 2 with a nonzero isotropic vector.
pub fn metabolic_check(b: &BilForm, cert: &MetabolicCert) -> bool {
    b.dim() == 2
        && cert.vector.len() == 2
        && cert.vector.iter().any(|x| !x.is_zero())
        && b.is_nondegenerate()
        && b.eval(&cert.vector, &cert.vector).is_zero()
}

/// Lagrangian of an orthogonal sum of binary blocks each having a zero
/// diagonal entry, such as `H _|_ H`.
pub fn split_lagrangian(q: &QuadForm) -> Option<LagrangianCert> {
    let n = q.dim();
    if !n.is_multiple_of(2) {
        return None;
    }
    let f = q.field();
    let mut basis = Vec::new();
    for blk in 0..n / 2 {
        let (i, j) = (2 * blk, 2 * blk + 1);
        let outside = (0..n).filter(|&k| k != i && k != j).any(|k| {
            let (a, b) = (k.min(i), k.max(i));
            let (c, d) = (k.min(j), k.max(j));
            !q.m[a][b].is_zero() || !q.m[c][d].is_zero()
        });
        if outside {
            return None;
        }
        let mut v = vec![f.zero(); n];
        if q.m[i][i].is_zero() {
            v[i] = f.one();
        } else if q.m[j][j].is_zero() {
            v[j] = f.one();
        } else {
            return None;
        }
        basis.push(v);
    }
    let cert = LagrangianCert { basis };
    lagrangian_check(q, &cert).then_some(cert)
}

/// `dlog a_1 ^ ... ^ dlog a_n`.
pub fn kato_e(sym: &PfisterSymbol) -> Result<DiffForm> {
    DiffForm::dlog_wedge(&sym.field, &sym.slots)
}

/// `b dlog a_1 ^ ... ^ dlog a_n`; the degree-0 form `b` without slots.
pub fn kato_f(sym: &PfisterSymbol) -> Result<DiffForm> {
    let b = sym
        .tail
        .as_ref()
        .ok_or_else(|| Error::Invalid("symbol has no quadratic tail".into()))?;
    Ok(kato_e(sym)?.scale(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2x() -> FunctionField {
        FunctionField::new(2, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn pfister_builders() {
        let f = f2x();
        let (x, y, z) = (f.var(0), f.var(1), f.var(2));
        let sym = PfisterSymbol::new(&f, vec![y.clone()], Some(x.clone())).unwrap();
        let q = pfister_quad(&sym).unwrap();
        let want = QuadForm::binary(&f, f.one(), x.clone())
            .orth_sum(&QuadForm::binary(&f, f.one(), x.clone()).scale(&y))
            .unwrap();
        assert_eq!(q, want);
        assert_eq!(PfisterSymbol::recognize(&q), Some(sym));
        let b = pfister_bil(&PfisterSymbol::new(&f, vec![f.one()], None).unwrap()).unwrap();
        assert_eq!(b, BilForm::diagonal(&f, &[f.one(), f.one()]));
        let q3 = pfister_quad(&PfisterSymbol::new(&f, vec![x, y], Some(z)).unwrap()).unwrap();
        assert_eq!(q3.dim(), 8);
        assert!(q3.is_nonsingular());
        assert!(PfisterSymbol::recognize(&q3).is_some());
    }

    #[test]
    fn arf_examples() {
        let f = f2x();
        let c = f.var(0).add(&f.var(1).pow(3));
        let bin = QuadForm::binary(&f, f.one(), c.clone());
        assert_eq!(arf(&bin).unwrap(), c);
        assert_eq!(arf(&QuadForm::hyperbolic_plane(&f)).unwrap(), f.zero());
        assert_eq!(arf(&bin.orth_sum(&bin).unwrap()).unwrap(), f.zero());
        assert_eq!(arf(&QuadForm::zero(&f, 2)), Err(Error::Singular));
        let mixed =
            QuadForm::from_matrix(&f, vec![vec![f.var(0), f.one()], vec![f.var(1), f.var(2)]])
                .unwrap();
        assert_eq!(mixed.entry(0, 1), &f.one().add(&f.var(1)));
        let a = arf(&mixed).unwrap();
        let inv = f.one().add(&f.var(1)).inv().unwrap();
        assert_eq!(a, f.var(0).mul(&f.var(2)).mul(&inv).mul(&inv));
    }

    #[test]
    fn isometry_examples() {
        let f = f2x();
        let (c, w) = (f.var(0), f.var(1).add(&f.one()));
        let q1 = QuadForm::binary(&f, f.one(), c.clone());
        let q2 = QuadForm::binary(&f, f.one(), c.add(&w.pow(2)).add(&w));
        let t = IsometryCert {
            t: vec![vec![f.one(), w], vec![f.zero(), f.one()]],
        };
        assert!(is_isometry(&q1, &q2, &t));
        assert!(!is_isometry(&q1, &q1, &t));
        assert!(is_isometry(
            &q1,
            &q1,
            &IsometryCert {
                t: matrix::identity(&f, 2)
            }
        ));
        let (a, b) = (f.var(0), f.var(2));
        let swap = IsometryCert {
            t: vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]],
        };
        assert!(is_isometry(
            &QuadForm::binary(&f, a.clone(), b.clone()),
            &QuadForm::binary(&f, b, a),
            &swap
        ));
        let singular = IsometryCert {
            t: matrix::zeros(&f, 2, 2),
        };
        assert!(!is_isometry(
            &QuadForm::zero(&f, 2),
            &QuadForm::zero(&f, 2),
            &singular
        ));
    }

    #[test]
    fn lagrangian_examples() {
        let f = f2x();
        let q = QuadForm::binary(&f, f.var(0), f.var(1));
        let qq = q.orth_sum(&q).unwrap();
        let diag = LagrangianCert {
            basis: vec![
                vec![f.one(), f.zero(), f.one(), f.zero()],
                vec![f.zero(), f.one(), f.zero(), f.one()],
            ],
        };
        assert!(lagrangian_check(&qq, &diag));
        let h = QuadForm::hyperbolic_plane(&f);
        assert!(lagrangian_check(
            &h,
            &LagrangianCert {
                basis: vec![vec![f.one(), f.zero()]]
            }
        ));
        let hh = h.orth_sum(&h).unwrap();
        assert!(split_lagrangian(&hh).is_some());
        let aniso = QuadForm::binary(&f, f.one(), f.one());
        for v in [
            [f.one(), f.zero()],
            [f.one(), f.one()],
            [f.var(0), f.one()],
            [f.var(0).add(&f.one()), f.var(0)],
        ] {
            assert!(!lagrangian_check(
                &aniso,
                &LagrangianCert {
                    basis: vec![v.to_vec()]
                }
            ));
        }
        assert!(split_lagrangian(&aniso).is_none());
    }

    #[test]
    fn kato_symbols() {
        let f = f2x();
        let (x, y) = (f.var(0), f.var(1));
        let e1 = kato_e(&PfisterSymbol::new(&f, vec![x.clone()], None).unwrap()).unwrap();
        assert_eq!(e1, DiffForm::dlog(&x, &f).unwrap());
        let f1 =
            kato_f(&PfisterSymbol::new(&f, vec![x.clone()], Some(y.clone())).unwrap()).unwrap();
        assert_eq!(f1, DiffForm::dlog(&x, &f).unwrap().scale(&y));
        let f0 = kato_f(&PfisterSymbol::new(&f, vec![], Some(y.clone())).unwrap()).unwrap();
        assert_eq!(f0, DiffForm::scalar(&f, y));
    }

    #[test]
    fn quad_text_roundtrip() {
        let f = f2x();
        let q = pfister_quad(
            &PfisterSymbol::new(&f, vec![f.var(1)], Some(f.var(0).inv().unwrap())).unwrap(),
        )
        .unwrap();
        assert_eq!(QuadForm::parse(&q.to_sexp().to_string(), &f).unwrap(), q);
        let h = QuadForm::parse("(quad 2 ((1 2) 1))", &f).unwrap();
        assert_eq!(h, QuadForm::hyperbolic_plane(&f));
        assert!(QuadForm::parse("(quad 2 ((3 1) 1))", &f).is_err());
    }
}
