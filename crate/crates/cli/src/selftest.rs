//! Invariant suite on seeded corpora, one row per section.

use katoforms::extensions::{square_class_kernel, AdaptedData, ExtensionSpec};
use katoforms::field::pth_root;
use katoforms::forms::{cartier, is_exact, random_element, random_form, RandomSpec};
use katoforms::hp::{cert_power, cert_product_rule, verify_certificate};
use katoforms::oracle::{exhaustive_exactness, SearchBounds};
use katoforms::witt::{hyperbolic_cert, quadratic_kernel_generators};
use katoforms::{DiffForm, FunctionField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const SECTIONS: [&str; 6] = [
    "cartier",
    "exactness",
    "certificates",
    "kernel",
    "witt",
    "square-class",
];

/// Operators under test; swapping one in lets a broken implementation be caught.
#[derive(Clone, Copy)]
pub struct Ops {
    pub cartier: fn(&DiffForm) -> katoforms::Result<DiffForm>,
}

impl Default for Ops {
    fn default() -> Self {
        Ops { cartier }
    }
}

pub struct Options {
    pub corpus: usize,
    pub seed: u64,
    pub skip: Vec<String>,
    pub ops: Ops,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Row {
    pub section: &'static str,
    pub status: Status,
    pub cases: usize,
    pub detail: String,
}

impl Row {
    pub fn to_json(&self) -> Value {
        json!({ "section": self.section, "status": self.status.label(), "cases": self.cases, "detail": self.detail })
    }
}

type Check = Result<usize, String>;

fn field(p: u64, vars: &[&str]) -> FunctionField {
    FunctionField::new(p, vars).expect("valid field")
}

fn cartier_section(ops: &Ops, rng: &mut ChaCha8Rng, n: usize) -> Check {
    for i in 0..n {
        let p = [2, 3][i % 2];
        let f = field(p, &["x", "y"]);
        let k = rng.gen_range(0..=2);
        let w = random_form(&f, k, 3, 3, rng.gen());
        if (ops.cartier)(&w.sp()).ok().as_ref() != Some(&w) {
            return Err(format!("C(sp(w)) != w on case {i}"));
        }
        let eta = random_form(&f, k.min(1), 3, 3, rng.gen());
        if !(ops.cartier)(&eta.d()).is_ok_and(|c| c.is_zero()) {
            return Err(format!("C(d eta) != 0 on case {i}"));
        }
    }
    Ok(2 * n)
}

fn exactness_section(rng: &mut ChaCha8Rng, n: usize) -> Check {
    for i in 0..n {
        let f = field([2, 3][i % 2], &["x"]);
        let x = f.var(0);
        let w = if rng.gen_bool(0.5) {
            random_form(&f, 0, 4, 3, rng.gen()).d()
        } else {
            random_form(&f, 1, 4, 3, rng.gen())
        };
        let bounds =
            SearchBounds::with_denominators(8, vec![f.one(), x.clone(), x.pow(2), x.pow(3)]);
        let found = exhaustive_exactness(&w, &bounds).map_err(|e| e.to_string())?;
        if found.is_found() && !is_exact(&w) {
            return Err(format!(
                "oracle finds a primitive the Cartier test rejects on case {i}"
            ));
        }
        if is_exact(&w) && w.terms().all(|(_, c)| c.den().is_one()) && !found.is_found() {
            return Err(format!(
                "polynomial exact form without bounded primitive on case {i}"
            ));
        }
    }
    Ok(n)
}

fn certificate_section(rng: &mut ChaCha8Rng, n: usize) -> Check {
    for i in 0..n {
        let f = field([2, 3][i % 2], &["x", "y"]);
        let v = random_form(&f, rng.gen_range(0..=1), 3, 2, rng.gen());
        let c = cert_power(&v, rng.gen_range(0..=2));
        if !verify_certificate(&c.lhs, &c.rhs, &c.cert).unwrap_or(false) {
            return Err(format!("power certificate fails on case {i}"));
        }
        let b = random_element(
            &f,
            rng,
            &RandomSpec {
                degree: 2,
                terms: 2,
                denominators: false,
            },
        );
        if b.is_zero() {
            continue;
        }
        let c = cert_product_rule(&[b], &[rng.gen_range(1..=3)], &v).map_err(|e| e.to_string())?;
        if !verify_certificate(&c.lhs, &c.rhs, &c.cert).unwrap_or(false) {
            return Err(format!("product rule certificate fails on case {i}"));
        }
    }
    Ok(n)
}

fn kernel_section(rng: &mut ChaCha8Rng, n: usize) -> Check {
    for i in 0..n {
        let p = [2, 3][i % 2];
        let f = field(p, &["x", "y", "z"]);
        let data = AdaptedData::new(vec![(0, 1 + (i % 2) as u32)]).expect("valid data");
        let ext = ExtensionSpec::build_adapted(&f, &data).map_err(|e| e.to_string())?;
        let k = rng.gen_range(1..=2);
        let mut w = random_form(&f, k, 3, 2, rng.gen());
        if rng.gen_bool(0.5) {
            w = DiffForm::dx(&f, 0)
                .wedge(&random_form(&f, k - 1, 3, 2, rng.gen()))
                .map_err(|e| e.to_string())?;
        }
        let syntactic = ext.kernel_member(&w).map_err(|e| e.to_string())?;
        let semantic = ext.restrict(&w).map_err(|e| e.to_string())?.is_zero();
        if syntactic != semantic {
            return Err(format!("kernel tests disagree on case {i}"));
        }
    }
    Ok(n)
}

fn witt_section(rng: &mut ChaCha8Rng, n: usize) -> Check {
    let f = field(2, &["x", "y"]);
    let mut count = 0;
    for i in 0..n.div_ceil(4) {
        let m = 1 + (i % 2) as u32;
        let data = AdaptedData::new(vec![(0, m)]).expect("valid data");
        let ext = ExtensionSpec::build_adapted(&f, &data).map_err(|e| e.to_string())?;
        let s = random_element(
            &f,
            rng,
            &RandomSpec {
                degree: 2,
                terms: 2,
                denominators: false,
            },
        );
        if s.is_zero() {
            continue;
        }
        for g in
            quadratic_kernel_generators(&f, &data, &[s], &[vec![]]).map_err(|e| e.to_string())?
        {
            let chain = hyperbolic_cert(&g.form, &ext).map_err(|e| e.to_string())?;
            if !chain.certifies(&g.form, &ext) {
                return Err(format!("hyperbolicity chain fails on case {i}"));
            }
            count += 1;
        }
    }
    Ok(count)
}

fn square_class_section(rng: &mut ChaCha8Rng, n: usize) -> Check {
    let f = field(2, &["x", "y", "z"]);
    let data = AdaptedData::new(vec![(0, 1), (1, 2)]).expect("valid data");
    let ext = ExtensionSpec::build_adapted(&f, &data).map_err(|e| e.to_string())?;
    let (x, y, z) = (f.var(0), f.var(1), f.var(2));
    for i in 0..n {
        let mut a = random_element(
            &f,
            rng,
            &RandomSpec {
                degree: 3,
                terms: 3,
                denominators: true,
            },
        );
        if rng.gen_bool(0.5) {
            a = a
                .substitute(&[x.clone(), y.clone(), z.pow(2)])
                .map_err(|e| e.to_string())?;
        }
        let actual = pth_root(&ext.restrict_element(&a).map_err(|e| e.to_string())?).is_some();
        if square_class_kernel(&a, &data) != actual {
            return Err(format!("square-class test disagrees on case {i}"));
        }
    }
    Ok(n)
}

pub fn run(opts: &Options) -> Vec<Row> {
    SECTIONS
        .iter()
        .enumerate()
        .map(|(k, &section)| {
            if opts.corpus == 0 || opts.skip.iter().any(|s| s == section) {
                let detail = if opts.corpus == 0 {
                    "empty corpus"
                } else {
                    "skipped on request"
                };
                return Row {
                    section,
                    status: Status::Skipped,
                    cases: 0,
                    detail: detail.into(),
                };
            }
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(k as u64));
            let n = opts.corpus;
            let check = match section {
                "cartier" => cartier_section(&opts.ops, &mut rng, n),
                "exactness" => exactness_section(&mut rng, n),
                "certificates" => certificate_section(&mut rng, n),
                "kernel" => kernel_section(&mut rng, n),
                "witt" => witt_section(&mut rng, n),
                _ => square_class_section(&mut rng, n),
            };
            match check {
                Ok(cases) => Row {
                    section,
                    status: Status::Pass,
                    cases,
                    detail: String::new(),
                },
                Err(detail) => Row {
                    section,
                    status: Status::Fail,
                    cases: 0,
                    detail,
                },
            }
        })
        .collect()
}

pub fn table(rows: &[Row]) -> String {
    let mut out = format!("{:<14} {:<8} {:>6}  detail\n", "section", "status", "cases");
    for r in rows {
        out.push_str(&format!(
            "{:<14} {:<8} {:>6}  {}\n",
            r.section,
            r.status.label(),
            r.cases,
            r.detail
        ));
    }
    let failed: Vec<&str> = rows
        .iter()
        .filter(|r| r.status == Status::Fail)
        .map(|r| r.section)
        .collect();
    let skipped: Vec<&str> = rows
        .iter()
        .filter(|r| r.status == Status::Skipped)
        .map(|r| r.section)
        .collect();
    if !skipped.is_empty() {
        out.push_str(&format!("skipped: {}\n", skipped.join(", ")));
    }
    if rows.iter().all(|r| r.status == Status::Skipped) {
        out.push_str("no sections run");
    } else if failed.is_empty() {
        out.push_str("all run sections passed");
    } else {
        out.push_str(&format!("failed: {}", failed.join(", ")));
    }
    out
}
