//! One function per subcommand.

use katoforms::extensions::{in_differential_span, AdaptedData, ExtensionFile, ExtensionSpec};
use katoforms::forms::{cartier, is_closed, is_exact, nu_member};
use katoforms::hp::{
    kf_generators, vanish_certificate, verify_certificate, Certificate, GeneratorSpec,
};
use katoforms::oracle::{artin_schreier_solve, solve_wp_plus_d, Search, SearchBounds};
use katoforms::text::{form_infix, print_form, rat_infix};
use katoforms::witt::{
    arf, bilinear_kernel_generators, hyperbolic_cert, kato_e, kato_f, matrix::Matrix,
    metabolic_cert, pfister_bil, pfister_quad, quadratic_kernel_generators, HyperbolicChain,
    PfisterSymbol,
};
use katoforms::{DiffForm, Error, FunctionField, RatFunc};
use serde_json::{json, Value};

use crate::input::{self, resolve_field};
use crate::selftest;
use crate::{env_seed, BoundArgs, CliError, Command, FieldArgs, Outcome, Verdict};

fn outcome(verdict: Verdict, inputs: Value, result: Value) -> Outcome {
    Outcome {
        verdict,
        inputs,
        result,
        text: None,
    }
}

fn optional_ext(args: &FieldArgs) -> Result<Option<ExtensionSpec>, CliError> {
    args.ext.as_deref().map(input::load_extension).transpose()
}

fn base_field(args: &FieldArgs) -> Result<(FunctionField, Option<ExtensionSpec>), CliError> {
    let ext = optional_ext(args)?;
    Ok((resolve_field(args.field.as_deref(), ext.as_ref())?, ext))
}

fn adapted(ext: &ExtensionSpec) -> Result<&AdaptedData, CliError> {
    ext.adapted().ok_or(CliError::Math(Error::NotAdapted))
}

fn form_json(w: &DiffForm) -> Value {
    json!({ "infix": form_infix(w), "sexp": print_form(w), "degree": w.degree() })
}

fn rats(xs: &[RatFunc], field: &FunctionField) -> Vec<String> {
    xs.iter().map(|x| rat_infix(x, field)).collect()
}

fn matrix_json(m: &Matrix, field: &FunctionField) -> Value {
    json!(m.iter().map(|row| rats(row, field)).collect::<Vec<_>>())
}

fn pattern_json(spec: &GeneratorSpec) -> Value {
    match spec {
        GeneratorSpec::TypeI { index } => json!({ "type": "i", "index": index + 1 }),
        GeneratorSpec::TypeII { t, k } => json!({ "type": "ii", "t": t, "k": k }),
    }
}

fn ext_json(ext: &ExtensionSpec) -> Value {
    serde_json::from_str(&ExtensionFile::from_spec(ext).to_json()).expect("valid json")
}

fn bounds_inputs(b: &SearchBounds, field: &FunctionField) -> Value {
    serde_json::to_value(b.report(field)).expect("serializable")
}

fn search_json<T>(s: &Search<T>, field: &FunctionField, found: impl FnOnce(&T) -> Value) -> Value {
    match s {
        Search::Found(t) => json!({ "status": "found", "witness": found(t) }),
        Search::NotFound { bounds } => {
            json!({ "status": "not-found-within-bounds", "bounds": bounds_inputs(bounds, field) })
        }
    }
}

fn search_bounds(field: &FunctionField, b: &BoundArgs) -> Result<SearchBounds, CliError> {
    input::bounds(field, b.deg, &b.dens, b.caps.as_deref())
}

fn chain_json(chain: &HyperbolicChain, ok: bool) -> Value {
    let field = chain.forms[0].field();
    json!({
        "verified": ok,
        "forms": chain.forms.iter().map(|q| q.to_sexp().to_string()).collect::<Vec<_>>(),
        "isometries": chain.steps.iter().map(|s| matrix_json(&s.t, field)).collect::<Vec<_>>(),
        "lagrangian": matrix_json(&chain.lagrangian.basis, field),
    })
}

pub fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Classify {
            form,
            field,
            bounds,
        } => classify(form, field, bounds),
        Command::Cartier { form, field } => cartier_cmd(form, field),
        Command::Restrict { form, ext } => restrict(form, ext),
        Command::KernelTest { form, ext } => kernel_test(form, ext),
        Command::KfGens { ext, n, inst } => kf_gens(ext, *n, inst),
        Command::VerifyCert { lhs, rhs, cert } => verify_cert(lhs, rhs, cert),
        Command::VanishCert { ext, n, inst } => vanish_cert(ext, *n, inst),
        Command::WittGens { ext, s, slots, bil } => {
            witt_gens(ext, s, slots.as_deref(), bil.as_deref())
        }
        Command::CheckHyperbolic { form, ext } => check_hyperbolic(form, ext),
        Command::Arf {
            form,
            field,
            decide,
            bounds,
        } => arf_cmd(form, field, *decide, bounds),
        Command::KatoMap { slots, tail, field } => kato_map(slots, tail.as_deref(), field),
        Command::OracleSolve {
            form,
            field,
            bounds,
        } => oracle_solve(form, field, bounds),
        Command::Selftest { corpus, skip, seed } => selftest_cmd(*corpus, skip, *seed),
    }
}

fn classify(form: &str, args: &FieldArgs, b: &BoundArgs) -> Result<Outcome, CliError> {
    let (field, _) = base_field(args)?;
    let w = input::form(form, &field)?;
    let bounds = search_bounds(&field, b)?;
    let closed = is_closed(&w);
    let c = if closed {
        Some(form_json(&cartier(&w)?))
    } else {
        None
    };
    let witness = solve_wp_plus_d(&w, &bounds)?;
    Ok(outcome(
        Verdict::Verified,
        json!({ "form": form_json(&w), "field": field.descriptor(), "bounds": bounds_inputs(&bounds, &field) }),
        json!({
            "closed": closed,
            "exact": is_exact(&w),
            "nu": nu_member(&w),
            "cartier": c,
            "h_witness": search_json(&witness, &field, |c| json!(c.to_string())),
        }),
    ))
}

fn cartier_cmd(form: &str, args: &FieldArgs) -> Result<Outcome, CliError> {
    let (field, _) = base_field(args)?;
    let w = input::form(form, &field)?;
    let inputs = json!({ "form": form_json(&w), "field": field.descriptor() });
    match cartier(&w) {
        Ok(c) => Ok(outcome(
            Verdict::Verified,
            inputs,
            json!({ "closed": true, "cartier": form_json(&c) }),
        )),
        Err(Error::NotClosed) => Ok(outcome(
            Verdict::Refuted,
            inputs,
            json!({ "closed": false }),
        )),
        Err(e) => Err(e.into()),
    }
}

/// Kernel status: syntactic when adapted, definition-level otherwise.
fn kernel_status(
    ext: &ExtensionSpec,
    w: &DiffForm,
    restricted: &DiffForm,
) -> Result<(&'static str, bool), CliError> {
    match ext.kernel_member(w) {
        Ok(b) => Ok(("syntactic", b)),
        Err(Error::NotAdapted) => Ok(("definition-level", restricted.is_zero())),
        Err(e) => Err(e.into()),
    }
}

fn restrict(form: &str, ext_path: &str) -> Result<Outcome, CliError> {
    let ext = input::load_extension(ext_path)?;
    let field = ext.source();
    let w = input::form(form, field)?;
    let r = ext.restrict(&w)?;
    let killed: Vec<usize> = (0..field.nvars())
        .filter(|&i| {
            ext.restrict(&DiffForm::dx(field, i))
                .is_ok_and(|d| d.is_zero())
        })
        .collect();
    let (method, member) = kernel_status(&ext, &w, &r)?;
    Ok(outcome(
        Verdict::Verified,
        json!({ "form": form_json(&w), "extension": ext_json(&ext) }),
        json!({
            "restricted": form_json(&r),
            "target_field": ext.target().descriptor(),
            "kernel": { "method": method, "member": member },
            "killed_differentials": killed.iter().map(|&i| format!("d{}", field.var_name(i))).collect::<Vec<_>>(),
            "in_killed_span": in_differential_span(&w, &killed),
        }),
    ))
}

fn kernel_test(form: &str, ext_path: &str) -> Result<Outcome, CliError> {
    let ext = input::load_extension(ext_path)?;
    let w = input::form(form, ext.source())?;
    let r = ext.restrict(&w)?;
    let (method, member) = kernel_status(&ext, &w, &r)?;
    Ok(outcome(
        Verdict::from_bool(member),
        json!({ "form": form_json(&w), "extension": ext_json(&ext) }),
        json!({ "method": method, "member": member, "restricted": form_json(&r) }),
    ))
}

fn kf_gens(ext_path: &str, n: usize, inst: &str) -> Result<Outcome, CliError> {
    let ext = input::load_extension(ext_path)?;
    let data = adapted(&ext)?;
    let field = ext.source();
    let inst = input::form_list(inst, field)?;
    let gens = kf_generators(field, data, n, &inst)?;
    let list: Vec<Value> = gens
        .iter()
        .map(|g| json!({ "pattern": pattern_json(&g.spec), "inst": form_infix(&g.inst), "value": form_json(&g.value), "trivial": g.is_trivial() }))
        .collect();
    Ok(outcome(
        Verdict::Verified,
        json!({ "extension": ext_json(&ext), "n": n, "inst": inst.iter().map(form_infix).collect::<Vec<_>>() }),
        json!({ "count": list.len(), "generators": list }),
    ))
}

fn verify_cert(lhs: &str, rhs: &str, cert: &str) -> Result<Outcome, CliError> {
    let cert = Certificate::parse(input::read_value(cert)?.trim())?;
    let field = cert.field().clone();
    let (mut l, mut r) = (input::form(lhs, &field)?, input::form(rhs, &field)?);
    if r.is_zero() {
        r = DiffForm::zero(&field, l.degree());
    } else if l.is_zero() {
        l = DiffForm::zero(&field, r.degree());
    }
    let ok = verify_certificate(&l, &r, &cert)?;
    Ok(outcome(
        Verdict::from_bool(ok),
        json!({ "lhs": form_json(&l), "rhs": form_json(&r), "cert": cert.to_string(), "field": field.descriptor() }),
        json!({ "holds": ok }),
    ))
}

fn vanish_cert(ext_path: &str, n: usize, inst: &str) -> Result<Outcome, CliError> {
    let ext = input::load_extension(ext_path)?;
    let data = adapted(&ext)?;
    let field = ext.source();
    let inst = input::form_list(inst, field)?;
    let mut verdict = Verdict::Verified;
    let mut list = Vec::new();
    for g in kf_generators(field, data, n, &inst)? {
        let base = json!({ "pattern": pattern_json(&g.spec), "inst": form_infix(&g.inst), "value": form_infix(&g.value) });
        let entry = match vanish_certificate(&g, &ext) {
            Ok(cert) => {
                let ok = verify_certificate(
                    &ext.restrict(&g.value)?,
                    &DiffForm::zero(ext.target(), n),
                    &cert,
                )?;
                if !ok {
                    verdict = Verdict::Refuted;
                }
                json!({ "generator": base, "verified": ok, "cert": cert.to_string() })
            }
            Err(e) => {
                if verdict == Verdict::Verified {
                    verdict = Verdict::Inconclusive;
                }
                json!({ "generator": base, "verified": false, "error": e.to_string() })
            }
        };
        list.push(entry);
    }
    Ok(outcome(
        verdict,
        json!({ "extension": ext_json(&ext), "n": n, "inst": inst.iter().map(form_infix).collect::<Vec<_>>() }),
        json!({ "count": list.len(), "certificates": list }),
    ))
}

fn symbol_json(sym: &PfisterSymbol) -> Value {
    let f = sym.field();
    json!({ "slots": rats(sym.slots(), f), "tail": sym.tail().map(|t| rat_infix(t, f)) })
}

fn witt_gens(
    ext_path: &str,
    s: &str,
    slots: Option<&str>,
    bil: Option<&str>,
) -> Result<Outcome, CliError> {
    let ext = input::load_extension(ext_path)?;
    let data = adapted(&ext)?;
    let field = ext.source();
    let s_values = input::elements(s, field)?;
    let extra = slots
        .map(|t| input::elements(t, field))
        .transpose()?
        .unwrap_or_default();
    let mut all_ok = true;
    let mut quad = Vec::new();
    for g in quadratic_kernel_generators(field, data, &s_values, std::slice::from_ref(&extra))? {
        let chain = match hyperbolic_cert(&g.form, &ext) {
            Ok(c) => {
                let ok = c.certifies(&g.form, &ext);
                all_ok &= ok;
                chain_json(&c, ok)
            }
            Err(e) => {
                all_ok = false;
                json!({ "verified": false, "error": e.to_string() })
            }
        };
        quad.push(json!({
            "pattern": pattern_json(&g.spec),
            "s": rat_infix(&g.s, field),
            "symbol": symbol_json(&g.symbol),
            "form": g.form.to_sexp().to_string(),
            "trivial": g.is_trivial(),
            "chain": chain,
        }));
    }
    let mut bilinear = Vec::new();
    if let Some(xs) = bil {
        for g in bilinear_kernel_generators(field, data, &input::elements(xs, field)?)? {
            let entry = match metabolic_cert(&g, &ext) {
                Ok(c) => {
                    json!({ "x": rat_infix(&g.x, field), "verified": true, "isotropic_vector": rats(&c.vector, ext.target()) })
                }
                Err(e) => {
                    all_ok = false;
                    json!({ "x": rat_infix(&g.x, field), "verified": false, "error": e.to_string() })
                }
            };
            bilinear.push(entry);
        }
    }
    Ok(outcome(
        if all_ok {
            Verdict::Verified
        } else {
            Verdict::Inconclusive
        },
        json!({ "extension": ext_json(&ext), "s": rats(&s_values, field), "slots": rats(&extra, field) }),
        json!({ "quadratic": quad, "bilinear": bilinear }),
    ))
}

fn check_hyperbolic(form: &str, ext_path: &str) -> Result<Outcome, CliError> {
    let ext = input::load_extension(ext_path)?;
    let q = input::quad(form, ext.source())?;
    let inputs = json!({ "form": q.to_sexp().to_string(), "extension": ext_json(&ext) });
    Ok(match hyperbolic_cert(&q, &ext) {
        Ok(chain) => {
            let ok = chain.certifies(&q, &ext);
            outcome(
                if ok {
                    Verdict::Verified
                } else {
                    Verdict::Refuted
                },
                inputs,
                json!({ "chain": chain_json(&chain, ok) }),
            )
        }
        Err(e) => outcome(
            Verdict::Inconclusive,
            inputs,
            json!({ "chain": null, "reason": e.to_string() }),
        ),
    })
}

fn arf_cmd(form: &str, args: &FieldArgs, decide: bool, b: &BoundArgs) -> Result<Outcome, CliError> {
    let (field, _) = base_field(args)?;
    let q = input::quad(form, &field)?;
    let a = arf(&q)?;
    let mut inputs = json!({ "form": q.to_sexp().to_string(), "field": field.descriptor() });
    if !decide {
        return Ok(outcome(
            Verdict::Verified,
            inputs,
            json!({ "arf": rat_infix(&a, &field) }),
        ));
    }
    let bounds = search_bounds(&field, b)?;
    inputs["bounds"] = bounds_inputs(&bounds, &field);
    let s = artin_schreier_solve(&a, &field, &bounds)?;
    let verdict = if s.is_found() {
        Verdict::Verified
    } else {
        Verdict::Inconclusive
    };
    Ok(outcome(
        verdict,
        inputs,
        json!({ "arf": rat_infix(&a, &field), "trivial_class": search_json(&s, &field, |u| json!(rat_infix(u, &field))) }),
    ))
}

fn kato_map(slots: &str, tail: Option<&str>, args: &FieldArgs) -> Result<Outcome, CliError> {
    let (field, _) = base_field(args)?;
    let slots = input::elements(slots, &field)?;
    let tail = tail.map(|t| input::elements(t, &field)).transpose()?;
    let tail = match tail.as_deref() {
        None => None,
        Some([t]) => Some(t.clone()),
        Some(_) => return Err(CliError::Usage("--tail takes one element".into())),
    };
    let sym = PfisterSymbol::new(&field, slots, tail)?;
    let mut result = json!({ "e": form_json(&kato_e(&sym)?) });
    if field.p() == 2 {
        result["bilinear"] = matrix_json(pfister_bil(&sym)?.matrix(), &field);
        if sym.tail().is_some() {
            result["f"] = form_json(&kato_f(&sym)?);
            result["quadratic"] = json!(pfister_quad(&sym)?.to_sexp().to_string());
        }
    } else if sym.tail().is_some() {
        result["f"] = form_json(&kato_f(&sym)?);
    }
    Ok(outcome(
        Verdict::Verified,
        json!({ "symbol": symbol_json(&sym), "field": field.descriptor() }),
        result,
    ))
}

fn oracle_solve(form: &str, args: &FieldArgs, b: &BoundArgs) -> Result<Outcome, CliError> {
    let (field, _) = base_field(args)?;
    let w = input::form(form, &field)?;
    let bounds = search_bounds(&field, b)?;
    let s = solve_wp_plus_d(&w, &bounds)?;
    let verdict = if s.is_found() {
        Verdict::Verified
    } else {
        Verdict::Inconclusive
    };
    Ok(outcome(
        verdict,
        json!({ "form": form_json(&w), "field": field.descriptor(), "bounds": bounds_inputs(&bounds, &field) }),
        search_json(
            &s,
            &field,
            |c| json!({ "cert": c.to_string(), "u": form_infix(c.u()), "eta": c.eta().map(form_infix) }),
        ),
    ))
}

fn selftest_cmd(corpus: usize, skip: &[String], seed: Option<u64>) -> Result<Outcome, CliError> {
    let seed = match seed {
        Some(s) => s,
        None => env_seed()?,
    };
    for s in skip {
        if !selftest::SECTIONS.contains(&s.as_str()) {
            return Err(CliError::Usage(format!(
                "unknown section `{s}`; known: {}",
                selftest::SECTIONS.join(", ")
            )));
        }
    }
    let opts = selftest::Options {
        corpus,
        seed,
        skip: skip.to_vec(),
        ops: selftest::Ops::default(),
    };
    let rows = selftest::run(&opts);
    let passed = rows.iter().all(|r| r.status != selftest::Status::Fail);
    let text = selftest::table(&rows);
    Ok(Outcome {
        verdict: Verdict::from_bool(passed),
        inputs: json!({ "corpus": corpus, "seed": seed, "skip": skip }),
        result: json!({ "sections": rows.iter().map(selftest::Row::to_json).collect::<Vec<_>>() }),
        text: Some(text),
    })
}
