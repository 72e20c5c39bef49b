use std::path::PathBuf;
use std::process::Command;

use katoforms::hp::Certificate;
use katoforms::witt::QuadForm;
use katoforms::FunctionField;
use katoforms_cli::selftest::{self, Ops, Options, Status};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn katoforms(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_katoforms"))
        .args(args)
        .env_remove("KATOFORMS_SEED")
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8"),
    )
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, out) = katoforms(args);
    (
        code,
        serde_json::from_str(&out).unwrap_or_else(|e| panic!("bad json ({e}): {out}")),
    )
}

#[test]
fn classify_reports_all_tests() {
    let (code, r) = report(&["classify", "--form", "x dx", "--field", "F2(x)"]);
    assert_eq!(code, 0);
    assert_eq!(r["format"], "katoforms/report/1");
    let res = &r["result"];
    assert_eq!(res["closed"], true);
    assert_eq!(res["exact"], false);
    assert_eq!(res["nu"], false);
    assert_eq!(res["h_witness"]["status"], "found");
    let cert = Certificate::parse(res["h_witness"]["witness"].as_str().unwrap()).unwrap();
    assert_eq!(cert.value().degree(), 1);
}

#[test]
fn nonmodular_restriction() {
    let (code, r) = report(&[
        "restrict",
        "--form",
        "dX^dY",
        "--ext",
        &data("nonmodular.json"),
    ]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["restricted"]["infix"], "0");
    assert_eq!(res["kernel"]["method"], "definition-level");
    assert_eq!(res["kernel"]["member"], true);
    assert_eq!(res["killed_differentials"], serde_json::json!(["dZ"]));
    assert_eq!(res["in_killed_span"], false);
}

#[test]
fn input_errors_exit_3() {
    assert_eq!(
        katoforms(&["classify", "--form", "(form 1 ((idx 1)", "--field", "F2(x)"]).0,
        3
    );
    assert_eq!(katoforms(&["classify", "--form", "x dx"]).0, 3);
    assert_eq!(
        katoforms(&["classify", "--form", "x dx", "--field", "F4(x)"]).0,
        3
    );
    assert_eq!(
        katoforms(&["restrict", "--form", "dx", "--ext", "/nonexistent.json"]).0,
        3
    );
    assert_eq!(katoforms(&["selftest", "--skip", "nothing"]).0, 3);
    assert_eq!(katoforms(&["no-such-command"]).0, 3);
}

#[test]
fn kernel_test_exit_codes() {
    let ext = data("adapted_x2.json");
    assert_eq!(
        katoforms(&["kernel-test", "--form", "y dx", "--ext", &ext]).0,
        0
    );
    assert_eq!(
        katoforms(&["kernel-test", "--form", "x dy", "--ext", &ext]).0,
        1
    );
}

#[test]
fn generators_and_vanishing() {
    let ext = data("adapted_x2.json");
    let (code, r) = report(&[
        "kf-gens",
        "--ext",
        &ext,
        "--n",
        "1",
        "--inst",
        &data("inst0.txt"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["count"], 9);
    let (code, r) = report(&[
        "vanish-cert",
        "--ext",
        &ext,
        "--n",
        "2",
        "--inst",
        "y dy; x dy",
    ]);
    assert_eq!(code, 0);
    let certs = r["result"]["certificates"].as_array().unwrap();
    assert!(!certs.is_empty() && certs.iter().all(|c| c["verified"] == true));
}

#[test]
fn certificate_verification() {
    let (_, r) = report(&["oracle-solve", "--form", "x dx", "--field", "F2(x)"]);
    let cert = r["result"]["witness"]["cert"].as_str().unwrap().to_string();
    assert_eq!(
        katoforms(&[
            "verify-cert",
            "--lhs",
            "x dx",
            "--rhs",
            "0",
            "--cert",
            &cert
        ])
        .0,
        0
    );
    assert_eq!(
        katoforms(&["verify-cert", "--lhs", "dx", "--rhs", "0", "--cert", &cert]).0,
        1
    );
    assert_eq!(
        katoforms(&[
            "verify-cert",
            "--lhs",
            "x dx",
            "--rhs",
            "0",
            "--cert",
            "(cert (u"
        ])
        .0,
        3
    );
}

#[test]
fn oracle_outcomes() {
    assert_eq!(
        katoforms(&["oracle-solve", "--form", "(x+1) dx", "--field", "F2(x)"]).0,
        0
    );
    let (code, r) = report(&[
        "oracle-solve",
        "--form",
        "y dx/x",
        "--field",
        "F2(x,y)",
        "--dens",
        "1,x",
    ]);
    assert_eq!(code, 2);
    assert_eq!(r["result"]["status"], "not-found-within-bounds");
    assert_eq!(
        r["result"]["bounds"]["denominators"],
        serde_json::json!(["1", "x"])
    );
}

#[test]
fn witt_commands() {
    let ext = data("adapted_x2.json");
    let (code, r) = report(&[
        "witt-gens",
        "--ext",
        &ext,
        "--s",
        "y,x+y",
        "--bil",
        "x,x*y^2",
    ]);
    assert_eq!(code, 0);
    let quad = r["result"]["quadratic"].as_array().unwrap();
    assert!(quad.iter().all(|g| g["chain"]["verified"] == true));
    let f = FunctionField::new(2, &["x", "y"]).unwrap();
    let text = quad[0]["form"].as_str().unwrap();
    let q = QuadForm::parse(text, &f).unwrap();
    assert_eq!(q.to_sexp().to_string(), text);
    assert_eq!(
        katoforms(&["check-hyperbolic", "--form", text, "--ext", &ext]).0,
        0
    );
    assert_eq!(katoforms(&["witt-gens", "--ext", &ext, "--bil", "y"]).0, 3);

    let (code, r) = report(&[
        "arf",
        "--form",
        &data("arf_trivial.sexp"),
        "--field",
        "F2(x)",
        "--decide",
        "--deg",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["arf"], "x^2 + x");
    assert_eq!(
        katoforms(&[
            "arf",
            "--form",
            "(quad 2 ((1 1) x) ((1 2) 1) ((2 2) x))",
            "--field",
            "F2(x)",
            "--decide"
        ])
        .0,
        2
    );
    assert_eq!(
        katoforms(&[
            "arf",
            "--form",
            "(quad 2 ((1 1) x) ((2 2) x))",
            "--field",
            "F2(x)"
        ])
        .0,
        3
    );

    let (code, r) = report(&[
        "kato-map", "--slots", "x", "--tail", "y", "--field", "F2(x,y)",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["e"]["infix"], "(1/x)*dx");
    assert_eq!(r["result"]["f"]["infix"], "(y/x)*dx");
}

#[test]
fn reports_are_deterministic() {
    let args = ["witt-gens", "--ext", &data("adapted_x2.json"), "--s", "y"];
    assert_eq!(katoforms(&args), katoforms(&args));
    let dir = std::env::temp_dir();
    let paths: Vec<PathBuf> = (0..3)
        .map(|i| {
            dir.join(format!(
                "katoforms-selftest-{}-{i}.json",
                std::process::id()
            ))
        })
        .collect();
    for (i, seed) in ["7", "7", "8"].iter().enumerate() {
        let out = Command::new(env!("CARGO_BIN_EXE_katoforms"))
            .args([
                "selftest",
                "--corpus",
                "6",
                "--out",
                paths[i].to_str().unwrap(),
            ])
            .env("KATOFORMS_SEED", seed)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
    }
    let read = |p: &PathBuf| std::fs::read_to_string(p).unwrap();
    assert_eq!(read(&paths[0]), read(&paths[1]));
    let r: Value = serde_json::from_str(&read(&paths[2])).unwrap();
    assert_eq!(r["inputs"]["seed"], 8);
    for p in &paths {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn selftest_flags_broken_cartier() {
    let ok = selftest::run(&Options {
        corpus: 8,
        seed: 1,
        skip: vec![],
        ops: Ops::default(),
    });
    assert!(ok.iter().all(|r| r.status == Status::Pass));
    let broken = Ops {
        cartier: |w| Ok(w.clone()),
    };
    let rows = selftest::run(&Options {
        corpus: 8,
        seed: 1,
        skip: vec![],
        ops: broken,
    });
    let failed: Vec<&str> = rows
        .iter()
        .filter(|r| r.status == Status::Fail)
        .map(|r| r.section)
        .collect();
    assert_eq!(failed, vec!["cartier"]);
    assert!(selftest::table(&rows).contains("failed: cartier"));
}

#[test]
fn empty_corpus_lists_skipped_sections() {
    let (code, out) = katoforms(&["selftest", "--corpus", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains(&format!("skipped: {}", selftest::SECTIONS.join(", "))));
    let (code, out) = katoforms(&["selftest", "--corpus", "4", "--skip", "witt"]);
    assert_eq!(code, 0);
    assert!(out.contains("skipped: witt"));
}
