//! Batch front end: parse inputs, run one computation, emit a JSON report.
//!
//! Exit codes: 0 verified or true, 1 refuted or false, 2 inconclusive within
//! bounds, 3 input error.

mod commands;
mod input;
pub mod selftest;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub const REPORT_FORMAT: &str = "katoforms/report/1";
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Math(#[from] katoforms::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
}

impl Verdict {
    pub fn code(self) -> i32 {
        match self {
            Verdict::Verified => 0,
            Verdict::Refuted => 1,
            Verdict::Inconclusive => 2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Verified
        } else {
            Verdict::Refuted
        }
    }
}

/// What a command produced before it is wrapped into a report.
pub struct Outcome {
    pub verdict: Verdict,
    pub inputs: Value,
    pub result: Value,
    /// Plain-text rendering printed instead of JSON (used by `selftest`).
    pub text: Option<String>,
}

/// Process result: exit code and the text for stdout and stderr.
#[derive(Debug, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "katoforms",
    version,
    about = "Differential forms in characteristic p with checkable certificates"
)]
pub struct Cli {
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Base field, e.g. `F2(x,y)`.
    #[arg(long)]
    pub field: Option<String>,
    /// Extension spec (JSON); its source field is the default base field.
    #[arg(long, alias = "spec")]
    pub ext: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct BoundArgs {
    /// Numerator degree bound for oracle searches.
    #[arg(long, default_value_t = 6)]
    pub deg: u32,
    /// Allowed denominators, comma separated.
    #[arg(long, default_value = "1")]
    pub dens: String,
    /// Per-variable exponent caps, comma separated.
    #[arg(long)]
    pub caps: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed, exact and logarithmic tests plus an oracle search for an H_p witness.
    Classify {
        #[arg(long)]
        form: String,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Cartier operator of a closed form.
    Cartier {
        #[arg(long)]
        form: String,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Image of a form over the extension and its kernel status.
    Restrict {
        #[arg(long)]
        form: String,
        #[arg(long, alias = "spec")]
        ext: String,
    },
    /// Whether a form dies in Omega over the extension.
    KernelTest {
        #[arg(long)]
        form: String,
        #[arg(long, alias = "spec")]
        ext: String,
    },
    /// Generators of the H_p kernel of an adapted extension.
    KfGens {
        #[arg(long, alias = "spec")]
        ext: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Instantiating (n-1)-forms: a file with one per line, or inline separated by `;`.
        #[arg(long)]
        inst: String,
    },
    /// Check `lhs - rhs = wp(u) + d(eta)`.
    VerifyCert {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long)]
        cert: String,
    },
    /// Certificates that every enumerated generator vanishes over the extension.
    VanishCert {
        #[arg(long, alias = "spec")]
        ext: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        inst: String,
    },
    /// Quadratic and bilinear Witt-kernel generators with hyperbolicity certificates.
    WittGens {
        #[arg(long, alias = "spec")]
        ext: String,
        /// Values of `s`, comma separated.
        #[arg(long, default_value = "1")]
        s: String,
        /// Extra Pfister slots, comma separated.
        #[arg(long)]
        slots: Option<String>,
        /// Bilinear generator values `x`, comma separated.
        #[arg(long)]
        bil: Option<String>,
    },
    /// Certify that a quadratic form becomes hyperbolic over the extension.
    CheckHyperbolic {
        #[arg(long)]
        form: String,
        #[arg(long, alias = "spec")]
        ext: String,
    },
    /// Arf invariant representative of a nonsingular quadratic form.
    Arf {
        #[arg(long)]
        form: String,
        #[command(flatten)]
        field: FieldArgs,
        /// Also search for `u` with `u^2 - u = arf` within bounds.
        #[arg(long)]
        decide: bool,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Images of a Pfister symbol under the logarithmic maps.
    KatoMap {
        /// Slots, comma separated.
        #[arg(long)]
        slots: String,
        /// Tail of the quadratic symbol.
        #[arg(long)]
        tail: Option<String>,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Bounded search for `(u, eta)` with `wp(u) + d(eta) = form`.
    OracleSolve {
        #[arg(long)]
        form: String,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Run the invariant suite on seeded corpora.
    Selftest {
        /// Cases per section; 0 skips the corpus sections.
        #[arg(long, default_value_t = 40)]
        corpus: usize,
        /// Sections to skip.
        #[arg(long)]
        skip: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Cartier { .. } => "cartier",
            Command::Restrict { .. } => "restrict",
            Command::KernelTest { .. } => "kernel-test",
            Command::KfGens { .. } => "kf-gens",
            Command::VerifyCert { .. } => "verify-cert",
            Command::VanishCert { .. } => "vanish-cert",
            Command::WittGens { .. } => "witt-gens",
            Command::CheckHyperbolic { .. } => "check-hyperbolic",
            Command::Arf { .. } => "arf",
            Command::KatoMap { .. } => "kato-map",
            Command::OracleSolve { .. } => "oracle-solve",
            Command::Selftest { .. } => "selftest",
        }
    }
}

/// Seed from `KATOFORMS_SEED`, else the default.
pub fn env_seed() -> Result<u64, CliError> {
    match std::env::var("KATOFORMS_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("KATOFORMS_SEED must be an integer, got `{s}`"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            return Output {
                code,
                stdout: if code == 0 {
                    e.to_string()
                } else {
                    String::new()
                },
                stderr: if code == 0 {
                    String::new()
                } else {
                    e.to_string()
                },
            };
        }
    };
    let name = cli.command.name();
    match commands::execute(&cli.command) {
        Ok(outcome) => {
            let report = json!({
                "format": REPORT_FORMAT,
                "command": name,
                "inputs": outcome.inputs,
                "result": outcome.result,
                "verdict": outcome.verdict.label(),
            });
            let json_text = serde_json::to_string_pretty(&report).expect("serializable");
            let mut out = Output {
                code: outcome.verdict.code(),
                stdout: outcome.text.unwrap_or_else(|| json_text.clone()),
                stderr: String::new(),
            };
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, format!("{json_text}\n")) {
                    out = Output {
                        code: 3,
                        stdout: String::new(),
                        stderr: format!("error: {path}: {e}"),
                    };
                }
            }
            out
        }
        Err(e) => {
            let report = json!({ "format": REPORT_FORMAT, "command": name, "error": e.to_string(), "verdict": "input-error" });
            Output {
                code: 3,
                stdout: serde_json::to_string_pretty(&report).expect("serializable"),
                stderr: format!("error: {e}"),
            }
        }
    }
}
