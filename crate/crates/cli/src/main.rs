use std::process::ExitCode;

fn main() -> ExitCode {
    let out = katoforms_cli::run(std::env::args());
    if !out.stdout.is_empty() {
        println!("{}", out.stdout);
    }
    if !out.stderr.is_empty() {
        eprintln!("{}", out.stderr);
    }
    ExitCode::from(out.code as u8)
}
