use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let outcome = monolat_cli::run_command(&args, &mut io::stdin().lock());
    io::stdout().write_all(outcome.stdout.as_bytes()).ok();
    io::stderr().write_all(outcome.stderr.as_bytes()).ok();
    ExitCode::from(outcome.exit_code)
}
