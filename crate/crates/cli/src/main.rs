use std::process::ExitCode;

use clap::Parser;
use qhelper_cli::args::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let status = qhelper_cli::configure_threads().and_then(|()| qhelper_cli::run(&cli));
    match status {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("qhelper: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
