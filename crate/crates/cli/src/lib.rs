//! Command-line driver for `qhelper-core`.
//!
//! Reports go to stdout (or `--out`) only once complete; diagnostics go to
//! stderr.

pub mod args;
pub mod commands;
pub mod error;
pub mod inputs;
pub mod output;

use args::{Cli, Command};
use error::{CliError, CliResult};

/// Sizes the global worker pool from `QHELPER_THREADS`, if set.
pub fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("QHELPER_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::input(format!("QHELPER_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Runtime(format!("thread pool: {e}")))
}

/// Runs one invocation and returns its exit status.
pub fn run(cli: &Cli) -> CliResult<i32> {
    let g = &cli.global;
    let report = match &cli.command {
        Command::Entropy(a) => commands::entropy(a, g)?,
        Command::Rates(a) => commands::rates(a, g)?,
        Command::Frontier(a) => commands::frontier(a, g)?,
        Command::Audit(a) => commands::audit(a, g)?,
        Command::Ri(a) => commands::ri(a, g)?,
        Command::Presets => commands::presets(g)?,
    };
    output::emit(g, &report.body)?;
    Ok(report.status)
}
