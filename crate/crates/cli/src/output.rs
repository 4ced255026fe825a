use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::args::{Format, GlobalOpts};
use crate::error::{CliError, CliResult};

/// A rendered report plus the exit status it implies.
#[derive(Debug)]
pub struct Report {
    pub body: String,
    pub status: i32,
}

impl Report {
    pub fn ok(body: String) -> Self {
        Self { body, status: 0 }
    }
}

pub fn json<T: Serialize>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// CSV with a header row. Fields never contain commas or quotes except
/// the free-text ones, which are quoted.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        let fields: Vec<String> = r.iter().map(|f| quote(f)).collect();
        let _ = writeln!(s, "{}", fields.join(","));
    }
    s
}

fn quote(f: &str) -> String {
    if f.contains([',', '"', '\n']) {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}

pub fn write_file(path: &Path, body: &str) -> CliResult<()> {
    std::fs::write(path, body).map_err(|e| CliError::Runtime(format!("cannot write `{}`: {e}", path.display())))
}

/// Sends the report to `--out` or stdout.
pub fn emit(opts: &GlobalOpts, body: &str) -> CliResult<()> {
    match &opts.out {
        Some(p) => write_file(p, body),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Runtime(format!("cannot write to stdout: {e}")))
        }
    }
}

pub fn want_json(opts: &GlobalOpts) -> bool {
    opts.format == Format::Json
}
