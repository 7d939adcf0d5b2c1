//! `spr-lab`: build subspaces, certify their stable phase retrieval constants,
//! tighten witness pairs, bound perturbations and sweep exponents.
//!
//! Every report carries a manifest; the digest printed on stderr depends only on
//! the manifest (without wall time) and the report, so reruns can be compared.

pub mod args;
pub mod commands;
pub mod error;
pub mod manifest;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::Sinks;
use crate::error::{CliError, EXIT_OK, EXIT_USAGE};

/// Caps the worker pool.
pub const THREADS_ENV: &str = "SPR_LAB_THREADS";

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // A second call in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn dispatch(cli: &Cli, sinks: &mut Sinks) -> Result<(), CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Construct(a) => commands::construct(a, sinks),
        Command::Certify(a) => commands::certify_cmd(a, sinks),
        Command::Witness(a) => commands::witness(a, sinks),
        Command::Perturb(a) => commands::perturb(a, sinks),
        Command::Sweep(a) => commands::sweep(a, sinks),
    }
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let mut sinks = Sinks { out, err };
    match dispatch(&cli, &mut sinks) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(sinks.err, "error: {e}");
            e.exit_code()
        }
    }
}
