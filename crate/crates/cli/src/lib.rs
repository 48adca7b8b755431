//! Command-line front end for `lband`.
//!
//! [`run`] parses arguments, dispatches one subcommand and writes a JSON
//! result (or a plain rendering) to stdout or `--out`. Failures go to stderr
//! as `{"error": {"kind", "message"}}` with exit code 2 for usage and parse
//! problems, 3 for domain errors such as a singular matrix, and 1 when
//! `verify` finds a mismatch.

pub mod args;
pub mod bench;
pub mod commands;
pub mod error;
pub mod render;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use lband::{BigRational, ToleranceConfig};
use serde_json::Value;

use args::{Cli, Command, Format, Mode};
use commands::Context;
pub use error::{CliError, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};

pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let message = e.render().to_string();
            let message = message.lines().next().unwrap_or_default().trim_start_matches("error: ");
            return report(stderr, &CliError::Usage(message.to_string()));
        }
    };
    match dispatch(&cli) {
        Ok((value, code)) => match emit(&cli, &value, stdout) {
            Ok(()) => code,
            Err(e) => report(stderr, &e),
        },
        Err(e) => report(stderr, &e),
    }
}

fn report(stderr: &mut dyn Write, e: &CliError) -> i32 {
    let _ = writeln!(stderr, "{}", e.to_json());
    e.exit_code()
}

fn emit(cli: &Cli, value: &Value, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = match cli.global.format {
        Format::Json => serde_json::to_string_pretty(value).expect("values serialize") + "\n",
        Format::Plain => render::plain(value),
    };
    match &cli.global.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io { path: path.clone(), message: e.to_string() })
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io { path: "<stdout>".into(), message: e.to_string() }),
    }
}

fn dispatch(cli: &Cli) -> Result<(Value, i32), CliError> {
    let g = &cli.global;
    let tol = ToleranceConfig::new(
        g.eq_tol.unwrap_or(ToleranceConfig::DEFAULT_EQ_TOL),
        g.zero_tol.unwrap_or(ToleranceConfig::DEFAULT_ZERO_TOL),
    )?;
    match &cli.command {
        Command::Verify { n_max, trials } => {
            let summary = match g.mode {
                Mode::Float => verify::verify::<f64>(*n_max, *trials, g.seed, &tol)?,
                Mode::Rational => verify::verify::<BigRational>(*n_max, *trials, g.seed, &tol)?,
            };
            let code = if summary.failures == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok((serde_json::to_value(summary).expect("summary serializes"), code))
        }
        Command::Bench { op, sizes, reps, implementation } => {
            let op: bench::BenchOp = op.parse()?;
            let report = bench::bench(op, sizes, *reps, *implementation, g.seed)?;
            Ok((serde_json::to_value(report).expect("report serializes"), EXIT_OK))
        }
        cmd => {
            let ctx = Context { tol, json_vectors: g.json };
            let value = match g.mode {
                Mode::Float => commands::execute::<f64>(cmd, &ctx)?,
                Mode::Rational => commands::execute::<BigRational>(cmd, &ctx)?,
            };
            Ok((value, EXIT_OK))
        }
    }
}
