//! Command-line front end for `lazysat`: `solve`, `gen` and `bench`.
//!
//! [`run`] takes the arguments and output streams explicitly and returns
//! the process exit code, so the binary is a thin wrapper and tests can
//! drive it in-process.
pub mod args;
pub mod bench;
pub mod gen;
pub mod solve;
pub mod stats;

use clap::error::ErrorKind;
use clap::Parser;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub use args::{Cli, Command};
pub use solve::{EXIT_SAT, EXIT_UNSAT};

/// Exit code for usage errors and failures.
pub const EXIT_ERROR: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        source: lazysat::ParseError,
    },
    #[error(transparent)]
    Load(#[from] lazysat::testkit::LoadError),
    #[error("invalid configuration: {0}")]
    Config(#[from] lazysat::ConfigError),
    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("writing trace: {0}")]
    Json(#[from] serde_json::Error),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Disagreement(String),
}

impl CliError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> CliError {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_ERROR
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => solve::run_solve(a, out),
        Command::Gen(a) => gen::run_gen(a, out).map(|()| 0),
        Command::Bench(a) => bench::run_bench(a, out).map(|()| 0),
    };
    match result.and_then(|code| out.flush().map(|()| code).map_err(CliError::from)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
