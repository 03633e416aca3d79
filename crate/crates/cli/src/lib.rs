//! Command logic for the `ballsep` binary.
//!
//! Every command renders to a string; [`execute`] decides where it goes and
//! which exit code to use: 0 on success, 1 when an invariant fails, 2 for
//! usage and validation errors.

pub mod args;
pub mod commands;
pub mod format;
pub mod instance;
pub mod validate;

use std::path::Path;

pub use args::Cli;
use args::Command;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<ballsep::Error> for CliError {
    fn from(e: ballsep::Error) -> Self {
        match e {
            ballsep::Error::Consistency(_) | ballsep::Error::NoConvergence(_) => {
                CliError::Invariant(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Rendered command output plus whether an invariant check failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub failed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self {
            text,
            failed: false,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    run_with(cli, &validate::Evaluators::default())
}

/// Like [`run`], with the closed forms used by `validate` supplied by the caller.
pub fn run_with(cli: &Cli, ev: &validate::Evaluators) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Exact(a) => commands::exact(a).map(Outcome::ok),
        Command::Estimate(a) => commands::estimate(a).map(Outcome::ok),
        Command::Sweep(a) => commands::sweep(a).map(Outcome::ok),
        Command::Tessellate(a) => commands::tessellate(a).map(Outcome::ok),
        Command::Validate(_) => {
            let report = validate::run(ev)?;
            Ok(Outcome {
                text: report.render(),
                failed: !report.all_passed(),
            })
        }
    }
}

fn out_path(cli: &Cli) -> Option<&Path> {
    match &cli.command {
        Command::Exact(a) => a.output.out.as_deref(),
        Command::Estimate(a) => a.output.out.as_deref(),
        Command::Sweep(a) => a.out.as_deref(),
        Command::Tessellate(a) => a.output.out.as_deref(),
        Command::Validate(a) => a.out.as_deref(),
    }
}

/// Runs the command, writes its output to `--out` or stdout, reports errors
/// on stderr and returns the process exit code.
pub fn execute(cli: &Cli, ev: &validate::Evaluators) -> i32 {
    let result = run_with(cli, ev).and_then(|outcome| {
        match out_path(cli) {
            Some(path) => std::fs::write(path, &outcome.text)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
            None => {
                use std::io::Write;
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(outcome.text.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|e| CliError::Io(e.to_string()))?;
            }
        }
        Ok(outcome.failed)
    });
    match result {
        Ok(false) => 0,
        Ok(true) => {
            eprintln!("error: invariant check failed");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
