//! `ivhom`: run one homogeneity check or pipeline and print its report.
//!
//! Exit codes: 0 pass (or an informational command succeeded), 1 fail,
//! 2 usage or configuration error, 3 budget refusal.

mod config;
mod emit;
mod run;

use std::fmt;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ivhom_core::CheckError;

use crate::config::{Cli, RunConfig};

const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Budget(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Budget(msg) => f.write_str(msg),
        }
    }
}

impl From<CheckError> for CliError {
    fn from(err: CheckError) -> Self {
        match err {
            CheckError::BudgetExceeded { .. } => CliError::Budget(err.to_string()),
            CheckError::ClosureViolation { .. } | CheckError::Arity(_) => CliError::Usage(err.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::from_cli(cli).and_then(|cfg| {
        let output = run::execute(&cfg)?;
        Ok((emit::emit(&output, cfg.output), output.exit_code()))
    });
    match result {
        Ok((text, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_USAGE);
            }
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("ivhom: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
