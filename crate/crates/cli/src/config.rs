//! Command-line flags, the optional JSON config file, and their merge into a
//! single [`RunConfig`].

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ivhom_core::sweep::{default_workers, DEFAULT_BUDGET};
use ivhom_core::NumericMode;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "ivhom", version, about = "Exhaustive abstract-homogeneity checks for interval-valued functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Check F(G(Λ,X1),..,G(Λ,Xn)) = G(Φ(Λ),F(X1,..,Xn)) on the grid.
    Check,
    /// Check F(X,..,X) = X on the grid.
    Idempotent,
    /// Fixed point + bijective section + G-homogeneity, then idempotency.
    #[command(name = "idempotency-transfer", alias = "theorem1")]
    #[serde(alias = "theorem1")]
    IdempotencyTransfer,
    /// P-homogeneity of F, then P_NS-homogeneity of its standard-negation dual.
    #[command(name = "dual-transfer", alias = "prop2")]
    #[serde(alias = "prop2")]
    DualTransfer,
    /// Build the standard-negation dual of F and match it against the registry.
    Dual,
    /// Evaluate F at --at points, or over the whole grid.
    Eval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    #[default]
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        })
    }
}

/// Every field is optional so flags can override a config file.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    /// Subject function: registry name or `expr:<source>`.
    #[arg(long, global = true)]
    pub f: Option<String>,
    /// Scaling function: registry name or `expr:<source over L, X1>`.
    #[arg(long, global = true)]
    pub g: Option<String>,
    /// Order isomorphism: registry name or `expr:<forward>|<inverse>` over X1.
    #[arg(long, global = true)]
    pub phi: Option<String>,
    #[arg(long, global = true)]
    pub arity: Option<usize>,
    #[arg(long, global = true)]
    pub resolution: Option<u32>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeKind>,
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    /// Maximum tuples one check may evaluate.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputFormat>,
    /// Interval A for idempotency-transfer, default [1,1].
    #[arg(long, global = true)]
    pub anchor: Option<String>,
    /// Argument tuple for `eval`, e.g. `--at "[0.2,0.5];[1/3,1/2]"`. Repeatable.
    #[arg(long, global = true)]
    #[serde(default)]
    pub at: Vec<String>,
    /// JSON file with the same fields (plus `command`).
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    command: Option<Command>,
    #[serde(flatten)]
    flags: Flags,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub f: String,
    pub g: String,
    pub phi: String,
    pub arity: Option<usize>,
    pub resolution: u32,
    pub mode: NumericMode,
    pub output: OutputFormat,
    pub budget: u64,
    pub workers: usize,
    pub anchor: String,
    pub at: Vec<String>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (file_command, file_flags) = match &cli.flags.config {
            Some(path) => {
                let raw = std::fs::read_to_string(path)
                    .map_err(|err| CliError::Usage(format!("cannot read config {}: {err}", path.display())))?;
                let parsed: ConfigFile = serde_json::from_str(&raw)
                    .map_err(|err| CliError::Usage(format!("invalid config {}: {err}", path.display())))?;
                (parsed.command, parsed.flags)
            }
            None => (None, Flags::default()),
        };
        let command = cli
            .command
            .or(file_command)
            .ok_or_else(|| CliError::Usage("no command given; see --help".into()))?;
        Self::resolve(command, cli.flags, file_flags)
    }

    fn resolve(command: Command, flags: Flags, file: Flags) -> Result<Self, CliError> {
        let f = flags.f.or(file.f).ok_or_else(|| CliError::Usage("--f is required".into()))?;
        let arity = flags.arity.or(file.arity);
        if f.starts_with("expr:") && arity.is_none() {
            return Err(CliError::Usage("--arity is required when --f is an expression".into()));
        }
        let resolution = flags.resolution.or(file.resolution).unwrap_or(4);
        if resolution == 0 {
            return Err(CliError::Usage("--resolution must be at least 1".into()));
        }
        let budget = flags.budget.or(file.budget).unwrap_or(DEFAULT_BUDGET);
        if budget == 0 {
            return Err(CliError::Usage("--budget must be at least 1".into()));
        }
        let epsilon = flags.epsilon.or(file.epsilon).unwrap_or(NumericMode::DEFAULT_EPSILON);
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(CliError::Usage("--epsilon must be a nonnegative number".into()));
        }
        let mode = match flags.mode.or(file.mode).unwrap_or_default() {
            ModeKind::Exact => NumericMode::Exact,
            ModeKind::Float => NumericMode::Float { epsilon },
        };
        let workers = flags.workers.or(file.workers).unwrap_or_else(default_workers).max(1);
        Ok(RunConfig {
            command,
            f,
            g: flags.g.or(file.g).unwrap_or_else(|| "P".into()),
            phi: flags.phi.or(file.phi).unwrap_or_else(|| "identity".into()),
            arity,
            resolution,
            mode,
            output: flags.output.or(file.output).unwrap_or_default(),
            budget,
            workers,
            anchor: flags.anchor.or(file.anchor).unwrap_or_else(|| "[1,1]".into()),
            at: if flags.at.is_empty() { file.at } else { flags.at },
        })
    }
}
