use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use partmult::engine::DEFAULT_WORK_CEILING;
use partmult::SetDescriptor;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Count,
    Oracle,
    VerifyAm,
    Growth,
    Bounds,
    Iterate,
    Schur,
    ConstructF,
    BeCheck,
    Monotone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum EngineChoice {
    /// Progression path when the multiplicity set allows it.
    #[default]
    Auto,
    Generic,
    Ap,
    Oracle,
}

/// Everything needed to reproduce one run. Embedded in every JSON report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set_a: Option<SetDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set_m: Option<SetDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub x_list: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounds: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<usize>,
    #[serde(default)]
    pub strict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
    #[serde(default)]
    pub engine: EngineChoice,
    #[serde(default)]
    pub format: Format,
    pub budget: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub deterministic: bool,
    #[serde(default = "one")]
    pub jobs: usize,
}

fn one() -> usize {
    1
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            set_a: None,
            set_m: None,
            n_max: None,
            k: None,
            x_list: Vec::new(),
            base: None,
            rounds: None,
            from: None,
            strict: false,
            n: None,
            cap: None,
            bound: None,
            terms: None,
            engine: EngineChoice::Auto,
            format: Format::Csv,
            budget: DEFAULT_WORK_CEILING,
            output_path: None,
            deterministic: false,
            jobs: 1,
        }
    }

    /// Fills defaults and rejects missing or contradictory parameters.
    pub fn validate(mut self) -> Result<Self> {
        use Command::*;
        let needs_sets =
            matches!(self.command, Count | Oracle | Growth | Bounds | Iterate | Schur | Monotone);
        if needs_sets {
            if self.set_a.is_none() {
                bail!("{:?} needs --set-a", self.command);
            }
            self.set_m.get_or_insert_with(SetDescriptor::naturals);
        }
        match self.command {
            VerifyAm => {
                if self.set_a.is_some() || self.set_m.is_some() {
                    bail!("verify-am derives both sets from --base; --set-a/--set-m are not accepted");
                }
                let base = self.base.context("verify-am needs --base")?;
                if base < 2 {
                    bail!("--base must be at least 2, got {base}");
                }
                self.require_n_max()?;
            }
            Count | Growth | Schur => {
                self.require_n_max()?;
            }
            Monotone => {
                let n_max = self.require_n_max()?;
                let from = *self.from.get_or_insert(0);
                if from >= n_max {
                    bail!("--from {from} must be below --n-max {n_max}");
                }
            }
            Oracle => {
                self.n.context("oracle needs --n")?;
                self.cap.get_or_insert(1000);
            }
            Bounds => {
                if self.x_list.is_empty() {
                    bail!("bounds needs at least one --x");
                }
                if self.x_list.contains(&0) {
                    bail!("--x values must be positive");
                }
            }
            Iterate => {
                self.k.get_or_insert(1);
                self.rounds.get_or_insert(2);
            }
            ConstructF => {
                let terms = *self.terms.get_or_insert(4);
                if terms < 2 {
                    bail!("--terms must be at least 2 so the domain is nonempty");
                }
            }
            BeCheck => {
                if self.set_a.is_none() {
                    bail!("be-check needs --set-a");
                }
                self.bound.context("be-check needs --bound")?;
            }
        }
        if self.k == Some(0) || self.rounds == Some(0) {
            bail!("--k and --rounds must be positive");
        }
        if self.jobs == 0 {
            bail!("--jobs must be positive");
        }
        Ok(self)
    }

    fn require_n_max(&self) -> Result<usize> {
        match self.n_max {
            Some(n) if n >= 1 => Ok(n),
            Some(_) => bail!("--n-max must be positive"),
            None => bail!("{:?} needs --n-max", self.command),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "partmult",
    version,
    about = "Exact partition counts with restricted parts and multiplicities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Table of p(0..=n_max).
    Count(SetsArgs),
    /// List the partitions of one n by brute force.
    Oracle(SetsArgs),
    /// Check p >= 1 on [1, n_max] and p = 1 at every power for A = {a^i}, M = {m : a does not divide m}.
    VerifyAm(VerifyAmArgs),
    /// Exponents log p(n) / log n with running extrema.
    Growth(SetsArgs),
    /// Counting bounds at each --x.
    Bounds(SetsArgs),
    /// Iterated search for n with p(n) > n^k.
    Iterate(SetsArgs),
    /// Schur's normalized ratio for a finite, relatively prime part set.
    Schur(SetsArgs),
    /// The staircase function built on the minimal sequence.
    ConstructF(ConstructArgs),
    /// gcd(A \ {a}) = 1 for all a <= bound.
    BeCheck(SetsArgs),
    /// First n >= from where p fails to increase.
    Monotone(SetsArgs),
    /// Re-run the configuration embedded in a JSON report (or a bare config).
    Replay(ReplayArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Ceiling on big-integer additions per count table.
    #[arg(long, env = "PARTMULT_BUDGET", default_value_t = DEFAULT_WORK_CEILING)]
    pub budget: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Omit the timestamp so identical configs give identical bytes.
    #[arg(long)]
    pub deterministic: bool,
    /// Worker threads for independent table builds.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct SetsArgs {
    /// Part set: descriptor JSON or shorthand (pow2, odds, factorials, 1,2,3, ...).
    #[arg(long, value_parser = parse_set)]
    pub set_a: Option<SetDescriptor>,
    /// Multiplicity set; defaults to all positive integers.
    #[arg(long, value_parser = parse_set)]
    pub set_m: Option<SetDescriptor>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub k: Option<u32>,
    /// One or more x values (repeat the flag or separate with commas).
    #[arg(long = "x", value_delimiter = ',')]
    pub x_list: Vec<u64>,
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long)]
    pub from: Option<usize>,
    #[arg(long)]
    pub strict: bool,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long)]
    pub bound: Option<u64>,
    #[arg(long, value_enum, default_value_t = EngineChoice::Auto)]
    pub engine: EngineChoice,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyAmArgs {
    #[arg(long)]
    pub base: u64,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = EngineChoice::Auto)]
    pub engine: EngineChoice,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// Number of sequence terms K.
    #[arg(long)]
    pub terms: Option<usize>,
    /// Largest n to tabulate; defaults to the end of the domain.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    pub report: PathBuf,
    /// Write here instead of the path stored in the config.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

fn parse_set(text: &str) -> Result<SetDescriptor, String> {
    SetDescriptor::parse(text).map_err(|e| e.to_string())
}

impl Common {
    fn apply(self, config: &mut RunConfig) {
        config.format = self.format;
        config.budget = self.budget;
        config.output_path = self.output;
        config.deterministic = self.deterministic;
        config.jobs = self.jobs;
    }
}

impl SetsArgs {
    fn into_config(self, command: Command) -> RunConfig {
        let mut config = RunConfig::new(command);
        config.set_a = self.set_a;
        config.set_m = self.set_m;
        config.n_max = self.n_max;
        config.k = self.k;
        config.x_list = self.x_list;
        config.rounds = self.rounds;
        config.from = self.from;
        config.strict = self.strict;
        config.n = self.n;
        config.cap = self.cap;
        config.bound = self.bound;
        config.engine = self.engine;
        self.common.apply(&mut config);
        config
    }
}

/// What the command line asked for.
pub enum Invocation {
    Run(Box<RunConfig>),
    Replay(ReplayArgs),
}

impl CliCommand {
    pub fn into_invocation(self) -> Invocation {
        let config = match self {
            CliCommand::Count(a) => a.into_config(Command::Count),
            CliCommand::Oracle(a) => a.into_config(Command::Oracle),
            CliCommand::Growth(a) => a.into_config(Command::Growth),
            CliCommand::Bounds(a) => a.into_config(Command::Bounds),
            CliCommand::Iterate(a) => a.into_config(Command::Iterate),
            CliCommand::Schur(a) => a.into_config(Command::Schur),
            CliCommand::BeCheck(a) => a.into_config(Command::BeCheck),
            CliCommand::Monotone(a) => a.into_config(Command::Monotone),
            CliCommand::VerifyAm(a) => {
                let mut config = RunConfig::new(Command::VerifyAm);
                config.base = Some(a.base);
                config.n_max = Some(a.n_max);
                config.engine = a.engine;
                a.common.apply(&mut config);
                config
            }
            CliCommand::ConstructF(a) => {
                let mut config = RunConfig::new(Command::ConstructF);
                config.terms = a.terms;
                config.n_max = a.n_max;
                a.common.apply(&mut config);
                config
            }
            CliCommand::Replay(args) => return Invocation::Replay(args),
        };
        Invocation::Run(Box::new(config))
    }
}

/// Reads a config from a report (`{"config": ...}`) or a bare config file.
pub fn load_config(text: &str) -> Result<RunConfig> {
    let value: serde_json::Value = serde_json::from_str(text).context("report is not JSON")?;
    let config = match value.get("config") {
        Some(inner) => inner.clone(),
        None => value,
    };
    serde_json::from_value(config).context("malformed run configuration")
}
