mod config;
mod run;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use config::{load_config, Cli, Invocation, RunConfig};

const EXIT_ERROR: u8 = 1;
const EXIT_CHECK_FAILED: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(EXIT_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    let result = execute(cli.command.into_invocation());
    match &result {
        Ok(true) => eprintln!("verification failed"),
        Err(err) if run::is_budget_error(err) => {
            eprintln!("error: {err:#} (raise --budget or PARTMULT_BUDGET)")
        }
        Err(err) => eprintln!("error: {err:#}"),
        Ok(false) => {}
    }
    ExitCode::from(exit_status(&result))
}

fn exit_status(result: &Result<bool>) -> u8 {
    match result {
        Ok(false) => 0,
        Ok(true) => EXIT_CHECK_FAILED,
        Err(_) => EXIT_ERROR,
    }
}

/// Runs one invocation; `Ok(true)` means a verification check failed.
fn execute(invocation: Invocation) -> Result<bool> {
    let config = match invocation {
        Invocation::Run(config) => *config,
        Invocation::Replay(args) => {
            let text = std::fs::read_to_string(&args.report)
                .with_context(|| format!("reading {}", args.report.display()))?;
            let mut config = load_config(&text)?;
            if args.output.is_some() {
                config.output_path = args.output;
            }
            config
        }
    };
    let config: RunConfig = config.validate()?;
    let outcome = run::run(&config)?;
    match &config.output_path {
        Some(path) => {
            std::fs::write(path, &outcome.body).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().lock().write_all(outcome.body.as_bytes())?,
    }
    Ok(outcome.failed)
}
