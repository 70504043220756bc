use std::path::PathBuf;
use std::process::ExitCode;

use boltzmann_cli::{
    run_experiment, run_verify, schedule_csv, write_verify, CliError, RunOptions, EXIT_FAILURE,
};
use boltzmann_core::ga::DEFAULT_SEED;
use clap::{Parser, Subcommand};

/// Binary GA experiments with Boltzmann selection under Cauchy annealing.
#[derive(Debug, Parser)]
#[command(name = "boltzmann-ga", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run GA experiments and write one CSV per (function, scheme).
    Run {
        #[command(flatten)]
        opts: RunOptions,
        /// Flat `key = value` file; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Check the operator identities and convergence bounds numerically.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value = "results")]
        output: PathBuf,
        /// Override every slack and tolerance.
        #[arg(long, hide = true, allow_negative_numbers = true)]
        tolerance: Option<f64>,
    },
    /// Print the Cauchy schedule as `n,gamma_n` rows.
    Schedule {
        #[arg(long)]
        alpha: f64,
        #[arg(long, conflicts_with = "gamma_target")]
        g0: Option<f64>,
        #[arg(long)]
        gamma_target: Option<f64>,
        #[arg(long, default_value_t = 100)]
        horizon: usize,
        /// Write to this file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn execute(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Run { opts, config } => {
            let opts = match config {
                Some(path) => opts.over(RunOptions::load_config(&path)?),
                None => opts,
            };
            let out = run_experiment(&opts)?;
            for path in &out.files {
                println!("wrote {}", path.display());
            }
            Ok(0)
        }
        Command::Verify { seed, cases, output, tolerance } => {
            let outcome = run_verify(seed, cases, tolerance)?;
            write_verify(&outcome, &output)?;
            print!("{}", outcome.report);
            match outcome.first_failure() {
                Some(detail) => {
                    eprintln!("first failure: {detail}");
                    Ok(EXIT_FAILURE)
                }
                None => Ok(0),
            }
        }
        Command::Schedule { alpha, g0, gamma_target, horizon, output } => {
            let csv = schedule_csv(alpha, g0, gamma_target, horizon)?;
            match output {
                Some(path) => std::fs::write(&path, csv).map_err(|e| CliError::io(&path, e))?,
                None => print!("{csv}"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
