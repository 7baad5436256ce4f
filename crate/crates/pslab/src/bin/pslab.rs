//! Command-line front end: seeded sweeps, single-pair checks, and the
//! classical grid-density check. Prints one report as JSON on stdout.
//!
//! Exit codes: 0 all checks passed, 1 at least one check failed,
//! 2 usage, parse, or validation error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pslab::report::{
    cmd_check_pair, cmd_classical, cmd_sweep, render_report, CheckKind, RunReport, SweepConfig,
};
use pslab::tol;

#[derive(Parser)]
#[command(name = "pslab", version, about = "Partial-swap channel verification lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded random checks across dimensions and mixing weights.
    Sweep {
        /// Base seed for the deterministic ensemble.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Matrix dimensions to sample.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        dims: Vec<usize>,
        /// Mixing weights in [0, 1].
        #[arg(long = "t", value_delimiter = ',', default_value = "0.1,0.5,0.9")]
        t_grid: Vec<f64>,
        /// Sampled pairs per dimension.
        #[arg(long, default_value_t = 25)]
        trials: usize,
        /// Checks to run.
        #[arg(long, value_delimiter = ',', default_value = "theorem1,epi,lemma1,lift")]
        checks: Vec<CheckKind>,
        /// Force sigma = rho, exercising the equality case.
        #[arg(long)]
        equal_pair: bool,
    },
    /// Check one density-matrix pair loaded from JSON files.
    CheckPair {
        /// Matrix JSON for the first input.
        rho: PathBuf,
        /// Matrix JSON for the second input.
        sigma: PathBuf,
        /// Mixing weight in [0, 1].
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        /// Also construct the doubly stochastic witness.
        #[arg(long)]
        witness: bool,
    },
    /// Check the classical inequality for two grid-density JSON files.
    Classical {
        /// Grid-density JSON for the first input.
        rho: PathBuf,
        /// Grid-density JSON for the second input.
        sigma: PathBuf,
        /// Mixing angle strictly inside (0, pi/2).
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
        theta: f64,
    },
}

fn run(cli: Cli) -> pslab::Result<RunReport> {
    match cli.command {
        Command::Sweep { seed, dims, t_grid, trials, checks, equal_pair } => {
            cmd_sweep(&SweepConfig { seed, dims, t_grid, trials, checks, equal_pair })
        }
        Command::CheckPair { rho, sigma, t, witness } => cmd_check_pair(&rho, &sigma, t, witness),
        Command::Classical { rho, sigma, theta } => cmd_classical(&rho, &sigma, theta),
    }
}

fn main() -> ExitCode {
    if let Ok(raw) = std::env::var(tol::OVERRIDE_VAR) {
        let valid = matches!(raw.trim().parse::<f64>(), Ok(v) if v.is_finite() && v > 0.0);
        if !valid {
            eprintln!(
                "warning: ignoring {} = {raw:?}; expected a positive finite factor",
                tol::OVERRIDE_VAR
            );
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            match render_report(&report) {
                Ok(text) => println!("{text}"),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if report.total_failures() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
